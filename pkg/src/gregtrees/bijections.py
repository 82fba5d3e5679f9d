"""Statistic-preserving tree correspondences.

Two families of transformations:

* ``phi`` / ``psi``: a Cayley tree plus a selection function (a chosen subset
  of improper children per improper parent) maps to a Greg tree by inserting
  chains of unlabelled vertices; ``psi`` inverts it by repeatedly merging
  each unlabelled vertex with its maximum-beta child.

* ``repr_planar`` / ``zeta``: a Cayley tree maps to its canonical planar tree
  (children ascending by beta, no elder vertices); ``zeta_at`` trades one
  improper edge for one elder vertex, and applying the inverse at every elder
  recovers the canonical form.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping

from .tree import (ORDERED, UNLABELLED, UNORDERED, Tree, TreeError,
                   classify_edges, elder_ids, improper_children)


@dataclass(frozen=True)
class SelectionFunction:
    """Per improper parent, a subset of its improper children.

    Children are identified by their beta values (stable across encodings);
    parents by their labels.  Entries with empty subsets are dropped, so the
    empty selection is the empty tuple.
    """

    choices: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Iterable[int]]) -> SelectionFunction:
        entries = []
        for parent in sorted(mapping):
            betas = tuple(sorted(set(mapping[parent])))
            if betas:
                entries.append((parent, betas))
        return cls(tuple(entries))

    def as_mapping(self) -> dict[int, tuple[int, ...]]:
        return dict(self.choices)

    def total(self) -> int:
        return sum(len(betas) for _, betas in self.choices)

    def to_doc(self) -> list:
        return [[parent, list(betas)] for parent, betas in self.choices]

    @classmethod
    def from_doc(cls, doc: Iterable) -> SelectionFunction:
        return cls.from_mapping({int(p): [int(b) for b in bs] for p, bs in doc})

    def validate(self, tree: Tree) -> None:
        beta = tree.beta()
        for parent, betas in self.choices:
            v = tree.id_of(parent)
            allowed = {beta[c] for c in improper_children(tree, v)}
            if not set(betas) <= allowed:
                raise TreeError(
                    f"selection {betas} at parent {parent} is not a subset of its "
                    f"improper children's betas {sorted(allowed)}")


def selections(tree: Tree) -> Iterator[SelectionFunction]:
    """All 2^impe selection functions of a Cayley tree, in bitmask order."""
    if tree.is_ordered() or tree.unlabelled_ids():
        raise TreeError("selection functions are defined over Cayley trees")
    beta = tree.beta()
    flags = classify_edges(tree)
    slots: list[tuple[int, list[int]]] = []
    for v in range(tree.size):
        if tree.labels[v] > 0:
            betas = sorted(beta[c] for c in tree.children[v] if flags[(v, c)])
            if betas:
                slots.append((tree.labels[v], betas))
    slots.sort()
    ranges = [range(1 << len(betas)) for _, betas in slots]
    for masks in product(*ranges):
        mapping = {}
        for (parent, betas), mask in zip(slots, masks):
            chosen = [b for i, b in enumerate(betas) if mask >> i & 1]
            if chosen:
                mapping[parent] = chosen
        yield SelectionFunction.from_mapping(mapping)


# -- phi: Cayley tree + selection -> Greg tree ---------------------------------


def phi_at(tree: Tree, parent_label: int, selected_betas: Iterable[int]) -> Tree:
    """Insert one chain of unlabelled vertices above the given improper parent.

    With the improper children ordered by ascending beta, each selected child
    closes a block; block m moves to the m-th chain vertex (topmost first) and
    the remaining children stay put.  Every chain vertex receives at least one
    block child plus its chain successor, so unlabelled degrees stay >= 3.
    """
    a = tree.id_of(parent_label)
    beta = tree.beta()
    allowed = {beta[c] for c in improper_children(tree, a)}
    sel = sorted(set(selected_betas))
    if not set(sel) <= allowed:
        raise TreeError(f"selection {sel} at {parent_label} not within improper betas {sorted(allowed)}")
    if not sel:
        return tree
    chain_len = len(sel)
    first = tree.size
    labels = list(tree.labels) + [UNLABELLED] * chain_len
    children = [list(kids) for kids in tree.children] + [[] for _ in range(chain_len)]
    blocks: list[list[int]] = [[] for _ in range(chain_len)]
    stay: list[int] = []
    for c in tree.children[a]:
        idx = bisect_left(sel, beta[c])
        if idx < chain_len:
            blocks[idx].append(c)
        else:
            stay.append(c)
    parent = tree.parents[a]
    children[parent][children[parent].index(a)] = first
    for m in range(chain_len):
        link = first + m + 1 if m + 1 < chain_len else a
        children[first + m] = blocks[m] + [link]
    children[a] = stay
    return Tree(UNORDERED, labels, children)


def phi(tree: Tree, selection: SelectionFunction) -> Tree:
    """Apply phi_at for every improper parent; order does not matter."""
    selection.validate(tree)
    current = tree
    for parent_label, betas in selection.choices:
        current = phi_at(current, parent_label, betas)
    return current


# -- psi: Greg tree -> Cayley tree via rewriting --------------------------------


def rewrite_step(tree: Tree, u: int) -> Tree:
    """Merge an unlabelled vertex with its child of maximum beta.

    The merged vertex keeps that child's label and children, gains the other
    children of ``u``, and attaches to ``u``'s parent.
    """
    return _merge_unlabelled(tree, u, pick_min=False)


def rewrite_step_min_beta(tree: Tree, u: int) -> Tree:
    """Variant merging with the minimum-beta child (the beta-preserving one).

    Kept only to demonstrate that this choice breaks the round trip with phi;
    see the known-discrepancy checks.
    """
    return _merge_unlabelled(tree, u, pick_min=True)


def _merge_unlabelled(tree: Tree, u: int, pick_min: bool) -> Tree:
    if tree.labels[u] != UNLABELLED:
        raise TreeError("rewrite_step requires an unlabelled vertex", vertex=u)
    beta = tree.beta()
    kids = tree.children[u]
    target = min(kids, key=beta.__getitem__) if pick_min else max(kids, key=beta.__getitem__)
    parent = tree.parents[u]
    children = [list(k) for k in tree.children]
    children[parent][children[parent].index(u)] = target
    children[target] = children[target] + [c for c in kids if c != target]
    children[u] = []
    # drop vertex u, compacting ids and preserving their relative order
    remap = [v - 1 if v > u else v for v in range(tree.size)]
    labels = [lab for v, lab in enumerate(tree.labels) if v != u]
    new_children = [[remap[c] for c in children[v]] for v in range(tree.size) if v != u]
    return Tree(tree.kind, labels, new_children)


def psi(tree: Tree) -> Tree:
    """Rewrite until no unlabelled vertex remains (deepest first)."""
    current = tree
    while True:
        unlabelled = current.unlabelled_ids()
        if not unlabelled:
            return current
        depths = current.depths()
        u = max(unlabelled, key=lambda v: (depths[v], v))
        current = rewrite_step(current, u)


def greg_decompose(tree: Tree) -> tuple[Tree, SelectionFunction]:
    """The unique (Cayley tree, selection) with phi(selection, tree) = tree.

    Each unlabelled vertex belongs to the chain of the labelled vertex reached
    by following maximum-beta children; its selected beta is the largest beta
    among its other children.
    """
    cayley = psi(tree)
    beta = tree.beta()
    mapping: dict[int, set[int]] = {}
    for u in tree.unlabelled_ids():
        v = u
        while tree.labels[v] == UNLABELLED:
            v = max(tree.children[v], key=beta.__getitem__)
        owner = tree.labels[v]
        succ = max(tree.children[u], key=beta.__getitem__)
        chosen = max(beta[c] for c in tree.children[u] if c != succ)
        mapping.setdefault(owner, set()).add(chosen)
    return cayley, SelectionFunction.from_mapping(mapping)


# -- repr / zeta: Cayley tree <-> planar tree -----------------------------------


def repr_planar(tree: Tree) -> Tree:
    """Canonical planar tree: children ordered ascending by beta, no elders."""
    if tree.unlabelled_ids():
        raise TreeError("canonical planar form requires a Cayley tree")
    beta = tree.beta()
    children = [sorted(kids, key=beta.__getitem__) for kids in tree.children]
    return Tree(ORDERED, tree.labels, children)


def underlying_cayley(tree: Tree) -> Tree:
    """Forget child order."""
    return Tree(UNORDERED, tree.labels, tree.children)


def zeta_at(tree: Tree, vertex_label: int) -> Tree:
    """Move the beta-matching child of i and its left siblings up one level.

    Preconditions: i is not the root, is younger, and is an improper parent.
    The block attaches directly to the right of i among its parent's children;
    i becomes an elder, one improper edge disappears, impe+eld is conserved.
    """
    if not tree.is_ordered():
        raise TreeError("zeta applies to planar trees")
    i = tree.id_of(vertex_label)
    if i == 0:
        raise TreeError("zeta cannot apply at the root", vertex=i)
    elders = elder_ids(tree)
    if i in elders:
        raise TreeError("zeta requires a younger vertex", vertex=i)
    flags = classify_edges(tree)
    if not any(flags[(i, c)] for c in tree.children[i]):
        raise TreeError("zeta requires an improper parent", vertex=i)
    beta = tree.beta()
    pos_k = next(idx for idx, c in enumerate(tree.children[i]) if beta[c] == beta[i])
    block = list(tree.children[i][: pos_k + 1])
    j = tree.parents[i]
    children = [list(k) for k in tree.children]
    children[i] = children[i][pos_k + 1:]
    pos_i = children[j].index(i)
    children[j] = children[j][: pos_i + 1] + block + children[j][pos_i + 1:]
    return Tree(ORDERED, tree.labels, children)


def zeta_inv_at(tree: Tree, vertex_label: int) -> Tree:
    """Move i's right siblings up to and including the first younger one back
    as i's leftmost children.  Precondition: i is an elder."""
    if not tree.is_ordered():
        raise TreeError("zeta applies to planar trees")
    i = tree.id_of(vertex_label)
    elders = elder_ids(tree)
    if i not in elders:
        raise TreeError("zeta inverse requires an elder vertex", vertex=i)
    j = tree.parents[i]
    siblings = tree.children[j]
    pos_i = siblings.index(i)
    block: list[int] = []
    for s in siblings[pos_i + 1:]:
        block.append(s)
        if s not in elders:
            break
    children = [list(k) for k in tree.children]
    children[j] = list(siblings[: pos_i + 1]) + list(siblings[pos_i + 1 + len(block):])
    children[i] = block + children[i]
    return Tree(ORDERED, tree.labels, children)


def zeta(tree: Tree, vertex_labels: Iterable[int]) -> Tree:
    """Apply zeta_at at each given vertex, deepest first (they commute)."""
    labels = list(vertex_labels)
    depths = tree.depths()
    order = sorted(labels, key=lambda lab: (depths[tree.id_of(lab)], tree.id_of(lab)), reverse=True)
    current = tree
    for lab in order:
        current = zeta_at(current, lab)
    return current


def planar_decompose(tree: Tree) -> tuple[Tree, frozenset[int]]:
    """The unique Cayley tree T and vertex set S with zeta(S, repr(T)) = tree.

    Applies the inverse move at every elder vertex (deepest first) until no
    elder remains; the result is the canonical planar form of T.
    """
    if not tree.is_ordered():
        raise TreeError("planar_decompose applies to planar trees")
    current = tree
    applied: list[int] = []
    while True:
        elders = elder_ids(current)
        if not elders:
            break
        depths = current.depths()
        i = max(elders, key=lambda v: (depths[v], v))
        applied.append(current.labels[i])
        current = zeta_inv_at(current, current.labels[i])
    return underlying_cayley(current), frozenset(applied)
