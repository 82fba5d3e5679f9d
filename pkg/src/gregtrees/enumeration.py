"""Exhaustive, duplicate-free tree generation and weighted aggregation.

Cayley trees are generated from Prüfer sequences (lexicographic order,
re-rooted at 1); rooted labelled trees add a root choice; planar trees take
every product of child permutations of every Cayley tree; Greg trees are
grown by the eight extension operations that add the next label to a smaller
Greg tree, which is duplicate-free by construction.

Generators stream trees in a deterministic order so failures reproduce.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations, product
from typing import Callable, Iterable, Iterator, Optional

from .poly import MultiPoly
from .tree import ORDERED, UNLABELLED, UNORDERED, Tree, from_text, to_text

Visitor = Optional[Callable[[Tree], None]]


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"tree size must be a positive integer, got {n!r}")


# -- labelled trees from Prüfer sequences -----------------------------------


def _prufer_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence over [n] into the edge list of its tree."""
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        for leaf in range(1, n + 1):
            if degree[leaf] == 1:
                break
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    last = [v for v in range(1, n + 1) if degree[v] == 1]
    edges.append((last[0], last[1]))
    return edges


def _oriented(edges: list[tuple[int, int]], root: int, n: int) -> Tree:
    """Tree rooted at ``root`` with BFS vertex ids; children ascending by label."""
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for lst in adj:
        lst.sort()
    labels = [root]
    children: list[list[int]] = [[]]
    ids = {root: 0}
    queue = [root]
    for lab in queue:
        v = ids[lab]
        for other in adj[lab]:
            if other not in ids:
                ids[other] = len(labels)
                children[v].append(len(labels))
                labels.append(other)
                children.append([])
                queue.append(other)
    return Tree(UNORDERED, labels, children)


def _labelled_trees(n: int) -> Iterator[list[tuple[int, int]]]:
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(1, 2)]
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        yield _prufer_edges(seq, n)


def cayley_trees(n: int) -> Iterator[Tree]:
    """All labelled trees on [n] rooted at 1, each exactly once."""
    _check_n(n)
    for edges in _labelled_trees(n):
        yield _oriented(edges, 1, n)


def rooted_labelled_trees(n: int) -> Iterator[Tree]:
    """Every (labelled tree on [n], root) pair, oriented away from the root."""
    _check_n(n)
    for edges in _labelled_trees(n):
        for root in range(1, n + 1):
            yield _oriented(edges, root, n)


# -- planar trees -------------------------------------------------------------


def planar_trees(n: int) -> Iterator[Tree]:
    """All orderings of the children of all Cayley trees on [n]."""
    _check_n(n)
    for base in cayley_trees(n):
        for combo in product(*(permutations(kids) for kids in base.children)):
            yield Tree(ORDERED, base.labels, combo)


# -- Greg trees ---------------------------------------------------------------


def _add_leaf(t: Tree, parent: int, label: int) -> Tree:
    children = [list(k) for k in t.children]
    children[parent].append(t.size)
    children.append([])
    return Tree(UNORDERED, t.labels + (label,), children)


def _relabel(t: Tree, vertex: int, label: int) -> Tree:
    labels = list(t.labels)
    labels[vertex] = label
    return Tree(UNORDERED, labels, t.children)


def _subdivide(t: Tree, parent: int, child: int, label: int, with_leaf: bool) -> Tree:
    """Insert a vertex in the middle of (parent, child); ``with_leaf`` makes
    the inserted vertex unlabelled with the new label as its second child."""
    mid = t.size
    labels = list(t.labels)
    children = [list(k) for k in t.children]
    children[parent][children[parent].index(child)] = mid
    if with_leaf:
        labels += [UNLABELLED, label]
        children += [[child, mid + 1], []]
    else:
        labels.append(label)
        children.append([child])
    return Tree(UNORDERED, labels, children)


def _greg_successors(t: Tree) -> Iterator[Tree]:
    """All ways to extend a Greg tree with the next label, in a fixed order."""
    label = t.n_labelled + 1
    labelled = [v for v in t.bfs_order() if t.labels[v] > 0]
    unlabelled = [v for v in t.bfs_order() if t.labels[v] == UNLABELLED]
    yield _add_leaf(t, 0, label)                      # child of the root
    for v in labelled:
        if v != 0:
            yield _add_leaf(t, v, label)              # child of a labelled vertex
    for u in unlabelled:
        yield _add_leaf(t, u, label)                  # child of an unlabelled vertex
    for u in unlabelled:
        yield _relabel(t, u, label)                   # claim an unlabelled vertex
    for p, c in t.edges():
        if t.labels[c] > 0:
            yield _subdivide(t, p, c, label, with_leaf=False)
    for p, c in t.edges():
        if t.labels[c] == UNLABELLED:
            yield _subdivide(t, p, c, label, with_leaf=False)
    for p, c in t.edges():
        if t.labels[c] > 0:
            yield _subdivide(t, p, c, label, with_leaf=True)
    for p, c in t.edges():
        if t.labels[c] == UNLABELLED:
            yield _subdivide(t, p, c, label, with_leaf=True)


def greg_trees(n: int) -> Iterator[Tree]:
    """All Greg trees of size n rooted at 1, grown label by label."""
    _check_n(n)

    def grow(t: Tree) -> Iterator[Tree]:
        if t.n_labelled == n:
            yield t
            return
        for successor in _greg_successors(t):
            yield from grow(successor)

    yield from grow(Tree(UNORDERED, (1,), ((),)))


# -- counting wrappers ----------------------------------------------------------


def _count(trees: Iterable[Tree], visit: Visitor) -> int:
    count = 0
    for t in trees:
        count += 1
        if visit is not None:
            visit(t)
    return count


def enum_cayley(n: int, visit: Visitor = None) -> int:
    return _count(cayley_trees(n), visit)


def enum_rooted_labelled(n: int, visit: Visitor = None) -> int:
    return _count(rooted_labelled_trees(n), visit)


def enum_greg(n: int, visit: Visitor = None) -> int:
    return _count(greg_trees(n), visit)


def enum_planar(n: int, visit: Visitor = None) -> int:
    return _count(planar_trees(n), visit)


def enum_selections(tree: Tree, visit=None) -> int:
    """Count (and visit) all selection functions of a Cayley tree."""
    from .bijections import selections

    return _count(selections(tree), visit)  # type: ignore[arg-type]


FAMILIES: dict[str, Callable[[int], Iterator[Tree]]] = {
    "cayley": cayley_trees,
    "greg": greg_trees,
    "planar": planar_trees,
    "rooted": rooted_labelled_trees,
}


# -- weighted aggregation ---------------------------------------------------------

_Y1 = MultiPoly.var("y") + 1
_YT = MultiPoly.var("y") + MultiPoly.var("t")
_T1 = MultiPoly.var("t") + 1

#: weight name -> (family, key function on (StatRecord, tree size), expander)
_WEIGHTS: dict[tuple[str, str], tuple[Callable, Callable]] = {
    ("greg", "four-variable"): (
        lambda s, size: (s.deg_root - 1, s.unl, s.lead - s.deg_root - 1, s.impp),
        lambda k: MultiPoly.monomial(k),
    ),
    ("greg", "unl"): (
        lambda s, size: (0, s.unl, 0, 0),
        lambda k: MultiPoly.monomial(k),
    ),
    ("cayley", "four-variable"): (
        lambda s, size: (s.impe - s.impp, s.impp, s.deg_root - 1, s.lead - s.deg_root - 1),
        lambda k: _Y1 ** k[0] * _YT ** k[1] * MultiPoly.monomial((k[2], 0, k[3], 0)),
    ),
    ("cayley", "improper-binomial"): (
        lambda s, size: (s.impe,),
        lambda k: _Y1 ** k[0],
    ),
    ("cayley", "young-elder-sum"): (
        lambda s, size: (s.impe, s.impp, s.deg_root - 1, size - s.impe - s.deg_root),
        lambda k: MultiPoly.monomial((k[2], k[0], k[3], 0)) * _T1 ** k[1],
    ),
    ("planar", "four-variable"): (
        lambda s, size: (s.young_root - 1, s.impe,
                         (size - 1) - s.young_root - s.eld - s.impe, s.eld),
        lambda k: MultiPoly.monomial(k),
    ),
    ("planar", "young-elder-sum"): (
        lambda s, size: (s.young_root - 1, s.impe + s.eld,
                         size - s.impe - s.eld - s.young_root, s.eld),
        lambda k: MultiPoly.monomial(k),
    ),
    ("rooted", "impe"): (
        lambda s, size: (0, s.impe, 0, 0),
        lambda k: MultiPoly.monomial(k),
    ),
}

_DEFAULT_WEIGHT = {"greg": "four-variable", "cayley": "four-variable",
                   "planar": "four-variable", "rooted": "impe"}


def aggregate(n: int, family: str, weight: str | None = None) -> MultiPoly:
    """Exact sum of per-tree weights over a whole family of size n."""
    _check_n(n)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}")
    weight = weight or _DEFAULT_WEIGHT[family]
    try:
        key_fn, expand = _WEIGHTS[(family, weight)]
    except KeyError:
        raise ValueError(f"unknown weight {weight!r} for family {family!r}") from None
    counts: Counter = Counter()
    for t in FAMILIES[family](n):
        key = key_fn(t.stats(), t.size)
        if any(e < 0 for e in key):
            raise RuntimeError(
                f"negative weight exponent {key} for tree {to_text(t)}; this indicates a bug")
        counts[key] += 1
    total = MultiPoly.zero()
    for key, count in counts.items():
        total = total + expand(key) * count
    return total


# -- partitioned counting (opt-in parallel streams) -------------------------------


def partition_units(family: str, n: int) -> list[Optional[str]]:
    """Work units whose streams partition the family's enumeration."""
    if family in ("cayley", "rooted", "planar") and n >= 3:
        return [str(first) for first in range(1, n + 1)]
    if family == "greg" and n >= 4:
        return [to_text(t) for t in greg_trees(3)]
    return [None]


def _unit_trees(family: str, n: int, unit: Optional[str]) -> Iterator[Tree]:
    if unit is None:
        yield from FAMILIES[family](n)
        return
    if family in ("cayley", "rooted", "planar"):
        first = int(unit)
        for seq in product(range(1, n + 1), repeat=n - 3):
            edges = _prufer_edges((first,) + seq, n)
            if family == "rooted":
                for root in range(1, n + 1):
                    yield _oriented(edges, root, n)
            elif family == "cayley":
                yield _oriented(edges, 1, n)
            else:
                base = _oriented(edges, 1, n)
                for combo in product(*(permutations(kids) for kids in base.children)):
                    yield Tree(ORDERED, base.labels, combo)
    elif family == "greg":
        base = from_text(unit)

        def grow(t: Tree) -> Iterator[Tree]:
            if t.n_labelled == n:
                yield t
                return
            for successor in _greg_successors(t):
                yield from grow(successor)

        yield from grow(base)
    else:
        raise ValueError(f"unknown family {family!r}")


def count_unit(family: str, n: int, unit: Optional[str]) -> int:
    """Count one partition unit; top-level so process pools can pickle it."""
    return sum(1 for _ in _unit_trees(family, n, unit))
