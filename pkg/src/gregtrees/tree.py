"""Rooted tree data model (Cayley / Greg / planar) and the tree statistics.

Vertices carry stable integer ids 0 .. V-1 with vertex 0 the root; ids are
independent of labels so unlabelled vertices stay addressable.  A label is a
positive integer, stored as 0 for unlabelled vertices.  Child order is
significant only for ordered (planar) trees.  Trees are immutable after
construction; transformations build new trees.

Statistic and encoding traversals use explicit stacks or index passes, so
tree size never pressures the interpreter call stack.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import asdict, dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .poly import MultiPoly, Exponents
from . import kernel

UNLABELLED = 0
_INF = 1 << 60

UNORDERED = "unordered"
ORDERED = "ordered"


class TreeError(ValueError):
    """Invalid tree structure or document; ``vertex`` locates the offender."""

    def __init__(self, message: str, vertex: Optional[int] = None):
        if vertex is not None:
            message = f"{message} (vertex {vertex})"
        super().__init__(message)
        self.vertex = vertex


@dataclass(frozen=True)
class StatRecord:
    """All statistics used by the weight functions and identities.

    ``lead`` applies to unordered trees only; ``eld`` and ``young_root`` to
    ordered trees only (the inapplicable fields are None).
    """

    n: int
    unl: int
    impe: int
    impp: int
    deg_root: int
    lead: Optional[int] = None
    eld: Optional[int] = None
    young_root: Optional[int] = None

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


class Tree:
    __slots__ = ("kind", "labels", "children", "_parents", "_label_ids",
                 "_beta", "_encoded", "_stats", "_key", "_bfs")

    def __init__(self, kind: str, labels: Sequence[int], children: Sequence[Sequence[int]]):
        if kind not in (UNORDERED, ORDERED):
            raise TreeError(f"unknown tree kind {kind!r}")
        self.kind = kind
        self.labels = tuple(int(v) for v in labels)
        self.children = tuple(tuple(c) for c in children)
        if len(self.labels) != len(self.children):
            raise TreeError("labels and children must have the same length")
        n_vertices = len(self.labels)
        parents = [-1] * n_vertices
        for v, kids in enumerate(self.children):
            for c in kids:
                if not 0 <= c < n_vertices:
                    raise TreeError(f"child id {c} out of range", vertex=v)
                if parents[c] != -1 or c == 0:
                    raise TreeError("vertex has two parents or root is a child", vertex=c)
                parents[c] = v
        for v in range(1, n_vertices):
            if parents[v] == -1:
                raise TreeError("vertex is disconnected from the root", vertex=v)
        self._parents = tuple(parents)
        self._label_ids = None
        self._beta = None
        self._encoded = None
        self._stats = None
        self._key = None
        self._bfs = None

    # -- basic accessors -----------------------------------------------------

    @property
    def root(self) -> int:
        return 0

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def n_labelled(self) -> int:
        return sum(1 for v in self.labels if v > 0)

    @property
    def parents(self) -> tuple[int, ...]:
        return self._parents

    def is_ordered(self) -> bool:
        return self.kind == ORDERED

    def unlabelled_ids(self) -> tuple[int, ...]:
        return tuple(v for v, lab in enumerate(self.labels) if lab == UNLABELLED)

    def id_of(self, label: int) -> int:
        if self._label_ids is None:
            self._label_ids = {lab: v for v, lab in enumerate(self.labels) if lab > 0}
        try:
            return self._label_ids[label]
        except KeyError:
            raise TreeError(f"no vertex labelled {label}") from None

    def edges(self) -> Iterator[tuple[int, int]]:
        """(parent, child) pairs, parents in BFS order, children in stored order."""
        for v in self.bfs_order():
            for c in self.children[v]:
                yield (v, c)

    def bfs_order(self) -> tuple[int, ...]:
        if self._bfs is None:
            order = [0]
            for v in order:
                order.extend(self.children[v])
            self._bfs = tuple(order)
        return self._bfs

    def depths(self) -> tuple[int, ...]:
        depth = [0] * self.size
        for v in self.bfs_order():
            for c in self.children[v]:
                depth[c] = depth[v] + 1
        return tuple(depth)

    # -- statistics ------------------------------------------------------------

    def beta(self) -> tuple[int, ...]:
        """Smallest label in each vertex's subtree (vertex included)."""
        if self._beta is None:
            beta = [lab if lab > 0 else _INF for lab in self.labels]
            for v in reversed(self.bfs_order()):
                p = self._parents[v]
                if p >= 0 and beta[v] < beta[p]:
                    beta[p] = beta[v]
            self._beta = tuple(beta)
        return self._beta

    def encode(self) -> tuple[array, array]:
        """Kernel encoding: BFS-renumbered parent and label arrays."""
        if self._encoded is None:
            order = self.bfs_order()
            newid = [0] * self.size
            for i, v in enumerate(order):
                newid[v] = i
            par = array("i", [-1])
            lab = array("i", [self.labels[0]])
            for v in order[1:]:
                par.append(newid[self._parents[v]])
                lab.append(self.labels[v])
            self._encoded = (par, lab)
        return self._encoded

    def stats(self) -> StatRecord:
        if self._stats is None:
            par, lab = self.encode()
            ordered = self.is_ordered()
            nlab, unl, impe, impp, deg_root, lead, eld, young = kernel.tree_stats(par, lab, ordered)
            self._stats = StatRecord(
                n=nlab, unl=unl, impe=impe, impp=impp, deg_root=deg_root,
                lead=None if ordered else lead,
                eld=eld if ordered else None,
                young_root=young if ordered else None,
            )
        return self._stats

    # -- canonical form ----------------------------------------------------------

    def canonical_key(self):
        """Hashable key: equal keys == equal trees (unordered: order-insensitive)."""
        if self._key is None:
            beta = self.beta()
            keys: list = [None] * self.size
            for v in reversed(self.bfs_order()):
                kids = self.children[v]
                if self.kind == UNORDERED:
                    kids = sorted(kids, key=beta.__getitem__)
                keys[v] = (self.labels[v], tuple(keys[c] for c in kids))
            self._key = keys[0]
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.kind == other.kind and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((self.kind, self.canonical_key()))

    def __repr__(self) -> str:
        return f"Tree({self.kind!r}, {to_text(self)!r})"


# -- construction and documents ----------------------------------------------


def build_tree(doc: Mapping) -> Tree:
    """Validate a tree document and build the tree.

    Document schema: ``{"kind": "unordered"|"ordered", "root": NODE}`` with
    ``NODE = {"label": int|null, "children": [NODE...]}``.  Raises
    :class:`TreeError` locating the offending vertex (preorder index) for:
    duplicate labels, root not labelled 1, an unlabelled vertex of degree < 3,
    or an unlabelled vertex in an ordered tree.
    """
    if not isinstance(doc, Mapping) or "kind" not in doc or "root" not in doc:
        raise TreeError("document must be an object with 'kind' and 'root'")
    kind = doc["kind"]
    if kind not in (UNORDERED, ORDERED):
        raise TreeError(f"unknown tree kind {kind!r}")

    labels: list[int] = []
    children: list[list[int]] = []
    stack = [(doc["root"], -1)]
    while stack:
        node, parent = stack.pop()
        if not isinstance(node, Mapping):
            raise TreeError("tree node must be an object", vertex=len(labels))
        v = len(labels)
        raw = node.get("label")
        if raw is None:
            labels.append(UNLABELLED)
        elif isinstance(raw, int) and raw > 0:
            labels.append(raw)
        else:
            raise TreeError(f"label must be a positive integer or null, got {raw!r}", vertex=v)
        children.append([])
        if parent >= 0:
            children[parent].append(v)
        kids = node.get("children", [])
        if not isinstance(kids, list):
            raise TreeError("children must be a list", vertex=v)
        # reversed so that preorder ids follow document order
        for kid in reversed(kids):
            stack.append((kid, v))
    tree = Tree(kind, labels, children)
    validate_tree(tree)
    return tree


def validate_tree(tree: Tree) -> None:
    """Family-level validation shared by documents and constructed trees."""
    if tree.labels[0] != 1:
        raise TreeError("root must be labelled 1", vertex=0)
    seen: dict[int, int] = {}
    for v, lab in enumerate(tree.labels):
        if lab == UNLABELLED:
            if tree.is_ordered():
                raise TreeError("ordered trees cannot have unlabelled vertices", vertex=v)
            if len(tree.children[v]) < 2:
                raise TreeError("unlabelled vertex has degree < 3", vertex=v)
        else:
            if lab in seen:
                raise TreeError(f"duplicate label {lab}", vertex=v)
            seen[lab] = v
    n = len(seen)
    if set(seen) != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - set(seen))[0]
        raise TreeError(f"labels must be exactly 1..{n}; {missing} is missing")


def classify_family(tree: Tree) -> str:
    """cayley | greg | planar, from kind and unlabelled count."""
    if tree.is_ordered():
        return "planar"
    return "greg" if tree.unlabelled_ids() else "cayley"


def to_doc(tree: Tree) -> dict:
    nodes: list[dict] = [{} for _ in range(tree.size)]
    for v in reversed(tree.bfs_order()):
        lab = tree.labels[v]
        nodes[v] = {
            "label": lab if lab > 0 else None,
            "children": [nodes[c] for c in tree.children[v]],
        }
    return {"kind": tree.kind, "root": nodes[0]}


def to_json(tree: Tree) -> str:
    return json.dumps(to_doc(tree), separators=(",", ":"))


def from_text(text: str, kind: str = UNORDERED) -> Tree:
    """Parse the compact form ``1(7(u(6,9)),4(8,2,5(3)))``.

    Integers are labels; a token starting with ``u`` is an unlabelled vertex.
    Children are listed in parentheses, comma-separated, in stored order.
    """
    labels: list[int] = []
    children: list[list[int]] = []
    pos = 0
    s = text.replace(" ", "")

    def parse_vertex(parent: int) -> None:
        nonlocal pos
        start = pos
        while pos < len(s) and (s[pos].isalnum()):
            pos += 1
        token = s[start:pos]
        if not token:
            raise TreeError(f"expected a vertex at position {start} of {text!r}")
        v = len(labels)
        labels.append(UNLABELLED if token[0] in "uU" else int(token))
        children.append([])
        if parent >= 0:
            children[parent].append(v)
        if pos < len(s) and s[pos] == "(":
            pos += 1
            while True:
                parse_vertex(v)
                if pos < len(s) and s[pos] == ",":
                    pos += 1
                    continue
                break
            if pos >= len(s) or s[pos] != ")":
                raise TreeError(f"unbalanced parentheses in {text!r}")
            pos += 1

    parse_vertex(-1)
    if pos != len(s):
        raise TreeError(f"trailing input {s[pos:]!r} in {text!r}")
    return Tree(kind, labels, children)


def to_text(tree: Tree) -> str:
    out: list[str] = []
    stack: list[object] = [0]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        lab = tree.labels[item]
        out.append(str(lab) if lab > 0 else "u")
        kids = tree.children[item]
        if kids:
            out.append("(")
            tail: list[object] = [")"]
            for i, c in enumerate(kids):
                if i:
                    tail.append(",")
                tail.append(c)
            stack.extend(reversed(tail))
    return "".join(out)


def to_dot(tree: Tree) -> str:
    """Graphviz export: improper edges penwidth=2, unlabelled circles."""
    improper = classify_edges(tree)
    lines = ["digraph tree {"]
    for v in range(tree.size):
        lab = tree.labels[v]
        if lab > 0:
            lines.append(f'  v{v} [label="{lab}"];')
        else:
            lines.append(f'  v{v} [shape=circle,label=""];')
    for p, c in tree.edges():
        attr = " [penwidth=2]" if improper[(p, c)] else ""
        lines.append(f"  v{p} -> v{c}{attr};")
    lines.append("}")
    return "\n".join(lines)


# -- statistics API -----------------------------------------------------------


def beta_all(tree: Tree) -> dict[int, int]:
    """beta for every vertex id, unlabelled vertices included."""
    return dict(enumerate(tree.beta()))


def stats(tree: Tree) -> StatRecord:
    return tree.stats()


def elder_ids(tree: Tree) -> frozenset[int]:
    """Vertices having a right sibling with a smaller beta (ordered trees)."""
    if not tree.is_ordered():
        raise TreeError("elder/younger only applies to ordered trees")
    beta = tree.beta()
    elders = []
    for v in range(tree.size):
        min_right = _INF
        for c in reversed(tree.children[v]):
            if min_right < beta[c]:
                elders.append(c)
            if beta[c] < min_right:
                min_right = beta[c]
    return frozenset(elders)


def classify_edges(tree: Tree) -> dict[tuple[int, int], bool]:
    """Map each (parent, child) edge to True when improper.

    An edge is improper when the parent is labelled and its label exceeds the
    child's beta; in ordered trees the child must additionally be younger.
    """
    beta = tree.beta()
    elders = elder_ids(tree) if tree.is_ordered() else frozenset()
    out = {}
    for p, c in tree.edges():
        out[(p, c)] = (tree.labels[p] > 0 and tree.labels[p] > beta[c] and c not in elders)
    return out


def improper_children(tree: Tree, v: int) -> list[int]:
    """Improper children of v, sorted by ascending beta."""
    flags = classify_edges(tree)
    beta = tree.beta()
    kids = [c for c in tree.children[v] if flags[(v, c)]]
    kids.sort(key=beta.__getitem__)
    return kids


def bap(tree: Tree, v: int) -> tuple[int, ...]:
    """Greater-ancestors path of a labelled vertex.

    The maximal suffix of the root-to-v path ending at v on which every
    labelled vertex has label >= label(v); unlabelled vertices never block.
    """
    if tree.is_ordered():
        raise TreeError("bap applies to unordered trees")
    lab = tree.labels[v]
    if lab <= 0:
        raise TreeError("bap requires a labelled vertex", vertex=v)
    path = [v]
    cur = v
    while cur != 0:
        a = tree.parents[cur]
        if tree.labels[a] == UNLABELLED or tree.labels[a] >= lab:
            path.append(a)
            cur = a
        else:
            break
    path.reverse()
    return tuple(path)


def leading_vertices(tree: Tree) -> frozenset[int]:
    """Labelled vertices v with beta(first vertex of bap(v)) = label(v)."""
    if tree.is_ordered():
        raise TreeError("leading vertices apply to unordered trees")
    beta = tree.beta()
    out = []
    for v, lab in enumerate(tree.labels):
        if lab > 0 and beta[bap(tree, v)[0]] == lab:
            out.append(v)
    return frozenset(out)


def leading_proper_bijection(tree: Tree) -> dict[int, tuple[int, int]]:
    """Map each leading vertex other than the root to a proper edge.

    For a leading vertex i with bap (a_p, ..., i) the image is the edge
    (parent(a_p), a_p); over a Cayley tree this is a bijection onto the
    proper edges.
    """
    out = {}
    for v in leading_vertices(tree):
        if v == 0:
            continue
        top = bap(tree, v)[0]
        out[v] = (tree.parents[top], top)
    return out


# -- weight functions -----------------------------------------------------------


def _require_exponents(tree: Tree, expo: dict[str, int]) -> None:
    bad = {k: v for k, v in expo.items() if v < 0}
    if bad:
        raise RuntimeError(
            f"negative weight exponent {bad} for tree {to_text(tree)} "
            f"with stats {tree.stats().as_dict()}; this indicates a bug"
        )


def weight_greg(tree: Tree) -> Exponents:
    """(x, y, z, t) exponents y^unl t^impp x^(deg-1) z^(lead-deg-1)."""
    s = tree.stats()
    assert s.lead is not None
    expo = {"x": s.deg_root - 1, "y": s.unl, "z": s.lead - s.deg_root - 1, "t": s.impp}
    _require_exponents(tree, expo)
    return (expo["x"], expo["y"], expo["z"], expo["t"])


def weight_cayley(tree: Tree) -> MultiPoly:
    """(y+1)^(impe-impp) (y+t)^impp x^(deg-1) z^(lead-deg-1) as a polynomial."""
    s = tree.stats()
    assert s.lead is not None
    expo = {"x": s.deg_root - 1, "impe-impp": s.impe - s.impp,
            "z": s.lead - s.deg_root - 1, "impp": s.impp}
    _require_exponents(tree, expo)
    y_plus_1 = MultiPoly.var("y") + 1
    y_plus_t = MultiPoly.var("y") + MultiPoly.var("t")
    return (MultiPoly.monomial((expo["x"], 0, expo["z"], 0))
            * y_plus_1 ** expo["impe-impp"] * y_plus_t ** expo["impp"])


def weight_planar(tree: Tree) -> Exponents:
    """(x, y, z, t) exponents x^(young-1) y^impe t^eld z^(n-young-eld-impe).

    A planar tree of size n+1 contributes to the degree-n polynomial, so the
    z exponent uses n = size - 1.
    """
    s = tree.stats()
    assert s.eld is not None and s.young_root is not None
    n = tree.size - 1
    expo = {"x": s.young_root - 1, "y": s.impe, "t": s.eld,
            "z": n - s.young_root - s.eld - s.impe}
    _require_exponents(tree, expo)
    return (expo["x"], expo["y"], expo["z"], expo["t"])


# -- canonical ordering -----------------------------------------------------------


def canonical_order(tree: Tree) -> Tree:
    """Same tree with every child list sorted by ascending beta."""
    beta = tree.beta()
    children = [tuple(sorted(kids, key=beta.__getitem__)) for kids in tree.children]
    return Tree(tree.kind, tree.labels, children)


def tree_eq(a: Tree, b: Tree) -> bool:
    """Equality of canonical forms (order-insensitive for unordered trees)."""
    return a == b
