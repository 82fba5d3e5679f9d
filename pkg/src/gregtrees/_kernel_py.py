"""Pure-Python tree statistics kernel.

Mirrors the compiled kernel in ``_kernel.pyx``; both must stay byte-for-byte
equivalent in behaviour.  The encoding contract (see Tree.encode):

* vertex ids are 0 .. V-1 with vertex 0 the root and parents[i] < i,
* labels[i] is the positive vertex label, or 0 for an unlabelled vertex,
* for ordered trees, sibling order is ascending id order.

Returns ``(nlab, unl, impe, impp, deg_root, lead, eld, young_root)`` where
``lead`` is -1 for ordered trees and ``eld``/``young_root`` are -1 for
unordered trees.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "pure"

_INF = 1 << 60


def tree_stats(parents: Sequence[int], labels: Sequence[int], ordered: bool) -> tuple[int, ...]:
    n_vertices = len(parents)
    beta = [labels[i] if labels[i] > 0 else _INF for i in range(n_vertices)]
    for i in range(n_vertices - 1, 0, -1):
        p = parents[i]
        if beta[i] < beta[p]:
            beta[p] = beta[i]

    nlab = sum(1 for i in range(n_vertices) if labels[i] > 0)
    unl = n_vertices - nlab

    deg_root = 0
    impe = 0
    eld = 0
    young_root = 0
    has_improper_child = [False] * n_vertices
    min_right = [_INF] * n_vertices
    # descending id order visits each sibling list right-to-left
    for i in range(n_vertices - 1, 0, -1):
        p = parents[i]
        if p == 0:
            deg_root += 1
        is_elder = ordered and min_right[p] < beta[i]
        if is_elder:
            eld += 1
        elif p == 0:
            young_root += 1
        if labels[p] > 0 and labels[p] > beta[i] and not is_elder:
            impe += 1
            has_improper_child[p] = True
        if beta[i] < min_right[p]:
            min_right[p] = beta[i]

    impp = sum(1 for i in range(n_vertices) if labels[i] > 0 and has_improper_child[i])

    lead = -1
    if not ordered:
        lead = 0
        for i in range(n_vertices):
            li = labels[i]
            if li <= 0:
                continue
            v = i
            while v != 0:
                a = parents[v]
                if labels[a] == 0 or labels[a] >= li:
                    v = a
                else:
                    break
            if beta[v] == li:
                lead += 1

    if ordered:
        return (nlab, unl, impe, impp, deg_root, -1, eld, young_root)
    return (nlab, unl, impe, impp, deg_root, lead, -1, -1)
