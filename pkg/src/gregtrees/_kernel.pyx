# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled tree statistics kernel; must match _kernel_py exactly.

Encoding contract (see Tree.encode): vertex 0 is the root, parents[i] < i,
labels[i] == 0 marks an unlabelled vertex, and for ordered trees sibling
order is ascending id order.
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"

cdef long long _INF = 1 << 60


def tree_stats(int[::1] parents, int[::1] labels, bint ordered):
    cdef Py_ssize_t n_vertices = parents.shape[0]
    cdef Py_ssize_t i
    cdef int p, a, v, li
    cdef int nlab = 0, unl = 0, deg_root = 0, impe = 0, impp = 0
    cdef int eld = 0, young_root = 0, lead = -1
    cdef bint is_elder

    cdef long long *beta = <long long *> malloc(n_vertices * sizeof(long long))
    cdef long long *min_right = <long long *> malloc(n_vertices * sizeof(long long))
    cdef char *has_improper = <char *> malloc(n_vertices * sizeof(char))
    if beta == NULL or min_right == NULL or has_improper == NULL:
        free(beta); free(min_right); free(has_improper)
        raise MemoryError()

    try:
        for i in range(n_vertices):
            beta[i] = labels[i] if labels[i] > 0 else _INF
            min_right[i] = _INF
            has_improper[i] = 0
            if labels[i] > 0:
                nlab += 1
        unl = <int> n_vertices - nlab

        for i in range(n_vertices - 1, 0, -1):
            p = parents[i]
            if beta[i] < beta[p]:
                beta[p] = beta[i]

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
                has_improper[p] = 1
            if beta[i] < min_right[p]:
                min_right[p] = beta[i]

        for i in range(n_vertices):
            if labels[i] > 0 and has_improper[i]:
                impp += 1

        if not ordered:
            lead = 0
            for i in range(n_vertices):
                li = labels[i]
                if li <= 0:
                    continue
                v = <int> i
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
    finally:
        free(beta)
        free(min_right)
        free(has_improper)
