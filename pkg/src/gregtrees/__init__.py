"""Exact tree polynomial families, tree enumeration, and bijections.

The package computes the polynomial families C, P, Q, R, H by their defining
recurrences in exact rational arithmetic, exhaustively enumerates Cayley,
Greg, and planar labelled trees together with the statistics that grade them
(improper edges and parents, leading vertices, elder/younger children), and
implements the two statistic-preserving bijections between the families.
Every generating-function identity relating the two is re-verified by brute
force; see :mod:`gregtrees.identities` and the ``gregtrees verify`` command.
"""

from .bijections import (SelectionFunction, greg_decompose, phi, phi_at,
                         planar_decompose, psi, repr_planar, rewrite_step,
                         selections, underlying_cayley, zeta, zeta_at,
                         zeta_inv_at)
from .enumeration import (aggregate, cayley_trees, enum_cayley, enum_greg,
                          enum_planar, enum_rooted_labelled, enum_selections,
                          greg_trees, planar_trees, rooted_labelled_trees)
from .families import (PsiTable, psi_extract, seq_C, seq_H,
                       seq_H_via_recurrence, seq_P, seq_Q, seq_R,
                       seq_R_via_recurrence)
from .identities import VerificationReport, run_suite
from .kernel import BACKEND as KERNEL_BACKEND
from .poly import VARIABLES, MultiPoly, poly_from_text, poly_to_text
from .series import TruncatedSeries
from .tree import (StatRecord, Tree, TreeError, bap, beta_all, build_tree,
                   canonical_order, classify_edges, classify_family, from_text,
                   leading_proper_bijection, leading_vertices, stats, to_doc,
                   to_dot, to_json, to_text, tree_eq, weight_cayley,
                   weight_greg, weight_planar)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND", "MultiPoly", "PsiTable", "SelectionFunction",
    "StatRecord", "Tree", "TreeError", "TruncatedSeries", "VARIABLES",
    "VerificationReport", "aggregate", "bap", "beta_all", "build_tree",
    "canonical_order", "cayley_trees", "classify_edges", "classify_family",
    "enum_cayley", "enum_greg", "enum_planar", "enum_rooted_labelled",
    "enum_selections", "from_text", "greg_decompose", "greg_trees",
    "leading_proper_bijection", "leading_vertices", "phi", "phi_at",
    "planar_decompose", "planar_trees", "poly_from_text", "poly_to_text",
    "psi", "psi_extract", "repr_planar", "rewrite_step",
    "rooted_labelled_trees", "run_suite", "selections", "seq_C", "seq_H",
    "seq_H_via_recurrence", "seq_P", "seq_Q", "seq_R",
    "seq_R_via_recurrence", "stats", "to_doc", "to_dot", "to_json",
    "to_text", "tree_eq", "underlying_cayley", "weight_cayley",
    "weight_greg", "weight_planar", "zeta", "zeta_at", "zeta_inv_at",
]
