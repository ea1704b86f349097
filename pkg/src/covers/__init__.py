"""Branched covering spaces of knots, computed from group presentations.

The pipeline: a knot diagram gives an arc presentation of the knot group
with a distinguished meridian and longitude; a homomorphism onto a finite
permutation group picks out a finite-index normal subgroup U; coset
enumeration, subgroup rewriting and exact integer linear algebra then
produce the ramification data e*f*r, the fundamental group of the
associated branched cover, its order and first homology, and machine checks
of the exact sequences relating the two covers.
"""

__version__ = "0.1.0"

from .abelian import FinGenAbelianGroup, IntMatrix, SNFResult, cokernel, smith_normal_form
from .coset_table import (
    DEFAULT_LIMITS,
    ENGINE,
    CosetTable,
    EnumerationLimits,
    NotClosed,
    enumerate_cosets,
    kernel_table,
    order_of,
)
from .cover import CoverReport, EFRDecomposition, analyze, branched_pi1, efr
from .identify import ConcreteFiniteGroup, identify_group, materialize
from .knot import (
    BUILTIN_KNOTS,
    KnotDiagram,
    WirtingerData,
    builtin_diagram,
    linking_hom,
    parse_braid,
    parse_pd,
    wirtinger,
)
from .presentation import Presentation, abelian_invariants, relation_matrix, tietze_simplify
from .schreier import RewritingData, rewrite_presentation, rewrite_word
from .verify import (
    NotApplicable,
    SequenceCheckReport,
    check_prop_b,
    check_prop_c_degree01,
    check_prop_d,
    check_splitting,
)
from .words import Word, cyclic_reduce, reduce, substitute

__all__ = [
    "BUILTIN_KNOTS",
    "ConcreteFiniteGroup",
    "CosetTable",
    "CoverReport",
    "DEFAULT_LIMITS",
    "EFRDecomposition",
    "ENGINE",
    "EnumerationLimits",
    "FinGenAbelianGroup",
    "IntMatrix",
    "KnotDiagram",
    "NotApplicable",
    "NotClosed",
    "Presentation",
    "RewritingData",
    "SNFResult",
    "SequenceCheckReport",
    "WirtingerData",
    "Word",
    "abelian_invariants",
    "analyze",
    "branched_pi1",
    "builtin_diagram",
    "check_prop_b",
    "check_prop_c_degree01",
    "check_prop_d",
    "check_splitting",
    "cokernel",
    "cyclic_reduce",
    "efr",
    "enumerate_cosets",
    "identify_group",
    "kernel_table",
    "linking_hom",
    "materialize",
    "order_of",
    "parse_braid",
    "parse_pd",
    "reduce",
    "relation_matrix",
    "rewrite_presentation",
    "rewrite_word",
    "smith_normal_form",
    "substitute",
    "tietze_simplify",
    "wirtinger",
]
