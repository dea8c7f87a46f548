"""Exact computations for the q-Onsager algebra, its current-algebra
elements, the universal Askey-Wilson algebra and the Onsager algebra."""

from .exactq import RatFuncQ, binom, eval_limit_q1, q, qint, qpow
from .commpoly import CommPoly
from .gseries import (
    TruncatedSeries,
    cayley_compose,
    check_qexpansion_equivalences,
    inverse,
    q_expand,
    q_square_root,
    q_symmetrize,
    vee,
)
from .ncalg import W0, W1, FreeElement, apply_hom, commutator, dolan_grady_generators, q_commutator
from .oq import OqElements, appendix_a_table, appendix_b_table
from .reports import CaseResult, SuiteReport

__version__ = "0.1.0"

__all__ = [
    "RatFuncQ",
    "q",
    "qint",
    "qpow",
    "binom",
    "eval_limit_q1",
    "CommPoly",
    "TruncatedSeries",
    "vee",
    "inverse",
    "q_square_root",
    "q_symmetrize",
    "q_expand",
    "cayley_compose",
    "check_qexpansion_equivalences",
    "FreeElement",
    "W0",
    "W1",
    "commutator",
    "q_commutator",
    "dolan_grady_generators",
    "apply_hom",
    "OqElements",
    "appendix_a_table",
    "appendix_b_table",
    "CaseResult",
    "SuiteReport",
]
