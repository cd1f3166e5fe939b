"""Exact Schubert calculus on Gr(2, m) and a Diophantine classifier for
the Chern data of embeddings Gr(2, m) -> Gr(2, n)."""

from .chern import (
    CNSeries,
    EmbeddingContext,
    EulerData,
    SymClass,
    chern_E,
    chern_factors,
    chern_quotient,
    chern_universal,
    cn_total,
    euler_class,
    pullback_cycle,
    refined_eq_10,
    refined_eq_11,
)
from .ring import PolyABC, TruncSeries, binomial
from .schubert import (
    STABLE,
    SchubertClass,
    degree_of,
    dual_cycle,
    expand_monomials,
    mul2,
    pairing,
    pieri_special,
    project_q10,
    project_q11,
    to_monomial,
)
from .solver import (
    BVFamily,
    Box,
    Constraint,
    ConstraintSystem,
    Verdict,
    build_system,
    bv_family_of,
    bv_filter,
    check_triple,
    classify,
    default_box,
    derived_fact_report,
    enumerate_box,
    verify_impossible_pairs,
)

__version__ = "0.1.0"
