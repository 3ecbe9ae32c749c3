"""Gröbner bases for ideals stable under increasing maps of the indices."""

from .algebra import (
    GF,
    QQ,
    DomainMismatchError,
    Field,
    ModP,
    Monomial,
    Polynomial,
    Ring,
    SymbolSchema,
    Variable,
    lcm_mono,
    mono_divides,
    mono_mul,
    poly_add,
    poly_mul,
    poly_scale,
)
from .engine import (
    Basis,
    EngineConfig,
    EngineError,
    GBResult,
    equivariant_buchberger,
    extract_elimination,
    interreduce,
    is_equivariant_groebner,
    normal_form,
    reduce,
)
from .finite import TruncatedRing, finite_buchberger, orbit_expand, same_ideal
from .orders import OrderSpec, check_compatibility, compare, leading_monomial, preset
from .symmetry import IncWitness, apply, canonicalize, orbit_pair_decomposition
from .wpo import (
    LabelledTree,
    PosetTable,
    dickson_leq,
    higman_leq,
    kruskal_leq,
    multiset_leq,
    pi_divides,
)

__version__ = "0.1.0"
