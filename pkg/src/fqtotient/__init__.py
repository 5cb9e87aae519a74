"""Exact totient/divisor-sum arithmetic over F_q[T].

The package computes the unit-group order phi and the monic divisor
sum sigma for polynomials over small finite fields, exhaustively finds
all solutions of phi(F) = sigma(G) up to degree bounds, and certifies
each solution's split into an exceptional part plus telescoping
families.  Hot bulk-table kernels run under numba by default with a
pure-numpy fallback (FQTOTIENT_BACKEND=numpy).
"""

from .arith import omega_counts, phi, phi_tilde, sigma, sigma_nm, sigma_tilde
from .errors import (
    DecompositionError,
    DomainError,
    FqError,
    IntegrityError,
    ParseError,
    ResourceError,
    UsageError,
)
from .exceptional import (
    CorollarySummary,
    ExceptionalSpec,
    OmegaProfile,
    RealizedExceptional,
    ambiguity_degree,
    corollary_summary,
    profiles_for_heads,
    realize,
    solve_profiles,
)
from .families import (
    FamilyInstance,
    FamilyVector,
    instantiate,
    is_member,
    verify_identity,
)
from .field import SUPPORTED_Q, FieldSpec
from .intfactor import factor_int, is_prime
from .irreducibles import (
    Factorization,
    IrreducibleTable,
    build_table,
    count_irreducibles,
    factor,
    is_irreducible,
    mobius,
)
from .kernels import active_backend, build_factor_tables, build_value_tables
from .poly import Polynomial, format_poly, parse_poly, poly_gcd
from .search import (
    SolutionCertificate,
    SolutionPair,
    certificate_from_json,
    certificate_to_json,
    phi_side_admissible,
    decompose,
    search,
    verify_certificate,
)
from .zsigmondy import (
    DecompositionResult,
    ExponentMultiset,
    PrimitiveDivisorReport,
    decompose_product,
    has_primitive_prime,
    primitive_part,
    primitive_prime_report,
    residual_multisets,
    smallest_primitive,
)

__version__ = "0.1.0"
