"""Telescoping solution families.

A family vector v = (v_0, v_1, ..., v_n) fixes a degree ladder
d_k = v_0 * prod_{i<k} (v_i + 1); an instance picks monic irreducibles
P_1, ..., P_{n+1} on the ladder and sets G = prod_{i<=n} P_i^{v_i},
F = P_{n+1}.  The divisor sum of G then telescopes:
sigma(G) = (q^{deg F} - 1) / (q^{v_0} - 1), which is what makes these
pairs solve the totient/divisor-sum equation over F_2 (v_0 = 1) and,
after multiplying in the fixed linear scaffolds T and T(T+1), over F_3
(v_0 = 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import phi, sigma
from .errors import DomainError, ResourceError
from .field import FieldSpec
from .irreducibles import Factorization, IrreducibleTable, is_irreducible
from .poly import Polynomial


@dataclass(frozen=True)
class FamilyVector:
    """(v_0, v_1, ..., v_n) with n >= 1 and all entries >= 1."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 2:
            raise DomainError("family vector needs v_0 and at least one v_i")
        if any(v < 1 for v in self.entries):
            raise DomainError("family vector entries must be >= 1")

    @property
    def head_degree(self) -> int:
        return self.entries[0]

    @property
    def tail(self) -> tuple[int, ...]:
        return self.entries[1:]

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def degree_ladder(self) -> tuple[int, ...]:
        """deg(P_k) for k = 1..n+1; strictly increasing."""
        out = []
        d = self.entries[0]
        out.append(d)
        for v in self.entries[1:]:
            d *= v + 1
            out.append(d)
        return tuple(out)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class FamilyInstance:
    vector: FamilyVector
    primes: tuple[Polynomial, ...]

    def __post_init__(self):
        ladder = self.vector.degree_ladder()
        if len(self.primes) != len(ladder):
            raise DomainError("instance needs one prime per ladder rung")
        for p, d in zip(self.primes, ladder):
            if p.degree != d or not p.is_monic:
                raise DomainError(f"prime {p} does not sit on ladder degree {d}")

    @property
    def field(self) -> FieldSpec:
        return self.primes[0].field

    @property
    def F(self) -> Polynomial:
        return self.primes[-1]

    def G_factorization(self) -> Factorization:
        pairs = list(zip(self.primes[:-1], self.vector.tail))
        return Factorization.from_prime_powers(self.field, pairs)

    @property
    def G(self) -> Polynomial:
        return self.G_factorization().monic_value()


def instantiate(
    field: FieldSpec,
    v: FamilyVector,
    table: IrreducibleTable,
    index: int = 0,
    exclude: frozenset[Polynomial] | set[Polynomial] = frozenset(),
) -> FamilyInstance:
    """The index-th instance in lexicographic prime order.

    `exclude` removes primes already claimed elsewhere (the ladder is
    strictly increasing, so rungs never compete with each other).
    """
    if index < 0:
        raise DomainError("index must be >= 0")
    ladder = v.degree_ladder()
    if ladder[-1] > table.max_degree:
        raise ResourceError(
            f"family {v} needs a prime of degree {ladder[-1]}, "
            f"table depth is {table.max_degree}"
        )
    pools = []
    for d in ladder:
        pool = [p for p in table.irreducibles(d) if p not in exclude]
        if not pool:
            raise DomainError(
                f"family {v} is infeasible over F_{field.q}: no free irreducible of "
                f"degree {d} (pi_q({d}) = {table.count(d)})"
            )
        pools.append(pool)
    total = 1
    for pool in pools:
        total *= len(pool)
    if index >= total:
        raise DomainError(
            f"family {v} over F_{field.q} has only {total} instances within the "
            f"table depth; index {index} is out of range"
        )
    digits = []
    rem = index
    for pool in reversed(pools):
        rem, digit = divmod(rem, len(pool))
        digits.append(digit)
    digits.reverse()
    primes = tuple(pool[i] for pool, i in zip(pools, digits))
    return FamilyInstance(vector=v, primes=primes)


@dataclass(frozen=True)
class IdentityReport:
    applicable: bool
    holds: bool | None
    lhs: int | None
    rhs: int | None
    detail: str

    def __bool__(self) -> bool:
        return bool(self.applicable and self.holds)


def verify_identity(field: FieldSpec, inst: FamilyInstance) -> IdentityReport:
    """Check the telescoping identity satisfied by the instance.

    q = 2 with v_0 = 1: phi(F) = sigma(G).
    q = 3 with v_0 = 2: phi(T F) = sigma(T (T+1) G).
    Anything else is reported not-applicable.
    """
    q = field.q
    v0 = inst.vector.head_degree
    if q == 2 and v0 == 1:
        lhs = phi(Factorization.from_prime_powers(field, [(inst.F, 1)]))
        rhs = sigma(inst.G_factorization())
        return IdentityReport(True, lhs == rhs, lhs, rhs, "phi(F) vs sigma(G)")
    if q == 3 and v0 == 2:
        T = Polynomial.T(field)
        T1 = T + Polynomial.one(field)
        f_fac = Factorization.from_prime_powers(field, [(T, 1), (inst.F, 1)])
        g_pairs = [(T, 1), (T1, 1)] + list(zip(inst.primes[:-1], inst.vector.tail))
        g_fac = Factorization.from_prime_powers(field, g_pairs)
        lhs = phi(f_fac)
        rhs = sigma(g_fac)
        return IdentityReport(True, lhs == rhs, lhs, rhs, "phi(T*F) vs sigma(T*(T+1)*G)")
    return IdentityReport(
        False, None, None, None, f"no identity for q={q} with v_0={v0}"
    )


def is_member(field: FieldSpec, F: Polynomial, G: Factorization, v: FamilyVector) -> bool:
    """Whether (F, G) lies in the family of v: F prime on the top rung,
    G exactly the ladder primes with the prescribed exponents."""
    ladder = v.degree_ladder()
    if not F.is_monic or F.degree != ladder[-1] or not is_irreducible(F):
        return False
    factors = G.factors
    if len(factors) != v.n:
        return False
    got = sorted((int(p.degree), e) for p, e in factors)
    want = sorted(zip(ladder[:-1], v.tail))
    return got == want
