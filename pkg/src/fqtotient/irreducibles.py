"""Monic irreducible enumeration, counting, and trial-division factoring.

The table is produced by the product sieve (mark every product of two
monic polynomials of positive degree); counting is cross-checked
against the necklace formula pi_q(d) = (1/d) sum_{e|d} mu(e) q^(d/e).
Factoring single polynomials is deliberately plain trial division
against the table: auditable, exact, desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, ResourceError, UsageError
from .field import FieldSpec
from .kernels import build_factor_tables
from .poly import Polynomial, poly_gcd, poly_pow_mod


def _int_mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def count_irreducibles(field: FieldSpec | int, d: int) -> int:
    """pi_q(d): the number of monic irreducibles of degree d over F_q."""
    q = field.q if isinstance(field, FieldSpec) else int(field)
    if d <= 0:
        raise DomainError(f"degree {d} must be >= 1")
    total = sum(_int_mobius(e) * q ** (d // e) for e in _divisors(d))
    assert total % d == 0
    return total // d


def count_irreducibles_by_recurrence(field: FieldSpec | int, d: int) -> int:
    """pi_q(d) solved from the degree-counting identity sum_{e|d} e*pi_q(e) = q^d.

    Independent of the Moebius-inversion formula; used as an oracle.
    """
    q = field.q if isinstance(field, FieldSpec) else int(field)
    if d <= 0:
        raise DomainError(f"degree {d} must be >= 1")
    known: dict[int, int] = {}
    for m in sorted(set(_divisors(d))):
        acc = q**m
        for e in _divisors(m):
            if e != m:
                acc -= e * known[e]
        assert acc % m == 0
        known[m] = acc // m
    return known[d]


@dataclass(frozen=True)
class Factorization:
    """unit * prod(prime^exponent), primes monic irreducible, sorted by encoding."""

    field: FieldSpec
    unit: int
    factors: tuple[tuple[Polynomial, int], ...]

    def value(self) -> Polynomial:
        out = Polynomial.constant(self.field, self.unit)
        for prime, exp in self.factors:
            out = out * prime**exp
        return out

    def monic_value(self) -> Polynomial:
        out = Polynomial.one(self.field)
        for prime, exp in self.factors:
            out = out * prime**exp
        return out

    @property
    def is_one(self) -> bool:
        return not self.factors

    def degree(self) -> int:
        return sum(p.degree * e for p, e in self.factors) if self.factors else 0

    def omega(self) -> int:
        return len(self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def exponent_of(self, prime: Polynomial) -> int:
        for p, e in self.factors:
            if p == prime:
                return e
        return 0

    def __str__(self) -> str:
        parts = [] if self.unit == 1 else [str(self.unit)]
        for p, e in self.factors:
            parts.append(f"({p})" if e == 1 else f"({p})^{e}")
        return " * ".join(parts) if parts else "1"

    @classmethod
    def of_unit(cls, field: FieldSpec, unit: int = 1) -> "Factorization":
        return cls(field, unit, ())

    @classmethod
    def from_prime_powers(cls, field: FieldSpec, items, unit: int = 1) -> "Factorization":
        pairs = sorted(((p, int(e)) for p, e in items), key=lambda pe: pe[0].encode())
        for p, e in pairs:
            if e < 1 or not p.is_monic:
                raise DomainError("factors must be monic with exponent >= 1")
        encs = [p.encode() for p, _ in pairs]
        if len(set(encs)) != len(encs):
            raise DomainError("factors must be pairwise distinct")
        return cls(field, unit, tuple(pairs))


class IrreducibleTable:
    """All monic irreducibles of degree <= max_degree, sorted per degree."""

    def __init__(self, field: FieldSpec, max_degree: int, *, max_cells: int | None = None):
        if max_degree < 1 or max_degree > 24:
            raise DomainError(f"max_degree {max_degree} outside [1, 24]")
        self.field = field
        self.max_degree = max_degree
        tables = build_factor_tables(field, max_degree, max_cells=max_cells)
        by_degree: list[tuple[Polynomial, ...]] = [()]
        for d in range(1, max_degree + 1):
            encs = tables.irreducible_encodings(d)
            by_degree.append(tuple(Polynomial.decode(field, int(e)) for e in encs))
        self.by_degree = tuple(by_degree)
        self._enc_sets = tuple(frozenset(p.encode() for p in row) for row in self.by_degree)

    def irreducibles(self, d: int) -> tuple[Polynomial, ...]:
        if d < 1 or d > self.max_degree:
            raise ResourceError(
                f"table depth {self.max_degree} does not cover degree {d} (q={self.field.q})"
            )
        return self.by_degree[d]

    def count(self, d: int) -> int:
        return len(self.irreducibles(d))

    def contains(self, p: Polynomial) -> bool:
        d = p.degree
        if not p.is_monic or p.is_constant:
            return False
        if d > self.max_degree:
            raise ResourceError(f"table depth {self.max_degree} does not cover degree {d}")
        return p.encode() in self._enc_sets[d]

    def __repr__(self) -> str:
        return f"IrreducibleTable(F_{self.field.q}, max_degree={self.max_degree})"


def build_table(field: FieldSpec, max_degree: int, *, max_cells: int | None = None) -> IrreducibleTable:
    return IrreducibleTable(field, max_degree, max_cells=max_cells)


@lru_cache(maxsize=16)
def default_table(field: FieldSpec, max_degree: int) -> IrreducibleTable:
    """Shared table cache for callers that factor ad hoc polynomials."""
    return build_table(field, max_degree)


def factor(a: Polynomial, table: IrreducibleTable) -> Factorization:
    """Complete factorization by trial division, ascending degree."""
    if a.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    if a.field != table.field:
        raise UsageError("polynomial and table fields differ")
    unit = a.leading()
    rem = a.monic_associate()
    deg = int(rem.degree) if not rem.is_constant else 0
    if deg // 2 > table.max_degree:
        raise ResourceError(
            f"table depth {table.max_degree} too shallow to factor degree {deg}"
        )
    found: list[tuple[Polynomial, int]] = []
    d = 1
    while not rem.is_constant and 2 * d <= rem.degree:
        for p in table.by_degree[d]:
            if int(rem.degree) < 2 * d:
                break
            exp = 0
            while True:
                quo, r = divmod(rem, p)
                if not r.is_zero:
                    break
                rem = quo
                exp += 1
            if exp:
                found.append((p, exp))
        d += 1
    if not rem.is_constant:
        found.append((rem, 1))  # the leftover is irreducible: no factor of half degree
    return Factorization.from_prime_powers(a.field, found, unit=unit)


def mobius(a: Polynomial, table: IrreducibleTable) -> int:
    """mu(a): 0 on non-squarefree, else (-1)^(number of prime factors)."""
    f = factor(a, table)
    if not f.is_squarefree():
        return 0
    return -1 if f.omega() % 2 else 1


@lru_cache(maxsize=1 << 16)
def is_irreducible(p: Polynomial) -> bool:
    """Table-free deterministic irreducibility test.

    f of degree d is irreducible over F_q iff T^(q^d) = T mod f and
    gcd(T^(q^(d/r)) - T, f) = 1 for every prime r | d.  Exact; no
    randomness involved.
    """
    if p.is_zero or p.is_constant:
        return False
    f = p.monic_associate()
    d = int(f.degree)
    q = f.field.q
    T = Polynomial.T(f.field)
    if not (poly_pow_mod(T, q**d, f) - (T % f)).is_zero:
        return False
    r = 2
    dd = d
    primes = []
    while r * r <= dd:
        if dd % r == 0:
            primes.append(r)
            while dd % r == 0:
                dd //= r
        r += 1
    if dd > 1:
        primes.append(dd)
    for r in primes:
        g = poly_pow_mod(T, q ** (d // r), f) - (T % f)
        if g.is_zero or not poly_gcd(g, f).is_constant:
            return False
    return True
