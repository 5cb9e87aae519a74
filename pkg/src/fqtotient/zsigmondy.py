"""Primitive prime divisors of a^n - b^n and product decomposition.

A prime p dividing a^n - b^n is primitive when it divides no earlier
term a^m - b^m (m < n).  For coprime a > b the classical result says a
primitive prime always exists except for (a, b, n) = (2, 1, 6), for
n = 2 with a + b a power of two, and degenerately for n = 1 with
a - b = 1 (the term is 1).

decompose_product inverts N = prod (a^{n_i} - 1): the sub-multiset of
exponents not dividing d_a (6 for a = 2, 2 for a = 3, nothing escapes
otherwise) is unique and is recovered greedily from the largest
primitive prime level present; the rest of N is returned as an opaque
residual integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DecompositionError, DomainError, IntegrityError, ResourceError
from .intfactor import RANGE_LIMIT, factor_int, valuation

EXCEPTION_2_1_6 = "none-exists: a=2,b=1,n=6"
EXCEPTION_POW2 = "none-exists: a+b power-of-two, n=2"
EXCEPTION_DEGENERATE = "degenerate: n=1, a-b=1"


def _check_pair(a: int, b: int, n: int) -> None:
    if not (a > b >= 1):
        raise DomainError(f"need a > b >= 1, got a={a}, b={b}")
    if gcd(a, b) != 1:
        raise DomainError(f"need gcd(a, b) = 1, got gcd({a}, {b}) = {gcd(a, b)}")
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if a**n >= RANGE_LIMIT:
        raise ResourceError(f"a^n = {a}^{n} exceeds the 128-bit range")


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_part(a: int, b: int, n: int) -> int:
    """The product (with multiplicity) of the primitive primes of a^n - b^n.

    Computed exactly by stripping gcds with the maximal proper-divisor
    terms; every non-primitive prime has multiplicative order e | n with
    e < n, hence divides one of them to full multiplicity.
    """
    _check_pair(a, b, n)
    rem = a**n - b**n
    for r in _prime_divisors(n):
        d = n // r
        g = gcd(rem, a**d - b**d)
        while g > 1:
            rem //= g
            g = gcd(rem, g)
    return rem


def has_primitive_prime(a: int, b: int, n: int) -> bool:
    return primitive_part(a, b, n) > 1


def classify_exception(a: int, b: int, n: int) -> str | None:
    """The exception tag for (a, b, n), or None when a primitive prime exists."""
    if has_primitive_prime(a, b, n):
        return None
    if n == 1 and a - b == 1:
        return EXCEPTION_DEGENERATE
    if (a, b, n) == (2, 1, 6):
        return EXCEPTION_2_1_6
    if n == 2 and (a + b) & (a + b - 1) == 0:
        return EXCEPTION_POW2
    raise IntegrityError(
        f"(a,b,n)=({a},{b},{n}) has no primitive prime and matches no known exception"
    )


@dataclass(frozen=True)
class PrimitiveDivisorReport:
    a: int
    b: int
    n: int
    primitive_primes: tuple[int, ...]
    exception: str | None

    def __post_init__(self):
        assert (len(self.primitive_primes) > 0) == (self.exception is None)


def primitive_prime_report(a: int, b: int, n: int) -> PrimitiveDivisorReport:
    """Sorted primitive primes of a^n - b^n, or the applicable exception tag."""
    part = primitive_part(a, b, n)
    if part == 1:
        return PrimitiveDivisorReport(a, b, n, (), classify_exception(a, b, n))
    primes = tuple(sorted(factor_int(part)))
    return PrimitiveDivisorReport(a, b, n, primes, None)


def smallest_primitive(a: int, n: int) -> int | None:
    """p_n: the least primitive prime of a^n - 1, or None in the exceptional cases."""
    if a < 2:
        raise DomainError(f"need a >= 2, got {a}")
    part = primitive_part(a, 1, n)
    if part == 1:
        return None
    return min(factor_int(part))


@dataclass(frozen=True)
class ExponentMultiset:
    """Multiset of exponents n_i for a product prod (a^{n_i} - 1)."""

    base: int
    entries: tuple[int, ...]

    def product(self) -> int:
        out = 1
        for n in self.entries:
            out *= self.base**n - 1
        return out


@dataclass(frozen=True)
class DecompositionResult:
    base: int
    forced: ExponentMultiset
    residual: int

    def reconstruct(self) -> int:
        return self.forced.product() * self.residual


def peel_bound(a: int) -> int | None:
    """d_a: exponents dividing this value cannot be recovered uniquely."""
    if a == 2:
        return 6
    if a == 3:
        return 2
    return None


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def decompose_product(a: int, N: int) -> DecompositionResult:
    """Recover the forced exponent multiset of N = prod (a^{n_i} - 1).

    Greedy peel from the top: take the largest level k whose smallest
    primitive prime divides N, read off the multiplicity from the
    valuation ratio, divide out, repeat.  Exponents dividing d_a are
    left in the residual (a in {2, 3}); for a + 1 a power of two the
    levels 1 and 2 are recovered jointly from the two-equation tail.
    """
    if a < 2:
        raise DomainError(f"need a >= 2, got {a}")
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    if N >= RANGE_LIMIT:
        raise ResourceError(f"N = {N} exceeds the 127-bit range")
    d_a = peel_bound(a)
    mersenne_like = a not in (2, 3) and _is_power_of_two(a + 1)

    k_max = 0
    while a ** (k_max + 1) - 1 <= N:
        k_max += 1
    work = N
    forced: list[int] = []
    for k in range(k_max, 0, -1):
        if d_a is not None and d_a % k == 0:
            continue  # levels dividing d_a stay in the residual
        if mersenne_like and k <= 2:
            continue  # levels 1 and 2 are solved jointly below
        part = primitive_part(a, 1, k)
        if part == 1 or work == 1:
            continue
        g = gcd(part, work)
        if g == 1:
            continue
        p_k = min(factor_int(g))
        term = a**k - 1
        v_n = valuation(work, p_k)
        v_t = valuation(term, p_k)
        if v_n % v_t != 0:
            raise DecompositionError(
                f"valuation of p_{k}={p_k} in {work} is not a multiple of its "
                f"valuation in {a}^{k}-1",
                stuck_cofactor=work,
            )
        count = v_n // v_t
        block = term**count
        if work % block != 0:
            raise DecompositionError(
                f"{work} is not divisible by ({a}^{k}-1)^{count}", stuck_cofactor=work
            )
        work //= block
        forced.extend([k] * count)

    residual = 1
    if a == 2:
        residual = work
        probe = work
        for p in (3, 7):
            while probe % p == 0:
                probe //= p
        if probe != 1:
            raise DecompositionError(
                f"residual {work} has a prime factor outside the levels dividing 6",
                stuck_cofactor=probe,
            )
    elif a == 3:
        residual = work
        if not _is_power_of_two(work):
            raise DecompositionError(
                f"residual {work} is not a power of 2", stuck_cofactor=work
            )
    elif mersenne_like:
        # a = 2^m - 1: remaining work = (a-1)^c1 (a^2-1)^c2
        #            = 2^(c1 + (m+1) c2) * (2^(m-1) - 1)^(c1 + c2)
        m = (a + 1).bit_length() - 1
        u = valuation(work, 2) if work > 1 else 0
        odd = work >> u
        base = (1 << (m - 1)) - 1  # >= 3 since a >= 7 here
        s = 0
        probe = odd
        while probe % base == 0 and probe > 1:
            probe //= base
            s += 1
        if probe != 1:
            raise DecompositionError(
                f"tail {work} is not of the form 2^x * ({base})^s", stuck_cofactor=probe
            )
        c2, r = divmod(u - s, m)
        c1 = s - c2
        if r != 0 or c1 < 0 or c2 < 0:
            raise DecompositionError(
                f"tail {work} has no consistent level-1/level-2 split",
                stuck_cofactor=work,
            )
        forced.extend([1] * c1 + [2] * c2)
    else:
        if work != 1:
            raise DecompositionError(
                f"cofactor {work} is not a product of terms {a}^n - 1",
                stuck_cofactor=work,
            )

    result = DecompositionResult(
        base=a,
        forced=ExponentMultiset(base=a, entries=tuple(sorted(forced))),
        residual=residual,
    )
    if result.reconstruct() != N:
        raise IntegrityError(f"decomposition of {N} does not reconstruct")
    return result


def residual_multisets(a: int, residual: int) -> list[tuple[int, ...]]:
    """All exponent multisets over the levels dividing d_a generating residual.

    For a = 2 the level-1 term is 1 and is excluded (it would make the
    answer infinite); for a = 3 levels 1 and 2 both contribute powers
    of 2.  For other bases only residual = 1 is representable.
    """
    if residual < 1:
        raise DomainError("residual must be >= 1")
    if a == 2:
        v3 = valuation(residual, 3) if residual > 1 else 0
        v7 = valuation(residual, 7) if residual > 1 else 0
        if residual != 3**v3 * 7**v7:
            return []
        out = []
        for c6 in range(min(v3 // 2, v7) + 1):
            c2 = v3 - 2 * c6
            c3 = v7 - c6
            out.append(tuple(sorted([2] * c2 + [3] * c3 + [6] * c6)))
        return sorted(out)
    if a == 3:
        if not _is_power_of_two(residual):
            return []
        v2 = residual.bit_length() - 1
        out = []
        for c2 in range(v2 // 3 + 1):
            c1 = v2 - 3 * c2
            out.append(tuple(sorted([1] * c1 + [2] * c2)))
        return sorted(out)
    return [()] if residual == 1 else []
