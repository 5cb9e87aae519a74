"""The five arithmetic functions over F_q[T], evaluated from a Factorization.

phi(F)      unit-group order of F_q[T]/(F): prod |P|^(v-1) (|P|-1)
sigma(G)    sum of |D| over monic divisors D of G
sigma_nm(G) sum over all unit multiples of monic divisors: (q-1) * sigma(G)
sigma_tilde polynomial-valued divisor sum: sum of the monic divisors themselves
phi_tilde   polynomial-valued totient: prod P^(v-1) (P-1)

All functions ignore the unit of the input (they evaluate the monic
associate) and return exact arbitrary-precision values.  Everything
here is a pure function of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .irreducibles import Factorization
from .poly import Polynomial


def phi(f: Factorization) -> int:
    out = 1
    for p, e in f.factors:
        np_ = p.norm()
        out *= np_ ** (e - 1) * (np_ - 1)
    return out


def sigma(f: Factorization) -> int:
    out = 1
    for p, e in f.factors:
        np_ = p.norm()
        out *= (np_ ** (e + 1) - 1) // (np_ - 1)
    return out


def sigma_nm(f: Factorization) -> int:
    """Divisor-norm sum over every nonzero unit multiple of a monic divisor."""
    return (f.field.q - 1) * sigma(f)


def sigma_tilde(f: Factorization) -> Polynomial:
    out = Polynomial.one(f.field)
    for p, e in f.factors:
        acc = Polynomial.one(f.field)
        power = Polynomial.one(f.field)
        for _ in range(e):
            power = power * p
            acc = acc + power
        out = out * acc
    return out


def phi_tilde(f: Factorization) -> Polynomial:
    one = Polynomial.one(f.field)
    out = one
    for p, e in f.factors:
        out = out * p ** (e - 1) * (p - one)
    return out


@dataclass(frozen=True)
class OmegaCounts:
    """omega_d and omega_{d,i} counters read off a factorization."""

    by_degree: tuple[tuple[int, int], ...]          # (d, omega_d)
    by_degree_exp: tuple[tuple[int, int, int], ...]  # (d, i, omega_{d,i})

    def omega(self, d: int) -> int:
        for dd, c in self.by_degree:
            if dd == d:
                return c
        return 0

    def omega_exp(self, d: int, i: int) -> int:
        for dd, ii, c in self.by_degree_exp:
            if (dd, ii) == (d, i):
                return c
        return 0

    def __iter__(self):
        return iter(self.by_degree_exp)


def omega_counts(f: Factorization) -> OmegaCounts:
    by_d: dict[int, int] = {}
    by_di: dict[tuple[int, int], int] = {}
    for p, e in f.factors:
        d = int(p.degree)
        by_d[d] = by_d.get(d, 0) + 1
        by_di[(d, e)] = by_di.get((d, e), 0) + 1
    return OmegaCounts(
        by_degree=tuple(sorted(by_d.items())),
        by_degree_exp=tuple((d, i, c) for (d, i), c in sorted(by_di.items())),
    )


def monic_divisors(f: Factorization):
    """All monic divisors, in deterministic (encoding) order."""
    primes = [p for p, _ in f.factors]
    exps = [e for _, e in f.factors]
    divisors = []
    for choice in iter_product(*(range(e + 1) for e in exps)):
        d = Polynomial.one(f.field)
        for p, c in zip(primes, choice):
            d = d * p**c
        divisors.append(d)
    divisors.sort(key=lambda d: d.encode())
    return divisors
