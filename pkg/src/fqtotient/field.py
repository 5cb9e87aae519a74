"""Finite fields F_q for small prime powers q.

Field elements are plain integers in [0, q).  The base-p digits of an
element's index are its coefficient vector in the power basis of the
modulus, so for prime q the index is the residue itself, and for
extension fields index p (digits (0, 1)) is the generator class g.
Index 0 is the additive identity, index 1 the multiplicative identity.

Arithmetic is table driven: q <= 16 keeps every table tiny, and the
same tables feed the numba/numpy kernels.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DomainError

# One fixed monic irreducible modulus per supported extension field.
# Coefficients are listed lowest degree first over F_p.
_MODULI = {
    4: (1, 1, 1),          # x^2 + x + 1 over F_2
    8: (1, 1, 0, 1),       # x^3 + x + 1 over F_2
    9: (1, 0, 1),          # x^2 + 1 over F_3
    16: (1, 1, 0, 0, 1),   # x^4 + x + 1 over F_2
}

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _digits(n: int, base: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        out.append(n % base)
        n //= base
    return tuple(out)


def _undigits(digits, base: int) -> int:
    n = 0
    for d in reversed(digits):
        n = n * base + d
    return n


class FieldSpec:
    """An explicit model of F_q = F_p[x]/(modulus), q = p^k.

    Immutable after construction; instances are cached per q so that
    equality is identity for the built-in moduli.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if k < 1:
            raise DomainError(f"extension degree {k} must be >= 1")
        q = p**k
        if k == 1:
            if modulus is not None:
                raise DomainError("prime fields take no modulus")
        else:
            if k > 4:
                raise DomainError(
                    f"extension degree {k} exceeds the supported range (k <= 4)"
                )
            if modulus is None:
                raise DomainError(f"extension field F_{q} requires a modulus")
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise DomainError("modulus must be monic of degree k")
            if not _modulus_irreducible(modulus, p):
                raise DomainError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._add, self._mul, self._inv = _build_tables(p, k, modulus)

    @classmethod
    @lru_cache(maxsize=None)
    def for_q(cls, q: int, modulus_digits: tuple[int, ...] | None = None) -> "FieldSpec":
        """The built-in field of size q (q in SUPPORTED_Q)."""
        if q not in SUPPORTED_Q:
            raise DomainError(f"unsupported field size {q}; supported: {SUPPORTED_Q}")
        p = _char_of(q)
        k = 1
        while p**k < q:
            k += 1
        if k == 1:
            return cls(p, 1)
        return cls(p, k, modulus_digits or _MODULI[q])

    # -- element arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg(b)]

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return _undigits([(-d) % self.p for d in _digits(a, self.p, self.k)], self.p)

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def element_from_fp_coeffs(self, coeffs) -> int:
        """Element index from coefficients of the power-basis expansion."""
        cs = [int(c) % self.p for c in coeffs]
        if len(cs) > self.k:
            raise DomainError("too many basis coefficients")
        cs += [0] * (self.k - len(cs))
        return _undigits(cs, self.p)

    def fp_coeffs(self, a: int) -> tuple[int, ...]:
        return _digits(a, self.p, self.k)

    # -- kernel/table views ------------------------------------------------

    def add_table(self) -> np.ndarray:
        return np.array(self._add, dtype=np.int64)

    def mul_table(self) -> np.ndarray:
        return np.array(self._mul, dtype=np.int64)

    # -- housekeeping ------------------------------------------------------

    def __repr__(self) -> str:
        if self.k == 1:
            return f"FieldSpec(F_{self.q})"
        return f"FieldSpec(F_{self.q}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))


def _char_of(q: int) -> int:
    d = 2
    while d * d <= q:
        if q % d == 0:
            return d
        d += 1
    return q


def _fp_poly_mulmod(a, b, modulus, p):
    """Multiply two F_p coefficient vectors and reduce mod the modulus."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce: x^k = -(modulus minus leading term)
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c == 0:
            continue
        prod[i] = 0
        for j in range(k):
            prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
    return prod[:k] + [0] * (k - len(prod))


def _modulus_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive divisor check; the built-in moduli all have k <= 4."""
    k = len(modulus) - 1
    if k == 1:
        return True
    # no root in F_p
    for x in range(p):
        acc = 0
        for c in reversed(modulus):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    if k <= 3:
        return True
    # degree 4: also exclude irreducible quadratic divisors
    for e in range(p * p):
        cand = (e % p, e // p, 1)
        if any(_fp_eval(cand, x, p) == 0 for x in range(p)):
            continue  # reducible quadratic, covered by the root check
        if _fp_divides(cand, modulus, p):
            return False
    return True


def _fp_eval(poly, x, p):
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _fp_divides(d, f, p):
    r = list(f)
    dd = len(d) - 1
    inv_lead = pow(d[-1], p - 2, p)
    while len(r) - 1 >= dd and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dd:
            break
        c = (r[-1] * inv_lead) % p
        shift = len(r) - 1 - dd
        for j in range(dd + 1):
            r[shift + j] = (r[shift + j] - c * d[j]) % p
    return not any(r)


def _build_tables(p: int, k: int, modulus):
    q = p**k
    if k == 1:
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
        inv = tuple(pow(a, p - 2, p) if a else 0 for a in range(p))
        return add, mul, inv
    mod = list(modulus)
    add = []
    mul = []
    for a in range(q):
        da = list(_digits(a, p, k))
        arow, mrow = [], []
        for b in range(q):
            db = list(_digits(b, p, k))
            arow.append(_undigits([(x + y) % p for x, y in zip(da, db)], p))
            mrow.append(_undigits(_fp_poly_mulmod(da, db, mod, p), p))
        add.append(tuple(arow))
        mul.append(tuple(mrow))
    inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul[a][b] == 1:
                inv[a] = b
                break
    return tuple(add), tuple(mul), tuple(inv)
