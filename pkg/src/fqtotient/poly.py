"""Exact univariate polynomial arithmetic over F_q.

Polynomials are immutable.  Coefficients are stored lowest degree
first with no trailing zeros; the zero polynomial is the empty tuple
and its degree is the distinguished marker NEG_INF.

Canonical integer encoding: sum coeffs[i] * q^i.  The encoding is a
bijection onto the nonnegative integers, and it is monotone in degree
(every polynomial of smaller degree encodes below every monic
polynomial of larger degree), which makes it the deterministic sort
key used throughout the package.
"""

from __future__ import annotations

import re

from .errors import DomainError, ParseError, UsageError
from .field import FieldSpec

NEG_INF = float("-inf")


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not (0 <= c < field.q):
                raise DomainError(f"coefficient index {c} out of range for F_{field.q}")
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, (1,))

    @classmethod
    def T(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> "Polynomial":
        return cls(field, (c,))

    @classmethod
    def decode(cls, field: FieldSpec, code: int) -> "Polynomial":
        if code < 0:
            raise DomainError("encodings are nonnegative")
        cs = []
        while code:
            cs.append(code % field.q)
            code //= field.q
        return cls(field, cs)

    # -- basic properties ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> int:
        if self.is_zero:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def encode(self) -> int:
        code = 0
        for c in reversed(self.coeffs):
            code = code * self.field.q + c
        return code

    def norm(self) -> int:
        """|A| = q^deg(A), exact."""
        if self.is_zero:
            raise DomainError("zero polynomial has no norm")
        return self.field.q ** (len(self.coeffs) - 1)

    def monic_associate(self) -> "Polynomial":
        if self.is_zero or self.is_monic:
            return self
        inv = self.field.inv(self.coeffs[-1])
        return self.scale(inv)

    def scale(self, c: int) -> "Polynomial":
        f = self.field
        return Polynomial(f, (f.mul(c, x) for x in self.coeffs))

    # -- ring operations -------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise UsageError("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Polynomial(f, out)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, (f.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.field
        if self.is_zero or other.is_zero:
            return Polynomial.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ca in enumerate(self.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(other.coeffs):
                if cb:
                    out[i + j] = f.add(out[i + j], f.mul(ca, cb))
        return Polynomial(f, out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise DomainError("negative polynomial powers are undefined")
        acc = Polynomial.one(self.field)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        f = self.field
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        inv_lead = f.inv(d[-1])
        if len(r) - 1 < dd:
            return Polynomial.zero(f), self
        q = [0] * (len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if c == 0:
                continue
            factor = f.mul(c, inv_lead)
            q[i - dd] = factor
            for j in range(dd + 1):
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(factor, d[j]))
        return Polynomial(f, q), Polynomial(f, r)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __lt__(self, other: "Polynomial") -> bool:
        self._check(other)
        return self.encode() < other.encode()

    def __repr__(self) -> str:
        return f"Polynomial(F_{self.field.q}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if a.is_zero and b.is_zero:
        raise UsageError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic_associate()


def poly_pow_mod(base: Polynomial, exponent: int, modulus: Polynomial) -> Polynomial:
    acc = Polynomial.one(base.field)
    base = base % modulus
    while exponent:
        if exponent & 1:
            acc = (acc * base) % modulus
        base = (base * base) % modulus
        exponent >>= 1
    return acc


# -- text grammar ---------------------------------------------------------
#
# poly  := term ("+" term)*
# term  := [coef "*"] "T" ["^" int] | coef
# coef  := int | gatom | "(" gpoly ")"          (g only over extension fields)
# gpoly := gterm ("+" gterm)*
# gterm := [int "*"] "g" ["^" int] | int
#
# Whitespace is ignored.  Integers are base 10 in [0, p).  Repeated
# degrees are accumulated, so parse is total on the grammar.

_TOKEN = re.compile(r"\s*(\d+|[Tg^*+()])")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {text[pos:pos + 8]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, field: FieldSpec):
        self.toks = tokens
        self.i = 0
        self.field = field

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse_poly(self) -> Polynomial:
        acc = self.parse_term()
        while self.peek() == "+":
            self.take("+")
            acc = acc + self.parse_term()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return acc

    def parse_term(self) -> Polynomial:
        f = self.field
        coef = None
        if self.peek() != "T":
            coef = self.parse_coef()
            if self.peek() == "*":
                self.take("*")
                self.take("T")
            elif self.peek() == "T":
                raise ParseError("missing '*' between coefficient and T")
            else:
                return Polynomial.constant(f, coef)
        else:
            self.take("T")
        exp = 1
        if self.peek() == "^":
            self.take("^")
            exp = int(self.take())
        coeffs = [0] * exp + [1 if coef is None else coef]
        return Polynomial(f, coeffs)

    def parse_coef(self) -> int:
        f = self.field
        tok = self.peek()
        if tok == "(":
            self.take("(")
            value = self.parse_gpoly()
            self.take(")")
            return value
        if tok == "g":
            return self.parse_gterm()
        if tok is not None and tok.isdigit():
            # bare integer may still start a g-term like "2*g"
            save = self.i
            n = int(self.take())
            if self.peek() == "*" and self.i + 1 < len(self.toks) and self.toks[self.i + 1] == "g":
                self.i = save
                return self.parse_gterm()
            if n >= f.p:
                raise ParseError(f"coefficient {n} out of range [0, {f.p})")
            return n
        raise ParseError(f"expected coefficient, got {tok!r}")

    def parse_gpoly(self) -> int:
        acc = self.parse_gterm()
        while self.peek() == "+":
            self.take("+")
            acc = self.field.add(acc, self.parse_gterm())
        return acc

    def parse_gterm(self) -> int:
        f = self.field
        tok = self.peek()
        scalar = 1
        if tok is not None and tok.isdigit():
            scalar = int(self.take())
            if scalar >= f.p:
                raise ParseError(f"coefficient {scalar} out of range [0, {f.p})")
            if self.peek() != "*":
                return scalar
            self.take("*")
        if self.peek() != "g":
            raise ParseError("expected generator symbol g")
        if f.k == 1:
            raise ParseError("generator symbol g is invalid over a prime field")
        self.take("g")
        exp = 1
        if self.peek() == "^":
            self.take("^")
            exp = int(self.take())
        g = f.element_from_fp_coeffs([0, 1])
        power = 1
        for _ in range(exp):
            power = f.mul(power, g)
        return f.mul(scalar, power)


def parse_poly(text: str, field: FieldSpec) -> Polynomial:
    """Parse the ASCII polynomial grammar over the given field."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    return _Parser(tokens, field).parse_poly()


def _format_element(c: int, field: FieldSpec, *, as_factor: bool) -> str:
    if c < field.p:
        return str(c)
    parts = []
    for i in reversed(range(field.k)):
        d = field.fp_coeffs(c)[i]
        if d == 0:
            continue
        if i == 0:
            parts.append(str(d))
        else:
            gpow = "g" if i == 1 else f"g^{i}"
            parts.append(gpow if d == 1 else f"{d}*{gpow}")
    text = "+".join(parts)
    if as_factor or len(parts) > 1:
        return f"({text})"
    return text


def format_poly(p: Polynomial) -> str:
    """Canonical descending-degree rendering; inverse of parse_poly."""
    if p.is_zero:
        return "0"
    f = p.field
    terms = []
    for i in reversed(range(len(p.coeffs))):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(_format_element(c, f, as_factor=False))
        else:
            tpow = "T" if i == 1 else f"T^{i}"
            if c == 1:
                terms.append(tpow)
            else:
                terms.append(f"{_format_element(c, f, as_factor=True)}*{tpow}")
    return "+".join(terms)
