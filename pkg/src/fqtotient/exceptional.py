"""Exceptional parts of solutions over F_2 and F_3.

Every solution splits into telescoping families plus an exceptional
pair (F_0, G_0) whose primes live at degrees dividing d_q (6 for q=2,
2 for q=3).  Balancing the exact integer identity

  prod_{P|F_0}(q^deg P - 1) * prod_{P|G_0}(q^deg P - 1)
      * prod_i (q^{v_{i,0}} - 1)  =  prod_{P|G_0}(q^{(v_P+1) deg P} - 1)

over the bounded counters omega_d(F_0), omega_{d,i}(G_0) and the
family-head counts n^(d) yields finitely many profiles; realizing a
profile means exhibiting concrete distinct irreducibles for it.

The solver variables follow the surviving-factor reading: the counter
written omega_d(G) aggregates the G_0 primes of degree d with the
degree-d family heads, since family tails cancel in the telescoping.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .arith import phi, sigma
from .errors import DomainError, IntegrityError, ResourceError
from .families import FamilyInstance, FamilyVector
from .field import FieldSpec
from .irreducibles import Factorization, IrreducibleTable, build_table, count_irreducibles
from .poly import Polynomial


def ambiguity_degree(q: int) -> int:
    """d_q: the largest degree whose q^d - 1 factors carry no primitive prime."""
    if q == 2:
        return 6
    if q == 3:
        return 2
    raise DomainError(f"exceptional analysis is defined for q in {{2, 3}}, not {q}")


@dataclass(frozen=True)
class ExceptionalSpec:
    """Coordinate system for the q in {2, 3} constraint problems."""

    q: int
    d_q: int
    f0_degrees: tuple[int, ...]
    g0_pairs: tuple[tuple[int, int], ...]
    head_degrees: tuple[int, ...]

    @classmethod
    @lru_cache(maxsize=None)
    def for_q(cls, q: int) -> "ExceptionalSpec":
        d_q = ambiguity_degree(q)
        divisors = tuple(d for d in range(1, d_q + 1) if d_q % d == 0)
        pairs = tuple(
            (d, v)
            for d in divisors
            for v in range(1, d_q + 1)
            if (v + 1) * d <= d_q and d_q % ((v + 1) * d) == 0
        )
        return cls(q=q, d_q=d_q, f0_degrees=divisors, g0_pairs=pairs, head_degrees=divisors)

    def pi(self, d: int) -> int:
        return count_irreducibles(self.q, d)


@dataclass(frozen=True)
class OmegaProfile:
    """Counter profile: f over f0_degrees, g over g0_pairs, heads over head_degrees.

    Coordinates are stored as full tuples aligned with ExceptionalSpec.for_q(q),
    zeros included, so profiles sort and compare deterministically.
    """

    q: int
    f: tuple[int, ...]
    g: tuple[int, ...]
    heads: tuple[int, ...]

    @property
    def spec(self) -> ExceptionalSpec:
        return ExceptionalSpec.for_q(self.q)

    def f_count(self, d: int) -> int:
        sp = self.spec
        return self.f[sp.f0_degrees.index(d)] if d in sp.f0_degrees else 0

    def g_count(self, d: int, i: int) -> int:
        sp = self.spec
        return self.g[sp.g0_pairs.index((d, i))] if (d, i) in sp.g0_pairs else 0

    def head_count(self, d: int) -> int:
        sp = self.spec
        return self.heads[sp.head_degrees.index(d)] if d in sp.head_degrees else 0

    @property
    def n(self) -> int:
        return sum(self.heads)

    def head_multiset(self) -> tuple[int, ...]:
        sp = self.spec
        out: list[int] = []
        for d, c in zip(sp.head_degrees, self.heads):
            out.extend([d] * c)
        return tuple(sorted(out))

    def g_degree_load(self, d: int) -> int:
        """Distinct degree-d primes demanded on the G side (G_0 plus heads)."""
        sp = self.spec
        load = sum(c for (dd, _), c in zip(sp.g0_pairs, self.g) if dd == d)
        return load + self.head_count(d)

    def is_balanced(self) -> bool:
        """Exact integer check of the valuation-balance identity."""
        q = self.q
        sp = self.spec
        lhs = 1
        for d, c in zip(sp.f0_degrees, self.f):
            lhs *= (q**d - 1) ** c
        rhs = 1
        for (d, v), c in zip(sp.g0_pairs, self.g):
            lhs *= (q**d - 1) ** c
            rhs *= (q ** ((v + 1) * d) - 1) ** c
        for d, c in zip(sp.head_degrees, self.heads):
            lhs *= (q**d - 1) ** c
        return lhs == rhs

    def within_capacity(self) -> bool:
        sp = self.spec
        for d, c in zip(sp.f0_degrees, self.f):
            if c > sp.pi(d):
                return False
        for d in sp.head_degrees:
            if self.g_degree_load(d) > sp.pi(d):
                return False
        return True

    def sort_key(self):
        return (self.n, self.head_multiset(), self.f, self.g)

    def mapped_tuple(self) -> tuple[int, ...]:
        """The documented display coordinates.

        q=3: (omega_1(F_0), omega_1(G_0), omega_1(G), omega_2(F_0), omega_2(G))
        with omega_1(G) = omega_1(G_0) + n^(1) and omega_2(G) = n^(2).
        q=2: f and g coordinates followed by the head counts.
        """
        if self.q == 3:
            f1, f2 = self.f
            (g11,) = self.g
            n1, n2 = self.heads
            return (f1, g11, g11 + n1, f2, n2)
        return self.f + self.g + self.heads

    @classmethod
    def build(cls, q: int, f: dict[int, int], g: dict[tuple[int, int], int], heads: dict[int, int]) -> "OmegaProfile":
        sp = ExceptionalSpec.for_q(q)
        for d in f:
            if d not in sp.f0_degrees:
                raise DomainError(f"degree {d} cannot appear in F_0 for q={q}")
        for pair in g:
            if pair not in sp.g0_pairs:
                raise DomainError(f"prime power {pair} cannot appear in G_0 for q={q}")
        for d in heads:
            if d not in sp.head_degrees:
                raise DomainError(f"head degree {d} does not divide d_q for q={q}")
        return cls(
            q=q,
            f=tuple(f.get(d, 0) for d in sp.f0_degrees),
            g=tuple(g.get(pair, 0) for pair in sp.g0_pairs),
            heads=tuple(heads.get(d, 0) for d in sp.head_degrees),
        )


def _g_assignments(spec: ExceptionalSpec):
    """All G_0 counter vectors respecting per-degree distinctness caps."""
    degrees = sorted(set(d for d, _ in spec.g0_pairs))
    per_degree = {d: [i for (dd, i) in spec.g0_pairs if dd == d] for d in degrees}

    def rec(idx: int, acc: dict[tuple[int, int], int]):
        if idx == len(degrees):
            yield dict(acc)
            return
        d = degrees[idx]
        exps = per_degree[d]
        cap = spec.pi(d)

        def choose(j: int, used: int):
            if j == len(exps):
                yield from rec(idx + 1, acc)
                return
            for c in range(cap - used + 1):
                acc[(d, exps[j])] = c
                yield from choose(j + 1, used + c)
            acc.pop((d, exps[j]), None)

        yield from choose(0, 0)

    yield from rec(0, {})


def _f_assignments(spec: ExceptionalSpec):
    def rec(idx: int, acc: dict[int, int]):
        if idx == len(spec.f0_degrees):
            yield dict(acc)
            return
        d = spec.f0_degrees[idx]
        for c in range(spec.pi(d) + 1):
            acc[d] = c
            yield from rec(idx + 1, acc)
        acc.pop(d, None)

    yield from rec(0, {})


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def _balance_vectors(q: int):
    """Per-coordinate valuation vectors over the primes of q^{d_q} - 1.

    Every factor in the balance identity divides q^{d_q} - 1, so the
    identity holds iff these vectors cancel.
    """
    spec = ExceptionalSpec.for_q(q)
    top = q**spec.d_q - 1
    primes = []
    n = top
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    primes = tuple(sorted(primes))

    def vec(value: int) -> tuple[int, ...]:
        return tuple(_int_valuation(value, p) for p in primes)

    f_vec = {d: vec(q**d - 1) for d in spec.f0_degrees}
    head_vec = {d: vec(q**d - 1) for d in spec.head_degrees}
    g_rhs = {(d, v): vec(q ** ((v + 1) * d) - 1) for d, v in spec.g0_pairs}
    return primes, f_vec, head_vec, g_rhs


def _head_solutions(spec: ExceptionalSpec, deficit, caps, fixed):
    """Head count dicts whose balance vectors sum exactly to the deficit."""
    _, _, head_vec, _ = _balance_vectors(spec.q)
    if fixed is not None:
        total = [0] * len(deficit)
        for d in spec.head_degrees:
            c = fixed.get(d, 0)
            if c > caps[d]:
                return
            for i, x in enumerate(head_vec[d]):
                total[i] += c * x
        if tuple(total) == tuple(deficit):
            yield dict(fixed)
        return

    active = [d for d in spec.head_degrees if any(head_vec[d])]
    free = [d for d in spec.head_degrees if not any(head_vec[d])]

    def rec(idx: int, remaining, acc: dict[int, int]):
        if idx == len(active):
            if any(remaining):
                return
            base = dict(acc)
            # free heads contribute nothing to the balance; enumerate counts
            def spread(j: int):
                if j == len(free):
                    yield dict(base)
                    return
                d = free[j]
                for c in range(caps[d] + 1):
                    base[d] = c
                    yield from spread(j + 1)
                base.pop(d, None)

            yield from spread(0)
            return
        d = active[idx]
        v = head_vec[d]
        limit = caps[d]
        for i, x in enumerate(v):
            if x:
                limit = min(limit, remaining[i] // x)
        for c in range(limit + 1):
            acc[d] = c
            yield from rec(idx + 1, [r - c * x for r, x in zip(remaining, v)], acc)
        acc.pop(d, None)

    yield from rec(0, list(deficit), {})


def _enumerate_profiles(q: int, fixed_heads: dict[int, int] | None) -> list[OmegaProfile]:
    spec = ExceptionalSpec.for_q(q)
    primes, f_vec, head_vec, g_rhs = _balance_vectors(q)
    width = len(primes)
    out = []
    for g in _g_assignments(spec):
        target = [0] * width
        for (d, v), c in g.items():
            if not c:
                continue
            for i in range(width):
                target[i] += c * (g_rhs[(d, v)][i] - f_vec[d][i])
        g_load = {d: sum(c for (dd, _), c in g.items() if dd == d) for d in spec.head_degrees}
        caps = {d: spec.pi(d) - g_load.get(d, 0) for d in spec.head_degrees}
        if any(c < 0 for c in caps.values()):
            continue
        for f in _f_assignments(spec):
            deficit = list(target)
            ok = True
            for d, c in f.items():
                if not c:
                    continue
                for i in range(width):
                    deficit[i] -= c * f_vec[d][i]
                    if deficit[i] < 0:
                        ok = False
            if not ok or any(x < 0 for x in deficit):
                continue
            for heads in _head_solutions(spec, deficit, caps, fixed_heads):
                prof = OmegaProfile.build(q, f, g, heads)
                assert prof.is_balanced()
                out.append(prof)
    out.sort(key=OmegaProfile.sort_key)
    return out


def solve_profiles(q: int) -> list[OmegaProfile]:
    """All balanced, capacity-respecting profiles, deterministically sorted."""
    return _enumerate_profiles(q, None)


def profiles_for_heads(q: int, head_multiset: tuple[int, ...]) -> list[OmegaProfile]:
    """Balanced, capacity-valid profiles with exactly the given head degrees."""
    spec = ExceptionalSpec.for_q(q)
    fixed: dict[int, int] = {}
    for d in head_multiset:
        if d not in spec.head_degrees:
            raise DomainError(f"head degree {d} does not divide d_q for q={q}")
        fixed[d] = fixed.get(d, 0) + 1
    return _enumerate_profiles(q, fixed)


@dataclass(frozen=True)
class RealizedExceptional:
    profile: OmegaProfile
    f0: Factorization
    g0: Factorization
    families: tuple[FamilyInstance, ...]
    F: Polynomial
    G: Polynomial
    value: int

    @property
    def head_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(inst.vector.head_degree for inst in self.families))

    @property
    def n(self) -> int:
        return len(self.families)


_REALIZE_DEPTH = {2: 12, 3: 8}


@lru_cache(maxsize=4)
def _realize_table(q: int) -> IrreducibleTable:
    return build_table(FieldSpec.for_q(q), _REALIZE_DEPTH[q])


def realize(q: int, profile: OmegaProfile, table: IrreducibleTable | None = None) -> RealizedExceptional | None:
    """Concrete witness for a profile, or None when primes run out.

    Distinct irreducibles are drawn per degree, G side and F side
    independently (the two sides of the equation may share primes).
    Witness families use the minimal tail v = (d, k) with k escalated
    past F-side collisions.
    """
    spec = ExceptionalSpec.for_q(q)
    field = FieldSpec.for_q(q)
    table = table or _realize_table(q)

    g_pool = {d: list(table.irreducibles(d)) for d in spec.head_degrees}
    f_pool: dict[int, list[Polynomial]] = {}

    def f_take(d: int) -> Polynomial | None:
        if d > table.max_degree:
            raise ResourceError(
                f"realize needs irreducibles of degree {d}; table depth is {table.max_degree}"
            )
        pool = f_pool.setdefault(d, list(table.irreducibles(d)))
        return pool.pop(0) if pool else None

    g0_pairs: list[tuple[Polynomial, int]] = []
    for (d, v), count in zip(spec.g0_pairs, profile.g):
        for _ in range(count):
            if not g_pool[d]:
                return None
            g0_pairs.append((g_pool[d].pop(0), v))

    f0_primes: list[Polynomial] = []
    for d, count in zip(spec.f0_degrees, profile.f):
        for _ in range(count):
            p = f_take(d)
            if p is None:
                return None
            f0_primes.append(p)

    families: list[FamilyInstance] = []
    for d, count in sorted(zip(spec.head_degrees, profile.heads), reverse=True):
        for _ in range(count):
            if not g_pool[d]:
                return None
            head = g_pool[d].pop(0)
            inst = None
            k = 1
            while d * (k + 1) <= table.max_degree:
                partner = f_take(d * (k + 1))
                if partner is not None:
                    inst = FamilyInstance(
                        vector=FamilyVector((d, k)), primes=(head, partner)
                    )
                    break
                k += 1
            if inst is None:
                raise ResourceError(
                    f"could not place a family partner for head degree {d} within "
                    f"table depth {table.max_degree}"
                )
            families.append(inst)

    f0 = Factorization.from_prime_powers(field, [(p, 1) for p in f0_primes])
    g0 = Factorization.from_prime_powers(field, g0_pairs)
    f_all = [(p, 1) for p in f0_primes] + [(inst.F, 1) for inst in families]
    g_all = g0_pairs + [(inst.primes[0], inst.vector.tail[0]) for inst in families]
    F_fac = Factorization.from_prime_powers(field, f_all)
    G_fac = Factorization.from_prime_powers(field, g_all)
    lhs, rhs = phi(F_fac), sigma(G_fac)
    if lhs != rhs:
        raise IntegrityError(
            f"realized profile {profile} does not satisfy the identity: {lhs} != {rhs}"
        )
    return RealizedExceptional(
        profile=profile,
        f0=f0,
        g0=g0,
        families=tuple(families),
        F=F_fac.monic_value(),
        G=G_fac.monic_value(),
        value=lhs,
    )


@dataclass(frozen=True)
class CorollarySummary:
    q: int
    n_max: int
    excluded_patterns: tuple[tuple[int, ...], ...]
    achievable_patterns: tuple[tuple[int, ...], ...]
    probed_patterns: tuple[tuple[int, ...], ...]


def _contains(sub: tuple[int, ...], pattern: tuple[int, ...]) -> bool:
    rest = list(pattern)
    for x in sub:
        if x in rest:
            rest.remove(x)
        else:
            return False
    return True


def corollary_summary(q: int, *, all_patterns: bool = False) -> CorollarySummary:
    """Maximum family count and the head patterns that fail to realize.

    The default pattern domain mirrors the structural corollary: all
    multisets up to size 2, and longer ones only when they contain a
    degree-1 head (the construction that extends solutions appends a
    degree-1 family, whose balance contribution q - 1 is trivial over
    F_2).  With all_patterns=True every multiset is probed, which
    additionally reports exclusions like three degree-3 heads over F_2
    and achievable three-family patterns without a degree-1 head.
    """
    spec = ExceptionalSpec.for_q(q)
    probe_limit = 4 if q == 2 else 3

    probed: list[tuple[int, ...]] = []
    achieved: list[tuple[int, ...]] = []
    failed: list[tuple[int, ...]] = []
    for size in range(probe_limit + 1):
        for pattern in combinations_with_replacement(spec.head_degrees, size):
            pattern = tuple(sorted(pattern))
            if q == 2 and not all_patterns and size >= 3 and 1 not in pattern:
                continue
            probed.append(pattern)
            ok = False
            for prof in profiles_for_heads(q, pattern):
                witness = realize(q, prof)
                if witness is not None:
                    ok = True
                    break
            (achieved if ok else failed).append(pattern)

    n_max = max((len(p) for p in achieved), default=0)
    candidates = [p for p in failed if len(p) <= n_max]
    minimal = [
        p
        for p in candidates
        if not any(other != p and _contains(other, p) for other in candidates)
    ]
    return CorollarySummary(
        q=q,
        n_max=n_max,
        excluded_patterns=tuple(sorted(set(minimal))),
        achievable_patterns=tuple(sorted(set(achieved))),
        probed_patterns=tuple(sorted(set(probed))),
    )
