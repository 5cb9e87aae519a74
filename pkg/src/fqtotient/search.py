"""Exhaustive search for phi(F) = sigma(G) and certificate machinery.

The search evaluates phi over every monic F and sigma over every monic
G up to the degree bounds using the kernel value tables, joins on equal
values through a sorted index, and emits pairs in canonical order.

decompose() turns a solution into a certificate by chain-peeling: each
prime P of F whose degree does not divide d_q must be matched by a
prime power Q^v of G with deg(P) = (v+1) deg(Q); if deg(Q) still does
not divide d_q the chain continues inside G, and the finished chain is
a telescoping family.  What remains is the exceptional part.
verify_certificate() re-derives everything from scratch.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import phi, sigma
from .errors import DomainError, IntegrityError, UsageError
from .exceptional import ambiguity_degree
from .families import FamilyInstance, FamilyVector, is_member
from .field import FieldSpec
from .irreducibles import (
    Factorization,
    IrreducibleTable,
    default_table,
    factor,
    is_irreducible,
)
from .kernels import build_value_tables
from .poly import Polynomial, format_poly, parse_poly


@dataclass(frozen=True)
class SolutionPair:
    field: FieldSpec
    F: Polynomial
    G: Polynomial
    value: int

    def sort_key(self):
        return (self.F.encode(), self.G.encode())


@lru_cache(maxsize=1 << 16)
def _factor_default(field: FieldSpec, poly: Polynomial) -> Factorization:
    """Trial-division factorization through the shared table cache.

    Memoized because bulk certification revisits the same F and G many
    times (the value join pairs each F with many G and vice versa).
    """
    depth = max(1, int(max(poly.degree, 2)) // 2)
    return factor(poly, default_table(field, depth))


def phi_side_admissible(field: FieldSpec, F: Polynomial, table: IrreducibleTable | None = None) -> bool:
    """Necessary condition on the phi side: F squarefree, and for q != 2
    an even number of prime divisors (mu(F) = 1 mod q forces both)."""
    if F.is_zero:
        return False
    if F.is_constant:
        return True
    table = table or default_table(field, max(1, int(F.degree) // 2))
    fac = factor(F, table)
    if not fac.is_squarefree():
        return False
    return field.q == 2 or fac.omega() % 2 == 0


def search(
    field: FieldSpec,
    max_deg_F: int,
    max_deg_G: int,
    *,
    max_cells: int | None = None,
    jobs: int | None = None,
    backend: str | None = None,
) -> list[SolutionPair]:
    """All monic pairs (F, G) within the degree bounds with phi(F) = sigma(G),
    sorted by (deg F, encoding F, deg G, encoding G)."""
    if max_deg_F < 0 or max_deg_G < 0:
        raise DomainError("degree bounds must be >= 0")
    q = field.q
    depth = max(max_deg_F, max_deg_G)
    tables = build_value_tables(field, depth, max_cells=max_cells, backend=backend)

    sig_vals = np.concatenate(
        [tables.sigma[q**d : 2 * q**d] for d in range(max_deg_G + 1)]
    )
    sig_encs = np.concatenate(
        [np.arange(q**d, 2 * q**d, dtype=np.int64) for d in range(max_deg_G + 1)]
    )
    order = np.argsort(sig_vals, kind="stable")  # stable keeps encodings ascending
    sv = sig_vals[order]
    se = sig_encs[order]

    def probe(d: int) -> list[tuple[int, int, int]]:
        lo = q**d
        pv = tables.phi[lo : 2 * lo]
        left = np.searchsorted(sv, pv, side="left")
        right = np.searchsorted(sv, pv, side="right")
        out = []
        for i in np.nonzero(right > left)[0]:
            ef = lo + int(i)
            val = int(pv[i])
            for j in range(int(left[i]), int(right[i])):
                out.append((ef, int(se[j]), val))
        return out

    degrees = list(range(max_deg_F + 1))
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_degree = list(pool.map(probe, degrees))
    else:
        per_degree = [probe(d) for d in degrees]

    out = []
    for rows in per_degree:
        for ef, eg, val in rows:
            out.append(
                SolutionPair(
                    field=field,
                    F=Polynomial.decode(field, ef),
                    G=Polynomial.decode(field, eg),
                    value=val,
                )
            )
    return out


# -- certificates ----------------------------------------------------------


@dataclass(frozen=True)
class SolutionCertificate:
    field: FieldSpec
    F: Polynomial
    G: Polynomial
    value: int
    f0: Factorization
    g0: Factorization
    families: tuple[FamilyInstance, ...]


def _chains(target_degree: int, available: dict[Polynomial, int], d_q: int):
    """Chains of G prime powers matching a degree, outermost first.

    Candidates are tried by descending (degree, encoding); a chain ends
    at the first prime whose degree divides d_q.
    """
    cands = sorted(available, key=lambda p: (-int(p.degree), -p.encode()))
    for Q in cands:
        v = available[Q]
        if (v + 1) * int(Q.degree) != target_degree:
            continue
        if d_q % int(Q.degree) == 0:
            yield [(Q, v)]
        else:
            sub = dict(available)
            del sub[Q]
            for rest in _chains(int(Q.degree), sub, d_q):
                yield [(Q, v)] + rest


def _assign_chains(targets, available: dict[Polynomial, int], d_q: int):
    if not targets:
        for Q, v in available.items():
            if d_q % ((v + 1) * int(Q.degree)) != 0:
                return None
        return []
    P = targets[0]
    for chain in _chains(int(P.degree), available, d_q):
        sub = dict(available)
        for Q, _ in chain:
            del sub[Q]
        rest = _assign_chains(targets[1:], sub, d_q)
        if rest is not None:
            return [(P, chain)] + rest
    return None


def decompose(
    field: FieldSpec,
    F: Polynomial,
    G: Polynomial,
    table: IrreducibleTable | None = None,
) -> SolutionCertificate:
    """Certificate for a solution pair.

    The canonical decomposition keeps every F-prime whose degree
    divides d_q inside the exceptional part; families are extracted
    only for the primes that force them, with deterministic
    backtracking over the matching chains in G.
    """
    if F.is_zero or G.is_zero:
        raise DomainError("solutions are nonzero monic polynomials")
    F = F.monic_associate()
    G = G.monic_associate()
    if table is not None:
        f_fac = factor(F, table)
        g_fac = factor(G, table)
    else:
        f_fac = _factor_default(field, F)
        g_fac = _factor_default(field, G)
    value_f = phi(f_fac)
    value_g = sigma(g_fac)
    if value_f != value_g:
        raise DomainError(f"phi(F) = {value_f} differs from sigma(G) = {value_g}")

    if field.q not in (2, 3):
        if F == Polynomial.one(field) and G == Polynomial.one(field):
            return SolutionCertificate(
                field=field,
                F=F,
                G=G,
                value=1,
                f0=Factorization.of_unit(field),
                g0=Factorization.of_unit(field),
                families=(),
            )
        raise IntegrityError(
            f"unexpected nontrivial solution over F_{field.q}: for q outside {{2, 3}} "
            "only F = G = 1 solves the equation"
        )

    if not f_fac.is_squarefree():
        raise IntegrityError(
            f"F = {F} is a solution but not squarefree; phi(F) = mu(F) mod q "
            "should rule this out"
        )
    d_q = ambiguity_degree(field.q)
    targets = sorted(
        (p for p, _ in f_fac.factors if d_q % int(p.degree) != 0),
        key=lambda p: (-int(p.degree), -p.encode()),
    )
    available = {p: e for p, e in g_fac.factors}
    assignment = _assign_chains(targets, available, d_q)
    if assignment is None:
        raise IntegrityError(
            f"no family decomposition exists for F={F}, G={G}; every solution "
            "should split into telescoping families plus an exceptional part"
        )

    used: set[Polynomial] = set()
    families = []
    for P, chain in assignment:
        ladder = list(reversed(chain))  # head first
        primes = tuple(Q for Q, _ in ladder) + (P,)
        vector = FamilyVector((int(ladder[0][0].degree),) + tuple(v for _, v in ladder))
        families.append(FamilyInstance(vector=vector, primes=primes))
        used.update(Q for Q, _ in chain)

    f0 = Factorization.from_prime_powers(
        field, [(p, e) for p, e in f_fac.factors if d_q % int(p.degree) == 0]
    )
    g0 = Factorization.from_prime_powers(
        field, [(p, e) for p, e in g_fac.factors if p not in used]
    )
    return SolutionCertificate(
        field=field,
        F=F,
        G=G,
        value=value_f,
        f0=f0,
        g0=g0,
        families=tuple(families),
    )


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: SolutionCertificate) -> VerificationReport:
    """Independent recheck of every certificate invariant.

    Re-factors F and G, recomputes phi and sigma, re-tests every listed
    prime for irreducibility without the sieve, and re-derives the
    exceptional balance identity.
    """
    failures: list[str] = []
    field = cert.field
    q = field.q

    def note(cond: bool, message: str):
        if not cond:
            failures.append(message)

    f_fac = _factor_default(field, cert.F)
    g_fac = _factor_default(field, cert.G)
    note(phi(f_fac) == cert.value, "recomputed phi(F) does not match the stated value")
    note(sigma(g_fac) == cert.value, "recomputed sigma(G) does not match the stated value")

    if q not in (2, 3):
        note(cert.F == Polynomial.one(field) and cert.G == Polynomial.one(field),
             f"only the trivial certificate exists over F_{q}")
        note(not cert.families and cert.f0.is_one and cert.g0.is_one,
             "trivial certificate must be empty")
        return VerificationReport(ok=not failures, failures=tuple(failures))

    d_q = ambiguity_degree(q)

    # multiplicative structure: parts rebuild F and G with disjoint primes
    f_parts = [(p, e) for p, e in cert.f0.factors]
    for inst in cert.families:
        f_parts.append((inst.F, 1))
    g_parts = [(p, e) for p, e in cert.g0.factors]
    for inst in cert.families:
        g_parts.extend(inst.G_factorization().factors)

    f_primes = [p for p, _ in f_parts]
    g_primes = [p for p, _ in g_parts]
    note(len(set(f_primes)) == len(f_primes), "F-side parts are not pairwise coprime")
    note(len(set(g_primes)) == len(g_primes), "G-side parts are not pairwise coprime")

    f_prod = Polynomial.one(field)
    for p, e in f_parts:
        f_prod = f_prod * p**e
    g_prod = Polynomial.one(field)
    for p, e in g_parts:
        g_prod = g_prod * p**e
    note(f_prod == cert.F, "certificate parts do not multiply back to F")
    note(g_prod == cert.G, "certificate parts do not multiply back to G")

    for p in set(f_primes) | set(g_primes):
        note(is_irreducible(p), f"listed factor {p} is not irreducible")

    for p, _ in cert.f0.factors:
        note(d_q % int(p.degree) == 0,
             f"F_0 prime {p} has degree {int(p.degree)} not dividing {d_q}")
    for p, e in cert.g0.factors:
        note(d_q % ((e + 1) * int(p.degree)) == 0,
             f"G_0 prime power ({p})^{e} violates (v+1)*deg | {d_q}")

    for inst in cert.families:
        v = inst.vector
        note(d_q % v.head_degree == 0,
             f"family head degree {v.head_degree} does not divide {d_q}")
        note(is_member(field, inst.F, inst.G_factorization(), v),
             f"family {v} membership fails for F_i={inst.F}")

    # exceptional balance: the telescoped identity on F_0, G_0 and the heads
    lhs = 1
    for p, _ in cert.f0.factors:
        lhs *= q ** int(p.degree) - 1
    for p, _ in cert.g0.factors:
        lhs *= q ** int(p.degree) - 1
    for inst in cert.families:
        lhs *= q ** inst.vector.head_degree - 1
    rhs = 1
    for p, e in cert.g0.factors:
        rhs *= q ** ((e + 1) * int(p.degree)) - 1
    note(lhs == rhs, "exceptional balance identity fails")

    return VerificationReport(ok=not failures, failures=tuple(failures))


# -- JSON wire format -------------------------------------------------------


def certificate_to_json(cert: SolutionCertificate) -> str:
    field = cert.field
    modulus = None
    if field.k > 1:
        modulus = format_poly(
            Polynomial(FieldSpec.for_q(field.p), field.modulus)
        )
    doc = {
        "q": field.q,
        "modulus": modulus,
        "F": format_poly(cert.F),
        "G": format_poly(cert.G),
        "value": str(cert.value),
        "F0": format_poly(cert.f0.monic_value()),
        "G0": format_poly(cert.g0.monic_value()),
        "families": [
            {
                "v": list(inst.vector.entries),
                "primes": [format_poly(p) for p in inst.primes],
            }
            for inst in cert.families
        ],
    }
    return json.dumps(doc, sort_keys=False)


def certificate_from_json(text: str) -> SolutionCertificate:
    doc = json.loads(text)
    q = int(doc["q"])
    field = FieldSpec.for_q(q)
    if doc.get("modulus") is not None:
        stated = parse_poly(doc["modulus"], FieldSpec.for_q(field.p))
        if tuple(stated.coeffs) != field.modulus:
            raise UsageError(f"certificate modulus {doc['modulus']} is not the built-in one")
    F = parse_poly(doc["F"], field)
    G = parse_poly(doc["G"], field)
    table = default_table(field, max(1, int(max(F.degree, G.degree, 2)) // 2))
    f0 = parse_poly(doc["F0"], field)
    g0 = parse_poly(doc["G0"], field)
    families = []
    for fam in doc["families"]:
        vec = FamilyVector(tuple(int(x) for x in fam["v"]))
        primes = tuple(parse_poly(s, field) for s in fam["primes"])
        families.append(FamilyInstance(vector=vec, primes=primes))
    return SolutionCertificate(
        field=field,
        F=F,
        G=G,
        value=int(doc["value"]),
        f0=factor(f0, table),
        g0=factor(g0, table),
        families=tuple(families),
    )
