import json

import pytest

from fqtotient.arith import phi, sigma
from fqtotient.errors import DomainError, ResourceError
from fqtotient.families import FamilyInstance, FamilyVector
from fqtotient.field import FieldSpec
from fqtotient.irreducibles import build_table, factor
from fqtotient.poly import Polynomial, parse_poly
from fqtotient.search import (
    SolutionCertificate,
    certificate_from_json,
    certificate_to_json,
    phi_side_admissible,
    decompose,
    search,
    verify_certificate,
)


def brute_force_pairs(field, max_deg_f, max_deg_g):
    """Quadratic oracle: evaluate phi and sigma on every monic pair."""
    q = field.q
    table = build_table(field, max(1, max(max_deg_f, max_deg_g)))
    phis = []
    for d in range(max_deg_f + 1):
        for code in range(q**d, 2 * q**d):
            p = Polynomial.decode(field, code)
            phis.append((code, phi(factor(p, table))))
    sigmas = []
    for d in range(max_deg_g + 1):
        for code in range(q**d, 2 * q**d):
            p = Polynomial.decode(field, code)
            sigmas.append((code, sigma(factor(p, table))))
    out = []
    for fc, fv in phis:
        for gc, gv in sigmas:
            if fv == gv:
                out.append((fc, gc, fv))
    return out


class TestSearch:
    def test_tiny_f2(self, f2):
        sols = search(f2, 1, 0)
        assert {(str(s.F), str(s.G), s.value) for s in sols} == {
            ("1", "1", 1),
            ("T", "1", 1),
            ("T+1", "1", 1),
        }

    def test_trivial_only_f5(self, f5):
        sols = search(f5, 2, 2)
        assert [(str(s.F), str(s.G)) for s in sols] == [("1", "1")]

    def test_contains_first_family_f2(self, f2):
        got = {(str(s.F), str(s.G)) for s in search(f2, 2, 1)}
        assert {("T^2+T+1", "T"), ("T^2+T+1", "T+1")} <= got

    @pytest.mark.parametrize("q,bound", [(2, 4), (3, 3)])
    def test_matches_quadratic_brute_force(self, q, bound):
        field = FieldSpec.for_q(q)
        expected = brute_force_pairs(field, bound, bound)
        got = [(s.F.encode(), s.G.encode(), s.value) for s in search(field, bound, bound)]
        assert got == sorted(expected)

    def test_sorted_output(self, f2):
        sols = search(f2, 6, 6)
        keys = [(s.F.encode(), s.G.encode()) for s in sols]
        assert keys == sorted(keys)

    def test_jobs_do_not_change_output(self, f3):
        a = search(f3, 6, 6, jobs=1)
        b = search(f3, 6, 6, jobs=4)
        assert [(s.F, s.G) for s in a] == [(s.F, s.G) for s in b]

    def test_all_solutions_pass_phi_side_filter(self, f2, f3):
        for field, bound in ((f2, 7), (f3, 5)):
            for s in search(field, bound, bound):
                assert phi_side_admissible(field, s.F)

    def test_value_congruences(self, f3):
        for s in search(f3, 5, 5):
            assert s.value % 3 == 1  # sigma side forces 1 mod q

    def test_budget(self, f2):
        with pytest.raises(ResourceError):
            search(FieldSpec.for_q(9), 9, 9)


class TestPhiSideAdmissible:
    def test_examples(self, f2, f3):
        assert phi_side_admissible(f3, parse_poly("T^2+T", f3))
        assert not phi_side_admissible(f3, Polynomial.T(f3))
        assert not phi_side_admissible(f2, parse_poly("T^2", f2))
        assert phi_side_admissible(f2, Polynomial.one(f2))


class TestDecompose:
    def test_family_only_solution(self, f2):
        cert = decompose(f2, parse_poly("T^2+T+1", f2), Polynomial.T(f2))
        assert cert.value == 3
        assert verify_certificate(cert).ok

    def test_fully_exceptional_solution(self, f2):
        F = parse_poly("T^2+T+1", f2) * parse_poly("T^3+T+1", f2)
        G = parse_poly("T^3+T", f2)  # T (T+1)^2
        cert = decompose(f2, F, G)
        assert cert.value == 21
        assert not cert.families
        assert cert.f0.monic_value() == F and cert.g0.monic_value() == G
        assert verify_certificate(cert).ok

    def test_trivial_pair(self, f5):
        cert = decompose(f5, Polynomial.one(f5), Polynomial.one(f5))
        assert not cert.families and verify_certificate(cert).ok

    def test_non_solution_rejected(self, f2):
        with pytest.raises(DomainError):
            decompose(f2, Polynomial.T(f2), Polynomial.T(f2))

    def test_forced_family_extraction(self, f2, table2):
        # deg F = 4 does not divide 6, so a family must be peeled
        F = table2.irreducibles(4)[0]
        G = Polynomial.T(f2) ** 3
        assert phi(factor(F, table2)) == sigma(factor(G, table2)) == 15
        cert = decompose(f2, F, G)
        assert len(cert.families) == 1
        assert cert.families[0].vector.entries == (1, 3)
        assert verify_certificate(cert).ok

    def test_chained_family(self, f2, table2):
        # deg F = 12 peels through a squared degree-4 prime to a degree-2
        # head (12 = 3*4, 4 = 2*2); sigma(T) = 3 balances the head factor
        F = table2.irreducibles(12)[0]
        Q2 = table2.irreducibles(2)[0]
        Q4 = table2.irreducibles(4)[0]
        G = Polynomial.T(f2) * Q2 * Q4**2
        assert phi(factor(F, table2)) == sigma(factor(G, table2)) == 4095
        cert = decompose(f2, F, G)
        assert len(cert.families) == 1
        vec = cert.families[0].vector
        assert vec.entries == (2, 1, 2)
        assert vec.degree_ladder() == (2, 4, 12)
        assert [str(p) for p, _ in cert.g0.factors] == ["T"]
        assert verify_certificate(cert).ok

    def test_every_solution_certifies_midscale(self, f2, f3):
        for field, bound in ((f2, 8), (f3, 6)):
            for s in search(field, bound, bound):
                cert = decompose(field, s.F, s.G)
                report = verify_certificate(cert)
                assert report.ok, (str(s.F), str(s.G), report.failures)


class TestVerifier:
    def test_tampered_family_head_detected(self, f2, table2):
        F = table2.irreducibles(4)[0]
        G = Polynomial.T(f2) ** 3
        cert = decompose(f2, F, G)
        # claim the degree-3 prime of F belongs to a family it cannot head
        bad = SolutionCertificate(
            field=f2,
            F=cert.F,
            G=cert.G,
            value=cert.value,
            f0=cert.f0,
            g0=cert.g0,
            families=(
                FamilyInstance(
                    vector=FamilyVector((1, 1)),
                    primes=(Polynomial.T(f2), table2.irreducibles(2)[0]),
                ),
            ),
        )
        report = verify_certificate(bad)
        assert not report.ok
        assert any("multiply back" in f or "membership" in f for f in report.failures)

    def test_wrong_value_detected(self, f2):
        cert = decompose(f2, parse_poly("T^2+T+1", f2), Polynomial.T(f2))
        bad = SolutionCertificate(
            field=f2,
            F=cert.F,
            G=cert.G,
            value=5,
            f0=cert.f0,
            g0=cert.g0,
            families=cert.families,
        )
        report = verify_certificate(bad)
        assert not report.ok


class TestJson:
    def test_schema_keys(self, f2):
        cert = decompose(f2, parse_poly("T^2+T+1", f2), Polynomial.T(f2))
        doc = json.loads(certificate_to_json(cert))
        assert list(doc) == ["q", "modulus", "F", "G", "value", "F0", "G0", "families"]
        assert doc["q"] == 2 and doc["modulus"] is None
        assert doc["value"] == "3"
        for fam in doc["families"]:
            assert set(fam) == {"v", "primes"}

    def test_round_trip(self, f2, table2):
        F = table2.irreducibles(12)[0]
        Q2 = table2.irreducibles(2)[0]
        Q4 = table2.irreducibles(4)[0]
        G = Polynomial.T(f2) * Q2 * Q4**2
        cert = decompose(f2, F, G)
        again = certificate_from_json(certificate_to_json(cert))
        assert again.F == cert.F and again.G == cert.G and again.value == cert.value
        assert verify_certificate(again).ok

    def test_modulus_recorded_for_extension_fields(self, f4):
        cert = decompose(f4, Polynomial.one(f4), Polynomial.one(f4))
        doc = json.loads(certificate_to_json(cert))
        assert doc["modulus"] == "T^2+T+1"
        assert verify_certificate(certificate_from_json(certificate_to_json(cert))).ok
