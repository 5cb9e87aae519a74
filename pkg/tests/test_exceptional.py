import pytest

from fqtotient.arith import phi, sigma
from fqtotient.errors import DomainError
from fqtotient.exceptional import (
    ExceptionalSpec,
    OmegaProfile,
    corollary_summary,
    profiles_for_heads,
    realize,
    solve_profiles,
)
from fqtotient.irreducibles import Factorization

# the fourteen q=3 coordinate tuples, in the documented mapping
# (omega_1(F0), omega_1(G0), omega_1(G), omega_2(F0), omega_2(G))
Q3_TUPLES = {
    (0, 0, 0, 0, 0), (2, 1, 1, 0, 0), (1, 1, 2, 0, 0), (0, 1, 3, 0, 0),
    (1, 2, 2, 1, 0), (1, 2, 2, 0, 1), (3, 2, 3, 0, 0), (0, 2, 3, 1, 0),
    (0, 2, 3, 0, 1), (0, 3, 3, 0, 2), (0, 3, 3, 1, 1), (0, 3, 3, 2, 0),
    (3, 3, 3, 0, 1), (3, 3, 3, 1, 0),
}

# structural rows (sorted F0 prime degrees, G0 linear count, n, head degrees)
Q3_ROWS = {
    ((), 0, 0, ()),
    ((1, 1), 1, 0, ()),
    ((1, 2), 2, 0, ()),
    ((2, 2), 3, 0, ()),
    ((1, 1, 1, 2), 3, 0, ()),
    ((1,), 1, 1, (1,)),
    ((2,), 2, 1, (1,)),
    ((1, 1, 1), 2, 1, (1,)),
    ((1,), 2, 1, (2,)),
    ((2,), 3, 1, (2,)),
    ((1, 1, 1), 3, 1, (2,)),
    ((), 1, 2, (1, 1)),
    ((), 2, 2, (1, 2)),
    ((), 3, 2, (2, 2)),
}


class TestSpecs:
    def test_allowed_shapes(self):
        s2 = ExceptionalSpec.for_q(2)
        assert s2.d_q == 6
        assert s2.f0_degrees == (1, 2, 3, 6)
        assert set(s2.g0_pairs) == {(1, 1), (1, 2), (1, 5), (2, 2), (3, 1)}
        s3 = ExceptionalSpec.for_q(3)
        assert s3.d_q == 2
        assert s3.g0_pairs == ((1, 1),)

    def test_unsupported_q(self):
        with pytest.raises(DomainError):
            ExceptionalSpec.for_q(5)


class TestSolveProfilesQ3:
    def test_exactly_fourteen(self):
        profs = solve_profiles(3)
        assert len(profs) == 14
        assert {p.mapped_tuple() for p in profs} == Q3_TUPLES

    def test_trivial_profile_present(self):
        assert any(p.n == 0 and p.mapped_tuple() == (0, 0, 0, 0, 0) for p in solve_profiles(3))

    def test_realizations_match_table(self):
        rows = set()
        for prof in solve_profiles(3):
            w = realize(3, prof)
            assert w is not None
            f0_degrees = tuple(sorted(int(p.degree) for p, _ in w.f0.factors))
            g0 = w.g0.factors
            assert all(int(p.degree) == 1 and e == 1 for p, e in g0)
            rows.add((f0_degrees, len(g0), w.n, w.head_degrees))
        assert rows == Q3_ROWS


class TestSolveProfilesQ2:
    def test_profile_count_stable(self):
        assert len(solve_profiles(2)) == 567

    def test_every_profile_is_balanced_and_capacity_valid(self):
        for p in solve_profiles(2):
            assert p.is_balanced() and p.within_capacity()

    def test_closing_example_present_and_realizes(self):
        # F0 = P2 * P6, G0 = Q1^5 Q2^2 Q3 with one family head of degree 6
        match = [
            p
            for p in solve_profiles(2)
            if p.f == (0, 1, 0, 1) and p.g == (0, 0, 1, 1, 1) and p.heads == (0, 0, 0, 1)
        ]
        assert len(match) == 1
        w = realize(2, match[0])
        assert w is not None
        assert tuple(sorted(int(p.degree) for p, _ in w.f0.factors)) == (2, 6)
        assert sorted((int(p.degree), e) for p, e in w.g0.factors) == [(1, 5), (2, 2), (3, 1)]
        assert w.head_degrees == (6,)

    def test_all_profiles_realize(self):
        for p in solve_profiles(2):
            assert realize(2, p) is not None

    def test_linear_padding_preserves_identity(self):
        # over F_2 a degree-1 prime contributes q - 1 = 1 to phi: padding F_0
        # with an unused linear prime must keep phi(F) = sigma(G)
        from fqtotient.field import FieldSpec
        from fqtotient.irreducibles import default_table

        field = FieldSpec.for_q(2)
        linears = default_table(field, 1).irreducibles(1)
        for prof in solve_profiles(2):
            w = realize(2, prof)
            f_primes = {p for p, _ in w.f0.factors} | {inst.F for inst in w.families}
            free = [p for p in linears if p not in f_primes]
            if not free:
                continue
            padded = Factorization.from_prime_powers(
                field, [(p, 1) for p in f_primes] + [(free[0], 1)]
            )
            g_all = list(w.g0.factors) + [
                (inst.primes[0], inst.vector.tail[0]) for inst in w.families
            ]
            assert phi(padded) == sigma(Factorization.from_prime_powers(field, g_all))


class TestQ2ExampleRows:
    # one canonical example per (n, head-pattern) case over F_2, given as
    # (F0 counters, G0 counters, head counters); all must enumerate and realize
    ROWS = [
        ({}, {}, {}),
        ({}, {}, {1: 1}),
        ({2: 1}, {(3, 1): 1}, {2: 1}),
        ({2: 1}, {(2, 2): 1}, {3: 1}),
        ({2: 1}, {(2, 2): 1, (3, 1): 1}, {6: 1}),
        ({}, {}, {1: 2}),
        ({2: 1}, {(3, 1): 1}, {1: 1, 2: 1}),
        ({2: 1}, {(2, 2): 1}, {1: 1, 3: 1}),
        ({2: 1}, {(2, 2): 1, (3, 1): 1}, {1: 1, 6: 1}),
        ({2: 1}, {(1, 2): 1, (3, 1): 1}, {2: 1, 3: 1}),
        ({2: 1}, {(1, 2): 1, (3, 1): 2}, {2: 1, 6: 1}),
        ({2: 1}, {(1, 2): 1, (2, 2): 1}, {3: 2}),
        ({2: 1}, {(1, 5): 1, (2, 2): 1}, {3: 1, 6: 1}),
        ({2: 1}, {(1, 5): 1, (2, 2): 1, (3, 1): 1}, {6: 2}),
    ]

    def test_rows_enumerate_and_realize(self):
        enumerated = set(solve_profiles(2))
        for f, g, heads in self.ROWS:
            prof = OmegaProfile.build(2, f, g, heads)
            assert prof.is_balanced(), (f, g, heads)
            assert prof in enumerated, (f, g, heads)
            witness = realize(2, prof)
            assert witness is not None
            expected_heads = tuple(sorted(d for d, c in heads.items() for _ in range(c)))
            assert witness.head_degrees == expected_heads


class TestRealizeAbsence:
    def test_two_quadratic_heads_impossible(self):
        prof = OmegaProfile.build(2, {}, {}, {2: 2})
        assert realize(2, prof) is None

    def test_three_linear_heads_impossible(self):
        prof = OmegaProfile.build(2, {}, {}, {1: 3})
        assert realize(2, prof) is None

    def test_profiles_for_heads_empty_for_excluded(self):
        assert profiles_for_heads(2, (2, 2)) == []
        assert profiles_for_heads(2, (1, 1, 1)) == []


class TestCorollary:
    def test_q3(self):
        cs = corollary_summary(3)
        assert cs.n_max == 2
        assert cs.excluded_patterns == ()
        # every head pattern up to size two occurs
        assert {(), (1,), (2,), (1, 1), (1, 2), (2, 2)} <= set(cs.achievable_patterns)

    def test_q2(self):
        cs = corollary_summary(2)
        assert cs.n_max == 3
        assert cs.excluded_patterns == ((1, 1, 1), (2, 2))
        for pattern in cs.achievable_patterns:
            if len(pattern) == 3:
                assert 1 in pattern

    def test_q2_all_patterns(self):
        cs = corollary_summary(2, all_patterns=True)
        assert cs.n_max == 3
        assert cs.excluded_patterns == ((1, 1, 1), (2, 2), (3, 3, 3))
        assert (3, 6, 6) in cs.achievable_patterns
