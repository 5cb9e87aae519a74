from itertools import combinations_with_replacement
from math import gcd, prod

import pytest

from fqtotient.errors import DecompositionError, DomainError, ResourceError
from fqtotient.intfactor import factor_int, is_prime, valuation
from fqtotient.zsigmondy import (
    EXCEPTION_2_1_6,
    EXCEPTION_DEGENERATE,
    EXCEPTION_POW2,
    decompose_product,
    has_primitive_prime,
    peel_bound,
    primitive_part,
    primitive_prime_report,
    residual_multisets,
    smallest_primitive,
)


class TestIntFactor:
    def test_examples(self):
        assert factor_int(63) == {3: 2, 7: 1}
        assert factor_int(1) == {}
        assert factor_int(2047) == {23: 1, 89: 1}

    def test_historic_mersenne_split(self):
        # 2^67 - 1 = 193707721 * 761838257287
        assert factor_int(2**67 - 1) == {193707721: 1, 761838257287: 1}

    def test_large_prime(self):
        assert is_prime(2**89 - 1)
        assert factor_int(2**89 - 1) == {2**89 - 1: 1}

    def test_round_trip_random(self, rng):
        for _ in range(300):
            n = rng.randrange(1, 10**12)
            fac = factor_int(n)
            assert prod(p**e for p, e in fac.items()) == n
            assert all(is_prime(p) for p in fac)

    def test_primality_against_sympy(self, rng):
        sympy = pytest.importorskip("sympy")
        # adversarial cases: Carmichael numbers, strong pseudoprime bases,
        # Mersenne-adjacent values, then randoms up to 120 bits
        cases = [561, 1105, 1729, 2465, 2821, 6601, 8911, 3215031751,
                 3825123056546413051, 2**89 - 1, 2**101 - 1, 2**107 - 1]
        cases += [rng.randrange(3, 1 << 120) | 1 for _ in range(400)]
        for n in cases:
            assert is_prime(n) == sympy.isprime(n), n

    def test_range_guard(self):
        with pytest.raises(ResourceError):
            factor_int(1 << 128)

    def test_valuation(self):
        assert valuation(63, 3) == 2
        assert valuation(63, 2) == 0


class TestPrimitivePrimes:
    def test_exception_catalogue(self):
        assert primitive_prime_report(2, 1, 6).exception == EXCEPTION_2_1_6
        assert primitive_prime_report(3, 1, 2).exception == EXCEPTION_POW2
        assert primitive_prime_report(2, 1, 4).primitive_primes == (5,)
        assert primitive_prime_report(2, 1, 1).exception == EXCEPTION_DEGENERATE

    def test_smallest_primitive(self):
        assert smallest_primitive(2, 11) == 23
        assert smallest_primitive(2, 6) is None
        assert smallest_primitive(2, 1) is None
        assert smallest_primitive(3, 5) == 11  # 3^5-1 = 242 = 2 * 11^2

    def test_primitive_part_against_literal_definition(self):
        # literal route: factor every a^m - b^m and subtract earlier primes
        for a, b in ((2, 1), (3, 1), (3, 2), (5, 2), (6, 1)):
            seen: set[int] = set()
            for n in range(1, 11):
                term = a**n - b**n
                primes = set(factor_int(term)) if term > 1 else set()
                fresh = primes - seen
                report = primitive_prime_report(a, b, n)
                assert set(report.primitive_primes) == fresh, (a, b, n)
                seen |= primes

    def test_preconditions(self):
        with pytest.raises(DomainError):
            primitive_part(4, 2, 3)  # gcd != 1
        with pytest.raises(DomainError):
            primitive_part(2, 2, 3)
        with pytest.raises(ResourceError):
            primitive_part(2, 1, 200)


class TestDecomposeProduct:
    def test_known_decompositions(self):
        d = decompose_product(5, 24 * 124)
        assert d.forced.entries == (2, 3) and d.residual == 1
        d = decompose_product(2, 63)
        assert d.forced.entries == () and d.residual == 63
        d = decompose_product(10, 99)
        assert d.forced.entries == (2,) and d.residual == 1

    def test_trivial(self):
        d = decompose_product(7, 1)
        assert d.forced.entries == () and d.residual == 1

    def test_round_trip_generated(self, rng):
        for _ in range(200):
            a = rng.choice((2, 3, 5, 6, 7, 10))
            entries = [rng.randrange(1, 9) for _ in range(rng.randrange(0, 5))]
            N = prod(a**k - 1 for k in entries) if entries else 1
            if N == 0 or N >= 1 << 127:
                continue
            d = decompose_product(a, N)
            assert d.reconstruct() == N
            bound = peel_bound(a)
            expected = sorted(k for k in entries if bound is None or bound % k != 0)
            # entry 1 over a=2 contributes a factor 1 and is invisible
            if a == 2:
                expected = [k for k in expected if k != 1]
            assert list(d.forced.entries) == expected, (a, entries)

    def test_failure_names_cofactor(self):
        with pytest.raises(DecompositionError) as err:
            decompose_product(5, 7)
        assert err.value.stuck_cofactor is not None

    def test_failure_on_residual_with_foreign_prime(self):
        with pytest.raises(DecompositionError):
            decompose_product(2, 5 * 63 * 11)

    def test_residual_multisets(self):
        assert residual_multisets(2, 63) == [(2, 2, 3), (6,)]
        assert residual_multisets(3, 16) == [(1, 1, 1, 1), (1, 2)]
        assert residual_multisets(5, 1) == [()]
        assert residual_multisets(5, 24) == []
        for ms in residual_multisets(2, 3**4 * 7**2):
            assert prod(2**k - 1 for k in ms) == 3**4 * 7**2


class TestUniqueness:
    @pytest.mark.parametrize("a", (5, 6, 7))
    def test_distinct_multisets_distinct_products(self, a):
        products = {}
        for size in range(0, 5):
            for ms in combinations_with_replacement(range(1, 9), size):
                value = prod(a**k - 1 for k in ms)
                assert value not in products or products[value] == ms, (
                    a,
                    ms,
                    products[value],
                )
                products[value] = ms


class TestBruteClassification:
    def test_small_grid(self):
        # the acceptance suite runs the full a <= 30, n <= 24 grid
        for a in range(2, 16):
            for b in range(1, a):
                if gcd(a, b) != 1:
                    continue
                for n in range(1, 13):
                    expected_exception = (
                        (n == 1 and a - b == 1)
                        or (a, b, n) == (2, 1, 6)
                        or (n == 2 and (a + b) & (a + b - 1) == 0)
                    )
                    assert has_primitive_prime(a, b, n) == (not expected_exception), (a, b, n)
