import numpy as np
import pytest

from fqtotient.arith import phi, sigma
from fqtotient.errors import ResourceError
from fqtotient.field import FieldSpec
from fqtotient.irreducibles import build_table, factor, mobius
from fqtotient.kernels import (
    ENV_BACKEND,
    active_backend,
    build_factor_tables,
    build_value_tables,
)
from fqtotient.poly import Polynomial

PARITY_CASES = [(2, 10), (3, 7), (4, 5), (5, 5), (7, 4), (9, 4), (16, 3)]


@pytest.mark.parametrize("q,depth", PARITY_CASES)
def test_backend_parity_exact(q, depth):
    field = FieldSpec.for_q(q)
    nb = build_value_tables(field, depth, backend="numba")
    np_ = build_value_tables(field, depth, backend="numpy")
    for name in ("spf", "cof", "phi", "sigma", "mu"):
        assert np.array_equal(getattr(nb, name), getattr(np_, name)), (q, depth, name)


@pytest.mark.parametrize("q,depth", [(2, 8), (3, 5), (4, 4), (16, 2)])
def test_values_match_library_exhaustively(q, depth):
    field = FieldSpec.for_q(q)
    tables = build_value_tables(field, depth)
    lib_table = build_table(field, max(1, depth // 2 + 1))
    for d in range(depth + 1):
        for code in range(q**d, 2 * q**d):
            p = Polynomial.decode(field, code)
            fac = factor(p, lib_table)
            assert int(tables.phi[code]) == phi(fac)
            assert int(tables.sigma[code]) == sigma(fac)
            assert int(tables.mu[code]) == mobius(p, lib_table)


@pytest.mark.parametrize("q,depth", [(2, 9), (3, 6), (5, 4), (9, 3), (16, 3)])
def test_values_match_library(q, depth, rng):
    field = FieldSpec.for_q(q)
    tables = build_value_tables(field, depth)
    lib_table = build_table(field, max(1, depth // 2 + 1))
    codes = [rng.randrange(q**d, 2 * q**d) for d in range(depth + 1) for _ in range(40)]
    for code in codes:
        p = Polynomial.decode(field, code)
        fac = factor(p, lib_table)
        assert int(tables.phi[code]) == phi(fac)
        assert int(tables.sigma[code]) == sigma(fac)
        assert int(tables.mu[code]) == mobius(p, lib_table)


@pytest.mark.parametrize("q,depth", [(2, 9), (3, 6), (9, 3)])
def test_spf_is_smallest_prime_factor(q, depth, rng):
    field = FieldSpec.for_q(q)
    tables = build_factor_tables(field, depth)
    lib_table = build_table(field, max(1, depth // 2 + 1))
    for _ in range(200):
        d = rng.randrange(1, depth + 1)
        code = rng.randrange(q**d, 2 * q**d)
        p = Polynomial.decode(field, code)
        fac = factor(p, lib_table)
        spf = int(tables.spf[code])
        if len(fac.factors) == 1 and fac.factors[0][1] == 1:
            assert spf == 0  # irreducible
        else:
            smallest = min(prime.encode() for prime, _ in fac.factors)
            assert spf == smallest
            assert int(tables.cof[code]) == (p // Polynomial.decode(field, spf)).encode()


def test_irreducible_encodings_sorted(f2):
    tables = build_factor_tables(f2, 8)
    for d in range(1, 9):
        encs = tables.irreducible_encodings(d)
        assert np.all(np.diff(encs) > 0)


def test_tables_are_frozen(f2):
    tables = build_value_tables(f2, 6)
    for name in ("spf", "cof", "phi", "sigma", "mu"):
        assert not getattr(tables, name).flags.writeable


def test_budget_guard(f2):
    with pytest.raises(ResourceError):
        build_factor_tables(FieldSpec.for_q(9), 12)
    with pytest.raises(ResourceError):
        build_factor_tables(f2, 10, max_cells=100)


def test_budget_admits_deepest_f2_table(f2):
    # the F_2 table is specified up to degree 24: the overflow guard must
    # not reject it ((2q)^24 = 2^48 fits int64), and a moderately deep
    # build must agree with the counting formula
    from fqtotient.irreducibles import count_irreducibles
    from fqtotient.kernels.common import check_budget

    assert check_budget(f2, 24, None) == 1 << 25
    tables = build_factor_tables(f2, 18)
    assert len(tables.irreducible_encodings(18)) == count_irreducibles(2, 18)
    assert len(tables.irreducible_encodings(17)) == count_irreducibles(2, 17)


def test_env_var_selects_backend(monkeypatch):
    monkeypatch.setenv(ENV_BACKEND, "numpy")
    assert active_backend() == "numpy"
    monkeypatch.setenv(ENV_BACKEND, "numba")
    assert active_backend() == "numba"
    monkeypatch.delenv(ENV_BACKEND)
    assert active_backend() in ("numba", "numpy")
    monkeypatch.setenv(ENV_BACKEND, "cuda")
    with pytest.raises(ResourceError):
        active_backend()


def test_override_beats_env(monkeypatch):
    monkeypatch.setenv(ENV_BACKEND, "numba")
    assert active_backend("numpy") == "numpy"
