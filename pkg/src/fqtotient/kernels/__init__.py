"""Hot kernels: bulk factor/phi/sigma tables over encoded polynomials.

The default backend compiles the scalar loops with numba; setting the
environment variable FQTOTIENT_BACKEND=numpy selects the pure-numpy
fallback (identical results, no compilation).  FQTOTIENT_BACKEND=numba
forces numba and fails loudly if it cannot be imported.

Tables are cached per (field, depth, backend) and frozen read-only, so
they can be shared freely across threads.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from ..errors import ResourceError
from ..field import FieldSpec
from .common import (
    DEFAULT_MAX_CELLS,
    FactorTables,
    ValueTables,
    check_budget,
    freeze,
)

ENV_BACKEND = "FQTOTIENT_BACKEND"
_BACKENDS = ("numba", "numpy")


def active_backend(override: str | None = None) -> str:
    """Resolve the kernel backend: override > env var > numba-if-available."""
    choice = override or os.environ.get(ENV_BACKEND, "").strip().lower()
    if choice and choice not in _BACKENDS:
        raise ResourceError(f"unknown backend {choice!r}; choose one of {_BACKENDS}")
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        _load_numba()
        return "numba"
    try:
        _load_numba()
        return "numba"
    except Exception:
        return "numpy"


def _load_numba():
    from . import numba_backend

    return numba_backend


def _impl(backend: str):
    if backend == "numba":
        return _load_numba()
    from . import numpy_backend

    return numpy_backend


@lru_cache(maxsize=6)
def _factor_tables_cached(field: FieldSpec, max_degree: int, backend: str, max_cells) -> FactorTables:
    cells = check_budget(field, max_degree, max_cells)
    spf = np.zeros(cells, dtype=np.int32)
    cof = np.zeros(cells, dtype=np.int32)
    impl = _impl(backend)
    impl.run_sieve(field.q, max_degree, field.add_table(), field.mul_table(), spf, cof)
    freeze(spf, cof)
    return FactorTables(q=field.q, max_degree=max_degree, spf=spf, cof=cof)


@lru_cache(maxsize=6)
def _value_tables_cached(field: FieldSpec, max_degree: int, backend: str, max_cells) -> ValueTables:
    base = _factor_tables_cached(field, max_degree, backend, max_cells)
    cells = base.spf.size
    phi = np.zeros(cells, dtype=np.int64)
    sigma = np.zeros(cells, dtype=np.int64)
    mu = np.zeros(cells, dtype=np.int8)
    impl = _impl(backend)
    impl.run_values(field.q, max_degree, base.spf, base.cof, phi, sigma, mu)
    freeze(phi, sigma, mu)
    return ValueTables(
        q=field.q,
        max_degree=max_degree,
        spf=base.spf,
        cof=base.cof,
        phi=phi,
        sigma=sigma,
        mu=mu,
    )


def build_factor_tables(
    field: FieldSpec,
    max_degree: int,
    *,
    max_cells: int | None = None,
    backend: str | None = None,
) -> FactorTables:
    return _factor_tables_cached(field, max_degree, active_backend(backend), max_cells)


def build_value_tables(
    field: FieldSpec,
    max_degree: int,
    *,
    max_cells: int | None = None,
    backend: str | None = None,
) -> ValueTables:
    return _value_tables_cached(field, max_degree, active_backend(backend), max_cells)


def clear_caches() -> None:
    _factor_tables_cached.cache_clear()
    _value_tables_cached.cache_clear()


__all__ = [
    "DEFAULT_MAX_CELLS",
    "ENV_BACKEND",
    "FactorTables",
    "ValueTables",
    "active_backend",
    "build_factor_tables",
    "build_value_tables",
    "clear_caches",
]
