"""Shared kernel plumbing: encoded-table containers and budget guards.

Both backends compute the same arrays over the canonical integer
encoding e = sum coeffs[i] * q^i, for all e < q^(max_degree + 1):

  spf[e]  encoding of the smallest (by degree, then encoding) prime
          factor of e, for composite monic e of degree >= 1; 0 for
          monic irreducibles and for entries that are not monic.
  cof[e]  e / spf[e] for composite monic e; 0 elsewhere.
  phi[e]  unit-group order of F_q[T]/(e) for monic e; 0 elsewhere.
  sigma[e]  sum of norms of monic divisors of e, likewise.
  mu[e]   Moebius value in {-1, 0, 1} for monic e.

Backend parity is exact: every array is bit-for-bit identical between
the numba and numpy implementations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, ResourceError
from ..field import FieldSpec

# Cells are array entries (one per polynomial encoding).  The default
# admits the deepest supported table, F_2 to degree 24 (2^25 cells).
DEFAULT_MAX_CELLS = 1 << 25
HARD_MAX_CELLS = (1 << 31) - 1  # spf/cof are int32


def check_budget(field: FieldSpec, max_degree: int, max_cells: int | None) -> int:
    """Validate (q, max_degree) against the cell and overflow budgets.

    Returns the number of cells q^(max_degree + 1).
    """
    if max_degree < 0:
        raise DomainError("max_degree must be >= 0")
    limit = DEFAULT_MAX_CELLS if max_cells is None else min(max_cells, HARD_MAX_CELLS)
    cells = field.q ** (max_degree + 1)
    if cells > limit:
        raise ResourceError(
            f"table for q={field.q}, max_degree={max_degree} needs {cells} cells, "
            f"budget is {limit}"
        )
    # sigma(e) <= (2q)^deg(e); keep every table entry inside int64
    if (2 * field.q) ** max_degree >= 1 << 62:
        raise ResourceError(
            f"sigma values for q={field.q}, max_degree={max_degree} may overflow int64"
        )
    return cells


def q_powers(q: int, max_degree: int) -> np.ndarray:
    out = np.empty(max_degree + 2, dtype=np.int64)
    out[0] = 1
    for i in range(1, max_degree + 2):
        out[i] = out[i - 1] * q
    return out


@dataclass(frozen=True)
class FactorTables:
    """Smallest-prime-factor sieve over encoded monic polynomials."""

    q: int
    max_degree: int
    spf: np.ndarray
    cof: np.ndarray

    def monic_range(self, degree: int) -> tuple[int, int]:
        if not 0 <= degree <= self.max_degree:
            raise DomainError(f"degree {degree} outside table depth {self.max_degree}")
        lo = self.q**degree
        return lo, 2 * lo

    def irreducible_encodings(self, degree: int) -> np.ndarray:
        """Encodings of monic irreducibles of the given degree, ascending."""
        if degree < 1:
            return np.empty(0, dtype=np.int64)
        lo, hi = self.monic_range(degree)
        return (lo + np.nonzero(self.spf[lo:hi] == 0)[0]).astype(np.int64)


@dataclass(frozen=True)
class ValueTables:
    """phi/sigma/mu over encoded monic polynomials, plus the sieve."""

    q: int
    max_degree: int
    spf: np.ndarray
    cof: np.ndarray
    phi: np.ndarray
    sigma: np.ndarray
    mu: np.ndarray

    def monic_range(self, degree: int) -> tuple[int, int]:
        if not 0 <= degree <= self.max_degree:
            raise DomainError(f"degree {degree} outside table depth {self.max_degree}")
        lo = self.q**degree
        return lo, 2 * lo

    def irreducible_encodings(self, degree: int) -> np.ndarray:
        if degree < 1:
            return np.empty(0, dtype=np.int64)
        lo, hi = self.monic_range(degree)
        return (lo + np.nonzero(self.spf[lo:hi] == 0)[0]).astype(np.int64)


def freeze(*arrays: np.ndarray) -> None:
    for a in arrays:
        a.setflags(write=False)
