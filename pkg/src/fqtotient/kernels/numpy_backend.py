"""Pure-numpy implementations of the encoded-polynomial kernels.

Vectorized over (source degree, cofactor degree) batches; products are
formed by table-driven convolution of base-q digit matrices.  Output is
bit-for-bit identical to the numba backend: within each batch the flat
(source-major, cofactor-minor) order makes np.unique's first occurrence
coincide with the numba write order.
"""

from __future__ import annotations

import numpy as np

# Cap on source x cofactor pairs materialized at once.
_BATCH_PAIRS = 1 << 18


def _digit_matrix(values: np.ndarray, q: int, width: int) -> np.ndarray:
    out = np.empty((values.size, width), dtype=np.int64)
    t = values.astype(np.int64, copy=True)
    for i in range(width):
        out[:, i] = t % q
        t //= q
    return out


def run_sieve(q, max_degree, add_t, mul_t, spf, cof):
    qp = np.array([q**i for i in range(max_degree + 2)], dtype=np.int64)
    for da in range(1, max_degree + 1):
        lo, hi = int(qp[da]), int(2 * qp[da])
        primes = (lo + np.nonzero(spf[lo:hi] == 0)[0]).astype(np.int64)
        if primes.size == 0:
            continue
        pdig_all = _digit_matrix(primes, q, da + 1)
        for db in range(1, max_degree - da + 1):
            blo, bhi = int(qp[db]), int(2 * qp[db])
            bs = np.arange(blo, bhi, dtype=np.int64)
            bdig = _digit_matrix(bs, q, db + 1)
            nb = bs.size
            step = max(1, _BATCH_PAIRS // nb)
            width = da + db + 1
            for s in range(0, primes.size, step):
                pa = pdig_all[s : s + step]
                na = pa.shape[0]
                conv = np.zeros((na, nb, width), dtype=np.int64)
                for i in range(da + 1):
                    # (na, db+1, nb) table of coefficient products
                    prod = mul_t[pa[:, i][:, None, None], bdig.T[None, :, :]]
                    for j in range(db + 1):
                        conv[:, :, i + j] = add_t[conv[:, :, i + j], prod[:, j, :]]
                enc = np.zeros((na, nb), dtype=np.int64)
                for k in range(width - 1, -1, -1):
                    enc = enc * q + conv[:, :, k]
                flat = enc.ravel()
                uniq, first = np.unique(flat, return_index=True)
                fresh = spf[uniq] == 0
                targets = uniq[fresh]
                picks = first[fresh]
                spf[targets] = primes[s + picks // nb]
                cof[targets] = bs[picks % nb]


def run_values(q, max_degree, spf, cof, phi, sigma, mu):
    qp = np.array([q**i for i in range(max_degree + 2)], dtype=np.int64)
    phi[1] = 1
    sigma[1] = 1
    mu[1] = 1
    for d in range(1, max_degree + 1):
        lo, hi = int(qp[d]), int(2 * qp[d])
        sl_spf = spf[lo:hi]
        prime_mask = sl_spf == 0
        nd = int(qp[d])
        phi[lo:hi][prime_mask] = nd - 1
        sigma[lo:hi][prime_mask] = nd + 1
        mu[lo:hi][prime_mask] = -1

        idx = (lo + np.nonzero(~prime_mask)[0]).astype(np.int64)
        if idx.size == 0:
            continue
        p = spf[idx].astype(np.int64)
        mm = cof[idx].astype(np.int64)
        val = np.ones(idx.size, dtype=np.int64)
        frozen = np.zeros(idx.size, dtype=bool)
        # peel at most d factors of p from the cofactor chain
        for _ in range(d):
            live = ~frozen & (mm != 1)
            if not live.any():
                break
            rows = np.nonzero(live)[0]
            cur = mm[rows]
            sp = spf[cur].astype(np.int64)
            is_prime = sp == 0
            matches = np.where(is_prime, cur == p[rows], sp == p[rows])
            hit = rows[matches]
            val[hit] += 1
            mm[hit] = np.where(is_prime[matches], 1, cof[cur[matches]].astype(np.int64))
            frozen[rows[~matches]] = True
        rest = mm
        dp = np.searchsorted(qp, p, side="right") - 1
        ndp = qp[dp]
        php = np.power(ndp, val - 1) * (ndp - 1)
        sgp = (np.power(ndp, val + 1) - 1) // (ndp - 1)
        phi[idx] = php * phi[rest]
        sigma[idx] = sgp * sigma[rest]
        mu[idx] = np.where(val >= 2, 0, -mu[rest]).astype(np.int8)
