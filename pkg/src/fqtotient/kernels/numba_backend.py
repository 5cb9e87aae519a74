"""numba @njit implementations of the encoded-polynomial kernels.

Scalar loops over integer encodings; the field is threaded through as
q x q addition/multiplication lookup tables.  Digit buffers are hoisted
outside the hot loops.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def sieve_kernel(q, max_degree, add_t, mul_t, spf, cof):
    qp = np.empty(max_degree + 2, dtype=np.int64)
    qp[0] = 1
    for i in range(1, max_degree + 2):
        qp[i] = qp[i - 1] * q

    adig = np.zeros(max_degree + 1, dtype=np.int64)
    bdig = np.zeros(max_degree + 1, dtype=np.int64)
    pdig = np.zeros(max_degree + 1, dtype=np.int64)

    for da in range(1, max_degree + 1):
        for a in range(qp[da], 2 * qp[da]):
            if spf[a] != 0:
                continue  # composite: not a sieve source
            t = a
            for i in range(da + 1):
                adig[i] = t % q
                t //= q
            for db in range(1, max_degree - da + 1):
                for b in range(qp[db], 2 * qp[db]):
                    t = b
                    for i in range(db + 1):
                        bdig[i] = t % q
                        t //= q
                    for i in range(da + db + 1):
                        pdig[i] = 0
                    for i in range(da + 1):
                        ca = adig[i]
                        if ca == 0:
                            continue
                        for j in range(db + 1):
                            cb = bdig[j]
                            if cb != 0:
                                pdig[i + j] = add_t[pdig[i + j], mul_t[ca, cb]]
                    e = np.int64(0)
                    for i in range(da + db, -1, -1):
                        e = e * q + pdig[i]
                    if spf[e] == 0:
                        spf[e] = a
                        cof[e] = b


@njit(cache=True)
def values_kernel(q, max_degree, spf, cof, phi, sigma, mu):
    qp = np.empty(max_degree + 2, dtype=np.int64)
    qp[0] = 1
    for i in range(1, max_degree + 2):
        qp[i] = qp[i - 1] * q

    phi[1] = 1
    sigma[1] = 1
    mu[1] = 1

    for d in range(1, max_degree + 1):
        nd = qp[d]
        for e in range(qp[d], 2 * qp[d]):
            p = np.int64(spf[e])
            if p == 0:
                phi[e] = nd - 1
                sigma[e] = nd + 1
                mu[e] = -1
                continue
            # strip the full power of p to find the coprime remainder
            val = 1
            mm = np.int64(cof[e])
            while mm != 1:
                sp = np.int64(spf[mm])
                if sp == 0:
                    if mm == p:
                        val += 1
                        mm = 1
                    break
                if sp != p:
                    break
                val += 1
                mm = np.int64(cof[mm])
            rest = mm
            dp = 0
            while qp[dp + 1] <= p:
                dp += 1
            ndp = qp[dp]
            php = ndp - 1
            sgp = ndp + 1
            npow = ndp
            for _ in range(val - 1):
                php *= ndp
                npow *= ndp
                sgp += npow
            phi[e] = php * phi[rest]
            sigma[e] = sgp * sigma[rest]
            mu[e] = 0 if val >= 2 else -mu[rest]


def run_sieve(q, max_degree, add_t, mul_t, spf, cof):
    sieve_kernel(np.int64(q), np.int64(max_degree), add_t, mul_t, spf, cof)


def run_values(q, max_degree, spf, cof, phi, sigma, mu):
    values_kernel(np.int64(q), np.int64(max_degree), spf, cof, phi, sigma, mu)
