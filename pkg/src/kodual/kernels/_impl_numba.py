"""numba @njit twins of the hot kernels. Contracts match _impl_py exactly."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def enumerate_upsets(up: np.ndarray) -> np.ndarray:
    n = len(up)
    total = 1 << n
    out = np.empty(total, dtype=np.int64)
    k = 0
    for m in range(total):
        ok = True
        for i in range(n):
            if m >> i & 1:
                if up[i] & ~m != 0:
                    ok = False
                    break
        if ok:
            out[k] = m
            k += 1
    return out[:k].copy()


@njit(cache=True)
def directed_subset_masks(leq: np.ndarray) -> np.ndarray:
    f = leq.shape[0]
    if f == 0:
        return np.empty(0, dtype=np.int64)
    bound = np.zeros((f, f), dtype=np.int64)
    for i in range(f):
        for j in range(f):
            m = 0
            for k in range(f):
                if leq[i, k] and leq[j, k]:
                    m |= 1 << k
            bound[i, j] = m
    total = 1 << f
    out = np.empty(total - 1, dtype=np.int64)
    cnt = 0
    for s in range(1, total):
        ok = True
        for i in range(f):
            if not (s >> i & 1):
                continue
            for j in range(i, f):
                if not (s >> j & 1):
                    continue
                if bound[i, j] & s == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out[cnt] = s
            cnt += 1
    return out[:cnt].copy()


@njit(cache=True)
def filter_lattice_candidates(n: int, cands: np.ndarray) -> np.ndarray:
    out = np.zeros(len(cands), dtype=np.uint8)
    up = np.zeros(n, dtype=np.int64)
    dn = np.zeros(n, dtype=np.int64)
    for ci in range(len(cands)):
        c = cands[ci]
        for i in range(n):
            up[i] = 1 << i
        b = 0
        for i in range(n):
            for j in range(i + 1, n):
                if c >> b & 1:
                    up[i] |= 1 << j
                b += 1
        ok = True
        for i in range(n):
            if not ok:
                break
            m = up[i]
            for j in range(n):
                if m >> j & 1:
                    if up[j] & ~m != 0:
                        ok = False
                        break
        if not ok:
            continue
        for j in range(n):
            dn[j] = 0
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1:
                    dn[j] |= 1 << i
        for i in range(n):
            if not ok:
                break
            for j in range(i, n):
                ub = up[i] & up[j]
                lb = dn[i] & dn[j]
                if ub == 0 or lb == 0:
                    ok = False
                    break
                has_lub = False
                for m_ix in range(n):
                    if ub >> m_ix & 1 and ub & ~up[m_ix] == 0:
                        has_lub = True
                        break
                has_glb = False
                for m_ix in range(n):
                    if lb >> m_ix & 1 and lb & ~dn[m_ix] == 0:
                        has_glb = True
                        break
                if not (has_lub and has_glb):
                    ok = False
                    break
        if ok:
            out[ci] = 1
    return out
