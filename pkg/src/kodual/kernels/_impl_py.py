"""Pure numpy implementations of the hot kernels.

Same contracts as _impl_numba; selected when KODUAL_PURE=1 or numba is
unavailable. Vectorized over the full candidate range, so memory is O(2^n)
per call, bounded by the guardrails upstream.
"""

from __future__ import annotations

import numpy as np


def enumerate_upsets(up: np.ndarray) -> np.ndarray:
    """All upset masks of the poset with up-set masks `up`, ascending.

    up[i] is the mask of elements >= i (including i). A mask m is an upset
    iff up[i] is contained in m for every i in m.
    """
    n = len(up)
    masks = np.arange(1 << n, dtype=np.int64)
    good = np.ones(1 << n, dtype=bool)
    for i in range(n):
        has_i = (masks >> i) & 1 == 1
        closed = (masks & up[i]) == up[i]
        good &= ~has_i | closed
    return masks[good]


def directed_subset_masks(leq: np.ndarray) -> np.ndarray:
    """Nonempty subset masks S of {0..f-1} directed under leq, ascending.

    leq[i, j] != 0 means i <= j. S is directed iff every pair in S has an
    upper bound in S. Codirected = directed under leq.T.
    """
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
    masks = np.arange(1, 1 << f, dtype=np.int64)
    good = np.ones(len(masks), dtype=bool)
    for i in range(f):
        in_i = (masks >> i) & 1 == 1
        for j in range(i, f):
            sel = in_i & ((masks >> j) & 1 == 1)
            good &= ~sel | ((masks & bound[i, j]) != 0)
    return masks[good]


def filter_lattice_candidates(n: int, cands: np.ndarray) -> np.ndarray:
    """Flag which candidate relations are transitive lattice orders.

    A candidate encodes a strict order contained in the natural order of
    0..n-1: bit p(i,j) set means i < j, where p enumerates pairs (0,1),
    (0,2), .., (0,n-1), (1,2), .. Flags are 1 when the reflexive closure is
    transitive and every pair of elements has a least upper bound and a
    greatest lower bound.
    """
    out = np.zeros(len(cands), dtype=np.uint8)
    pair_idx = {}
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            pair_idx[(i, j)] = p
            p += 1
    for ci in range(len(cands)):
        c = int(cands[ci])
        up = [1 << i for i in range(n)]
        for (i, j), b in pair_idx.items():
            if c >> b & 1:
                up[i] |= 1 << j
        ok = True
        for i in range(n):
            m = up[i]
            j = 0
            mm = m
            while mm and ok:
                if mm & 1 and up[j] & ~m:
                    ok = False
                mm >>= 1
                j += 1
            if not ok:
                break
        if not ok:
            continue
        dn = [0] * n
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
                has_glb = False
                mm = ub
                while mm:
                    low = mm & -mm
                    m_ix = low.bit_length() - 1
                    if ub & ~up[m_ix] == 0:
                        has_lub = True
                        break
                    mm ^= low
                mm = lb
                while mm:
                    low = mm & -mm
                    m_ix = low.bit_length() - 1
                    if lb & ~dn[m_ix] == 0:
                        has_glb = True
                        break
                    mm ^= low
                if not (has_lub and has_glb):
                    ok = False
                    break
        if ok:
            out[ci] = 1
    return out
