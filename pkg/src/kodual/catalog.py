"""Catalog of all finite lattices up to isomorphism, cached on disk.

Every finite lattice admits a linear extension, so enumerating the strict
orders contained in the natural order of 0..n-1 and filtering for
lattice-hood reaches every isomorphism class; duplicates are then removed
by explicit isomorphism search within invariant buckets.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from . import _bits
from .kernels import filter_lattice_candidates
from .order import FinLattice, FinPoset, GuardrailError, poset_isomorphic

CATALOG_GUARDRAIL = 7


def _cache_dir(cache_dir: str | None) -> str:
    if cache_dir is not None:
        return cache_dir
    env = os.environ.get("KODUAL_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "kodual")


def _poset_from_upmasks(n: int, up: list[int]) -> FinPoset:
    return FinPoset(tuple(f"e{i}" for i in range(n)), tuple(up))


def _enumerate(n: int) -> list[FinPoset]:
    if n == 0:
        return []
    npairs = n * (n - 1) // 2
    cands = np.arange(1 << npairs, dtype=np.int64)
    flags = filter_lattice_candidates(n, cands)
    pair_bits = [(i, j) for i in range(n) for j in range(i + 1, n)]
    reps: list[FinPoset] = []
    buckets: dict[tuple, list[FinPoset]] = {}
    for c in cands[flags == 1]:
        c = int(c)
        up = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(pair_bits):
            if c >> b & 1:
                up[i] |= 1 << j
        p = _poset_from_upmasks(n, up)
        profile = tuple(
            sorted((_bits.popcount(p.up[i]), _bits.popcount(p.dn[i])) for i in range(n))
        )
        bucket = buckets.setdefault(profile, [])
        if not any(poset_isomorphic(p, q) is not None for q in bucket):
            bucket.append(p)
            reps.append(p)
    return reps


def all_lattices(n: int, cache_dir: str | None = None) -> tuple[FinLattice, ...]:
    """All lattices with n elements, one per isomorphism class, elements
    named e0..e{n-1} along a linear extension. Results are cached on disk
    and written atomically so concurrent readers are safe."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    if n >= CATALOG_GUARDRAIL:
        raise GuardrailError(
            f"cataloguing lattices on {n} elements means filtering "
            f"2^{n * (n - 1) // 2} candidate orders; the guardrail stops at "
            f"{CATALOG_GUARDRAIL - 1}"
        )
    directory = _cache_dir(cache_dir)
    path = os.path.join(directory, f"lattices_{n}.json")
    if os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        return tuple(
            FinLattice(_poset_from_upmasks(n, up)) for up in data["up_masks"]
        )
    reps = _enumerate(n)
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump({"n": n, "up_masks": [list(p.up) for p in reps]}, fh)
    os.replace(tmp, path)
    return tuple(FinLattice(p) for p in reps)


def lattices_up_to(n: int, cache_dir: str | None = None) -> tuple[FinLattice, ...]:
    out: list[FinLattice] = []
    for k in range(1, n + 1):
        out.extend(all_lattices(k, cache_dir))
    return tuple(out)
