"""Hot-kernel dispatch.

The three combinatorial loops that dominate sweep time have two
implementations with identical contracts: numba @njit (default when numba
imports) and pure numpy. Set KODUAL_PURE=1 to force the pure path. The
selected backend name is exported as BACKEND.
"""

from __future__ import annotations

import os

if os.environ.get("KODUAL_PURE", "") not in ("", "0"):
    from . import _impl_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _impl_numba as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        from . import _impl_py as _impl

        BACKEND = "pure"

enumerate_upsets = _impl.enumerate_upsets
directed_subset_masks = _impl.directed_subset_masks
filter_lattice_candidates = _impl.filter_lattice_candidates

__all__ = [
    "BACKEND",
    "enumerate_upsets",
    "directed_subset_masks",
    "filter_lattice_candidates",
]
