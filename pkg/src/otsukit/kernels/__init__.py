"""Hot-loop kernels with a compiled fast path and a pure Python fallback.

At import time the package selects the Cython backend when its extension
module is importable and falls back to the pure Python implementation
otherwise. Set ``OTSUKIT_PURE=1`` in the environment to force the fallback
(useful for benchmarking and debugging). Both backends produce bit-identical
results; ``otsukit kernel-bench`` times them side by side.
"""

import os

from otsukit.kernels import pure


def load_native():
    """Return the compiled backend module, or None when unavailable."""
    try:
        from otsukit.kernels import _native
    except ImportError:
        return None
    return _native


if os.environ.get("OTSUKIT_PURE"):
    _impl = pure
else:
    _impl = load_native() or pure

BACKEND = _impl.BACKEND
histogram_u8 = _impl.histogram_u8
binarize_u8 = _impl.binarize_u8
luma_rec601 = _impl.luma_rec601
shuffle_u8 = _impl.shuffle_u8
bimodal_counts = _impl.bimodal_counts

__all__ = [
    "BACKEND",
    "bimodal_counts",
    "binarize_u8",
    "histogram_u8",
    "load_native",
    "luma_rec601",
    "pure",
    "shuffle_u8",
]
