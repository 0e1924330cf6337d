"""Kernel backend selection.

The compiled extension is preferred when built; SUMPROD_BACKEND=pure or
SUMPROD_BACKEND=cython forces a choice (the latter raises if the
extension is missing).
"""

import os

_choice = os.environ.get("SUMPROD_BACKEND", "").strip().lower()

if _choice == "pure":
    from . import pure as _impl
elif _choice == "cython":
    from . import _fastbits as _impl  # type: ignore[attr-defined]
else:
    try:
        from . import _fastbits as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as _impl

BACKEND = _impl.NAME
sumset_bits = _impl.sumset_bits
membership_count_scaled = _impl.membership_count_scaled
best_subset_union = _impl.best_subset_union


def cyclic_shift(bits: int, s: int, n: int) -> int:
    """Cyclic left-shift of an n-bit mask by s (one-element sumset)."""
    return sumset_bits((s,), bits, n)
