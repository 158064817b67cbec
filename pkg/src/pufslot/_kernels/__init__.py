"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imports; set ``PUFSLOT_PURE_PYTHON=1``
to force the fallback. ``BACKEND`` names the active implementation.
"""

import os

from . import _pure

if os.environ.get("PUFSLOT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _pure

BACKEND = "pure" if _impl is _pure else "compiled"

lfsr_advance = _impl.lfsr_advance
lfsr_period = _impl.lfsr_period
signature_table = _impl.signature_table
window_std = _impl.window_std
count_duplicate_rows = _impl.count_duplicate_rows
tick_count = _impl.tick_count
tick_until = _impl.tick_until

__all__ = [
    "BACKEND",
    "lfsr_advance",
    "lfsr_period",
    "signature_table",
    "window_std",
    "count_duplicate_rows",
    "tick_count",
    "tick_until",
]
