"""Hot-loop kernels with backend selection at import.

The compiled Cython module is preferred; the pure-Python twin is the
fallback.  ``BACKEND`` records which one is active.  Set
MONOSPECTRA_FORCE_PYTHON_KERNEL=1 to force the fallback (used by the
benchmark and tests).
"""
from __future__ import annotations

import os

from . import _scan_py

if os.environ.get("MONOSPECTRA_FORCE_PYTHON_KERNEL") == "1":
    _impl = _scan_py
    BACKEND = "python"
else:
    try:
        from . import _scan_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _scan_py
        BACKEND = "python"

horner = _impl.horner
scan_sign_changes = _impl.scan_sign_changes
bisect_root = _impl.bisect_root

__all__ = ["BACKEND", "horner", "scan_sign_changes", "bisect_root"]
