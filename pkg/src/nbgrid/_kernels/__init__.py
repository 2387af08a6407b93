"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python module
is a drop-in replacement.  Set NBGRID_BACKEND=python or =native to force
a choice (forcing native raises if the extension is missing).
"""

from __future__ import annotations

import os

from . import _pyfallback

_forced = os.environ.get("NBGRID_BACKEND", "").strip().lower()

if _forced == "python":
    _impl = _pyfallback
elif _forced == "native":
    from . import _native as _impl  # type: ignore[no-redef]
elif _forced:  # an explicit but unrecognized choice must not be ignored
    raise ValueError(
        f"NBGRID_BACKEND={_forced!r} is not a backend; use 'python' or 'native'"
    )
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pyfallback

BACKEND = _impl.BACKEND_NAME

count_stable_placements = _impl.count_stable_placements
enumerate_stable_placements = _impl.enumerate_stable_placements
scan_configs = _impl.scan_configs
binned_candidates = _impl.binned_candidates

# rank helpers are pure bookkeeping; one implementation serves both backends
perm_rank = _pyfallback.perm_rank
perm_unrank = _pyfallback.perm_unrank
