"""Selects the elimination kernels at import time.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy implementation in ``_pykernels`` takes over.  Setting the
environment variable ``RINGSTORE_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("RINGSTORE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.NAME
rref = _impl.rref
rank = _impl.rank
window_ranks = _impl.window_ranks
