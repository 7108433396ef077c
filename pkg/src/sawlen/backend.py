"""Kernel backend selection.

The compiled core (sawlen._corecy) is preferred when importable; the
pure-Python twin (sawlen._corepy) is always available.  Set
SAWLEN_BACKEND=py to force the fallback or SAWLEN_BACKEND=cy to insist on
the compiled core (raising if it is missing); anything else means auto.
"""

from __future__ import annotations

import os

from . import _corepy

_choice = os.environ.get("SAWLEN_BACKEND", "auto").lower()

if _choice == "py":
    core = _corepy
    BACKEND = "python"
elif _choice == "cy":
    from . import _corecy as core  # type: ignore[no-redef]
    BACKEND = "compiled"
else:
    try:
        from . import _corecy as core  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        core = _corepy
        BACKEND = "python"


def backend_name() -> str:
    return BACKEND
