"""Backend selection for the collide/stream kernel.

The compiled extension is used when it imports; setting the environment
variable ``LBM_BOUNCE_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _fallback

BACKEND = "python"
collide_stream = _fallback.collide_stream

if os.environ.get("LBM_BOUNCE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core
    except ImportError:  # extension not built
        pass
    else:
        collide_stream = _core.collide_stream
        BACKEND = "cython"

BACKENDS = {"python": _fallback.collide_stream}
try:
    from . import _core as _core_mod

    BACKENDS["cython"] = _core_mod.collide_stream
except ImportError:
    pass
