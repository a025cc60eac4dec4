"""Spectral Galerkin solver for a four-field heat-exchanger system."""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from . import _core as _impl
except ImportError:  # pragma: no cover - source-tree layout for dev builds
    import os
    import sys

    _ext_dir = os.environ.get("COAXHEAT_EXT_DIR")
    if _ext_dir and _ext_dir not in sys.path:
        sys.path.insert(0, _ext_dir)
    import _core as _impl
    from _core import *  # noqa: F401,F403

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
