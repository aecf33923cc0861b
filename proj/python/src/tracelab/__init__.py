"""Finite-lattice fermion laboratory: CAR algebra, tracial-state doubling,
gauge twists, and localization diagnostics."""

try:
    from ._tracelab import *  # noqa: F401,F403  (installed package layout)
    from . import _tracelab as _core
except ImportError:  # build-tree layout: extension module on sys.path
    from _tracelab import *  # noqa: F401,F403
    import _tracelab as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "1.0.0"
