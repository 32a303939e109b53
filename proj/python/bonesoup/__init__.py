"""Controllable multi-objective model merging via backbone reward combinations."""

try:
    from ._bonesoup import *  # noqa: F401,F403
    from ._bonesoup import __version__  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout without the package dir
    from _bonesoup import *  # noqa: F401,F403
    from _bonesoup import __version__  # noqa: F401
