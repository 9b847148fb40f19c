"""Jointly optimal mobile-actuator guidance and LQR control of a 2D
diffusion-advection process."""

try:
    from ._mobipde import *  # noqa: F401,F403  (installed package layout)
    from ._mobipde import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on PYTHONPATH
    from _mobipde import *  # noqa: F401,F403
    from _mobipde import __version__  # noqa: F401
