"""Derivability-condition workbench: proof kernel, neighborhood countermodel
search, saturation simulator and arithmetic normal forms."""

try:
    from ._g2ws import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout: extension next to the package on sys.path
    from _g2ws import *  # noqa: F401,F403
