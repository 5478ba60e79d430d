"""Numerical laboratory for hidden-register entanglement and gradient decay
in quantum neural network models.

Everything lives in the compiled extension; this package simply re-exports
it. See ``help(plateaulab._core)`` for the full surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401
from ._core import __version__  # noqa: F401
