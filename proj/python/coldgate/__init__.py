"""Cold-atom gate simulations and lattice quantum-computing primitives."""

from ._coldgate import *  # noqa: F401,F403
from ._coldgate import ConvergenceError, ValidationError, __doc__  # noqa: F401

__version__ = "0.1.0"
