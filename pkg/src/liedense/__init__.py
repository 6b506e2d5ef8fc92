"""Exact-arithmetic certificates for overshear generation of Lie algebra modules.

Submodules:

* :mod:`liedense.roots` - root systems, weights and lattice predicates
* :mod:`liedense.chevalley` - Chevalley bases and structure constants
* :mod:`liedense.modules` - finite-dimensional representations
* :mod:`liedense.certify` - overshear seeds, closures and case identities
* :mod:`liedense.flows` - polynomial vector fields and their flows
"""

from .errors import LieDenseError
from .roots import RootSystem, RootSystemType, build
from .chevalley import LieAlgebra, chevalley_basis
from .modules import Representation
from .certify import Certificate

__version__ = "0.1.0"

__all__ = [
    "LieDenseError",
    "RootSystem",
    "RootSystemType",
    "build",
    "LieAlgebra",
    "chevalley_basis",
    "Representation",
    "Certificate",
]
