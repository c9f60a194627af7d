"""recipgas: symbolic and numeric verification engine for reciprocal
transformations of the two-dimensional stationary gas dynamics equations.

Subpackages:
    symkernel   exact rational expressions, parser, exact linear algebra
    gasdyn      the governing system, manifold reduction, conserved forms
    liealg      generators with form slots, commutators, automorphisms
    prolong     prolongation, determining equations, polynomial ansatz
    transforms  the transformation catalog, verification, pushforward
    numerics    grid solutions, path integration, FD re-verification
    accept      the acceptance suite (also `recipgas paper-suite`)
"""

from .gasdyn import default_context, standard_context
from .symkernel import Context, Expr, parse

__version__ = "0.1.0"

__all__ = ["Context", "Expr", "parse", "standard_context",
           "default_context", "__version__"]
