"""
crareapy: numerical CR-invariant area functionals of surfaces in pseudohermitian
3-manifolds.

Subpackages:
    models        model manifolds (disk bundle, Heisenberg group, Rossi spheres, curve tori)
    surfaces      level sets and immersions with their adapted frame and invariants
    functionals   the densities dA1, dA2, their integrals and the conformal check
    variational   Euler-Lagrange residuals and first variations
    verify        registered lemma checks and parameter scans
    cli           the ``crareapy`` command
"""

from crareapy.errors import CRGeometryError

__version__ = "2026.10.18"

__all__ = ["CRGeometryError", "__version__"]
