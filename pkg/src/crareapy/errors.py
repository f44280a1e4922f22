# src/crareapy/errors.py

"""
Exception hierarchy of crareapy.

Every error derives from ``ValueError`` through ``CRGeometryError``, so code
that only catches ``ValueError`` keeps working.
"""


class CRGeometryError(ValueError):
    """Base class for all geometric and numerical errors raised by the package."""


class ChartDomainError(CRGeometryError):
    """A point lies outside the chart domain of a model."""


class NotOnSurfaceError(CRGeometryError):
    """A point does not lie on the requested surface."""


class SingularPointError(CRGeometryError):
    """The tangent plane of the surface coincides with the contact plane."""


class InapplicableFormulaError(CRGeometryError):
    """A specialized formula was requested on a model that violates its hypotheses."""


class UndefinedResidualError(CRGeometryError):
    """The Euler-Lagrange residual is undefined at the point (H_cr vanishes)."""


class MostlySingularSurfaceError(CRGeometryError):
    """More than half of the quadrature nodes were excluded as near-singular."""


class HypothesisViolatedError(CRGeometryError):
    """The input violates the hypothesis of a root-finding or scan routine."""
