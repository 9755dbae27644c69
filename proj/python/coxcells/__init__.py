"""Cells, asymptotic rings, and twisted centres of finite Coxeter groups.

The heavy lifting lives in the compiled extension; this package
re-exports its surface.  Start with a matrix and a session::

    import coxcells
    s = coxcells.Session(coxcells.CoxeterMatrix.of_type("A", 3))
    report = s.centre(cell=1, eps="id")
"""

from ._core import (
    Automorphism,
    CellInvariants,
    CellPartition,
    CentreReport,
    CoxeterMatrix,
    Group,
    JRing,
    KLTable,
    LaurentPoly,
    Session,
    VerdictError,
)

__all__ = [
    "Automorphism",
    "CellInvariants",
    "CellPartition",
    "CentreReport",
    "CoxeterMatrix",
    "Group",
    "JRing",
    "KLTable",
    "LaurentPoly",
    "Session",
    "VerdictError",
]

__version__ = "0.1.0"
