"""Exact spectral analysis of polyhedral convex processes."""
from .cones import PolyhedralCone, Polyhedron, intersect, minkowski_sum, polar
from .control import LinearSystem, process_of_system, realize, stabilizable_weakly_unobservable
from .errors import DimensionError, FriendInfeasible, PreconditionError, SplitNotRational
from .linalg import RationalMatrix, Subspace
from .processes import ConvexProcess, LinearProcess, dual, inverse, power, reduce, restrict
from .spectrum import SpectrumQuery, is_eigenvalue_in, oracle_eigenpair_search, spectrum_scan
from .verifier import Conclusion, theorem_conclusions, verify_assumptions

__version__ = "0.1.0"

__all__ = [
    "PolyhedralCone",
    "Polyhedron",
    "intersect",
    "minkowski_sum",
    "polar",
    "LinearSystem",
    "process_of_system",
    "realize",
    "stabilizable_weakly_unobservable",
    "DimensionError",
    "FriendInfeasible",
    "PreconditionError",
    "SplitNotRational",
    "RationalMatrix",
    "Subspace",
    "ConvexProcess",
    "LinearProcess",
    "dual",
    "inverse",
    "power",
    "reduce",
    "restrict",
    "SpectrumQuery",
    "is_eigenvalue_in",
    "oracle_eigenpair_search",
    "spectrum_scan",
    "Conclusion",
    "theorem_conclusions",
    "verify_assumptions",
]
