"""moontrace: exact q-series arithmetic for moonshine-module trace functions.

Pure-Python and Fraction-exact throughout.  The package computes truncated
q-expansions of modular objects, runs the Virasoro trace recursion for
1-point functions, evaluates free-boson (Fock space) traces in closed and
brute-force form, and assembles lattice-equivariant trace identities.
"""
from .qseries import MarkerPoly, MarkerSeries, RationalSeries, TruncationError

__all__ = [
    "MarkerPoly",
    "MarkerSeries",
    "RationalSeries",
    "TruncationError",
]

__version__ = "0.1.0"
