"""Monomial-case resolution engine for purely inseparable hypersurfaces
in dimension three over a field of positive characteristic."""

from .field import GF, FieldElem
from .series import BiSeries, HomogPoly, AbovePrec
from .state import DivisorInfo, MonomialData, Hypersurface, MonomialState, validate
from .invariants import clean, report
from .driver import run, WorstCase, Exhaustive, Scripted
from .forge import JumpSpec, build_phi, analyze, verify_jump

__all__ = [
    "GF", "FieldElem", "BiSeries", "HomogPoly", "AbovePrec",
    "DivisorInfo", "MonomialData", "Hypersurface", "MonomialState", "validate",
    "clean", "report", "run", "WorstCase", "Exhaustive", "Scripted",
    "JumpSpec", "build_phi", "analyze", "verify_jump",
]
