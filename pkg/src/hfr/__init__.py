"""Signed Euler characteristics of real Heegaard Floer homology for braid closures."""

from hfr.braid_core import BraidWord, parse_braid
from hfr.conway_oracle import chi_oracle, conway, det_oracle
from hfr.euler import ChiReport, chi_by_spinc

__all__ = [
    "BraidWord",
    "ChiReport",
    "chi_by_spinc",
    "chi_oracle",
    "conway",
    "det_oracle",
    "parse_braid",
]

__version__ = "0.1.0"
