"""Entire (caloric) solutions of the heat equation dF/dt = d^2F/dz^2.

Submodules:

* ``caloric_poly``: exact caloric polynomials, Hermite bridge, zero spectra
* ``entire_series``: Taylor coefficient series, shifts, canonical products
* ``order_type``: order/type estimation and local theta quantities
* ``heat_propagate``: heat-flow solutions from series, quadrature, closed forms
* ``zero_dynamics``: zero trajectories, ODE flows and collision scans
* ``debruijn``: the de Bruijn function H(t, z) and its zeros
"""

from . import caloric_poly, debruijn, entire_series, heat_propagate, order_type, zero_dynamics
from .errors import (
    CaloricError,
    ConvergenceError,
    NoDerivativeError,
    PairingError,
    RamificationError,
    SingularTimeError,
    TruncationError,
    WrongSheetError,
)

__version__ = "0.1.0"

__all__ = [
    "caloric_poly",
    "debruijn",
    "entire_series",
    "heat_propagate",
    "order_type",
    "zero_dynamics",
    "CaloricError",
    "ConvergenceError",
    "NoDerivativeError",
    "PairingError",
    "RamificationError",
    "SingularTimeError",
    "TruncationError",
    "WrongSheetError",
]
