"""Scattering states of a particle with position-dependent effective mass
in a double heterojunction: analytic solutions, an RK4 oracle and a CSV CLI."""

from .errors import PdemError
from .matcher import FluxCoefficients, ScatteringSolution, coefficients, match, sweep
from .models import BarrierModel, Profile, WellModel, asymptotics
from .oracle import OracleConfig, integrate

__all__ = [
    "BarrierModel", "FluxCoefficients", "OracleConfig", "PdemError", "Profile",
    "ScatteringSolution", "WellModel", "asymptotics", "coefficients", "integrate",
    "match", "sweep",
]
