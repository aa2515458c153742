"""Boundary matching at the two heterojunctions.

Continuity of ``psi`` and ``psi'/m`` at both junctions gives four complex
linear equations in ``(R, c1, c2, T)``, where ``c1, c2`` weight the two
interior basis solutions. The incident plane wave has unit amplitude and
enters as the inhomogeneous term.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .analytic import interior_basis
from .errors import PdemError, SingularSystem
from .models import Asymptotics, asymptotics

PIVOT_RATIO_LIMIT = 1e12


@dataclass(frozen=True)
class ScatteringSolution:
    """Amplitudes of one scattering state.

    ``c_interior_1/2`` are ``(P, Q)`` for the well, ``(P1, P2)`` for the
    barrier, and ``None`` when the solution came from the numerical oracle.
    ``incident`` names the side the unit-amplitude wave comes from.
    """

    R: complex
    T: complex
    c_interior_1: Optional[complex]
    c_interior_2: Optional[complex]
    asym: Asymptotics
    E: float
    incident: str = "left"


@dataclass(frozen=True)
class FluxCoefficients:
    Rc: float
    Tc: float
    T_sq: float


@dataclass(frozen=True)
class WaveSample:
    z: float
    psi: complex


def assemble_system(model, E: float, incident: str = "left", amplitude: complex = 1.0):
    """Matching matrix and right-hand side for unknowns ``(R, c1, c2, T)``.

    Returns ``(A, rhs, asym, basis)``.
    """
    asym = asymptotics(model, E)
    _, basis = interior_basis(model, E)
    a1, a2 = model.junctions
    k1, k2, m1, m2 = asym.k1, asym.k2, asym.m1, asym.m2
    s1 = [f(a1) for f in basis]
    s2 = [f(a2) for f in basis]
    ma1 = float(model.mass(a1))
    ma2 = float(model.mass(a2))

    A = np.zeros((4, 4), dtype=complex)
    rhs = np.zeros(4, dtype=complex)
    for j, s in enumerate(s1):
        A[0, 1 + j] = -s.psi
        A[1, 1 + j] = -s.dpsi_dz / ma1
    for j, s in enumerate(s2):
        A[2, 1 + j] = s.psi
        A[3, 1 + j] = s.dpsi_dz / ma2
    left_out = cmath.exp(-1j * k1 * a1)    # e^{-i k1 z} at a1
    right_out = cmath.exp(1j * k2 * a2)    # e^{+i k2 z} at a2
    if incident == "left":
        # psi_L = e^{ik1z} + R e^{-ik1z};  psi_R = T e^{ik2z}
        A[0, 0] = left_out
        A[1, 0] = -1j * k1 / m1 * left_out
        A[2, 3] = -right_out
        A[3, 3] = -1j * k2 / m2 * right_out
        inc = amplitude * cmath.exp(1j * k1 * a1)
        rhs[0] = -inc
        rhs[1] = -1j * k1 / m1 * inc
    elif incident == "right":
        # psi_R = e^{-ik2z} + R e^{ik2z};  psi_L = T e^{-ik1z}
        A[0, 3] = left_out
        A[1, 3] = -1j * k1 / m1 * left_out
        A[2, 0] = -right_out
        A[3, 0] = -1j * k2 / m2 * right_out
        inc = amplitude * cmath.exp(-1j * k2 * a2)
        rhs[2] = inc
        rhs[3] = -1j * k2 / m2 * inc
    else:
        raise ValueError(f"incident must be 'left' or 'right', got {incident!r}")
    return A, rhs, asym, basis


def solve_system(A: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Row-equilibrated LU solve with partial pivoting.

    Raises :class:`SingularSystem` when the ratio of largest to smallest
    pivot magnitude exceeds ``PIVOT_RATIO_LIMIT``.
    """
    scale = np.abs(A).max(axis=1)
    if np.any(scale == 0):
        raise SingularSystem("matching matrix has an all-zero row")
    As = A / scale[:, None]
    bs = rhs / scale
    lu, piv = lu_factor(As, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() == 0 or pivots.max() / pivots.min() > PIVOT_RATIO_LIMIT:
        raise SingularSystem(f"pivot ratio {pivots.max() / max(pivots.min(), 1e-300):.3e}")
    return lu_solve((lu, piv), bs)


def match(model, E: float, incident: str = "left") -> ScatteringSolution:
    """Solve the two-junction matching problem for a unit incident wave."""
    A, rhs, asym, _ = assemble_system(model, E, incident)
    R, c1, c2, T = (complex(v) for v in solve_system(A, rhs))
    return ScatteringSolution(R, T, c1, c2, asym, float(E), incident)


def coefficients(sol: ScatteringSolution) -> FluxCoefficients:
    """Reflection and flux-normalized transmission coefficients.

    The probability current ``Im(conj(psi) psi') / m`` of a plane wave is
    ``k/m`` times its squared amplitude, hence the ``k m`` ratio on ``T``.
    """
    a = sol.asym
    if sol.incident == "left":
        ratio = (a.k2 * a.m1) / (a.k1 * a.m2)
    else:
        ratio = (a.k1 * a.m2) / (a.k2 * a.m1)
    t_sq = abs(sol.T) ** 2
    return FluxCoefficients(abs(sol.R) ** 2, ratio * t_sq, t_sq)


def flux_residual(sol: ScatteringSolution) -> float:
    c = coefficients(sol)
    return abs(c.Rc + c.Tc - 1.0)


def wavefunction(model, sol: ScatteringSolution, z: float) -> complex:
    """Piecewise wavefunction of a matched left-incidence solution at ``z``."""
    if sol.c_interior_1 is None:
        raise ValueError("wavefunction needs interior coefficients (analytic solution)")
    a1, a2 = model.junctions
    k1, k2 = sol.asym.k1, sol.asym.k2
    if sol.incident == "left":
        if z < a1:
            return cmath.exp(1j * k1 * z) + sol.R * cmath.exp(-1j * k1 * z)
        if z > a2:
            return sol.T * cmath.exp(1j * k2 * z)
    else:
        if z < a1:
            return sol.T * cmath.exp(-1j * k1 * z)
        if z > a2:
            return cmath.exp(-1j * k2 * z) + sol.R * cmath.exp(1j * k2 * z)
    _, basis = interior_basis(model, sol.E)
    return sol.c_interior_1 * basis[0](z).psi + sol.c_interior_2 * basis[1](z).psi


def wavefunction_grid(model, sol: ScatteringSolution, z_min: float, z_max: float,
                      n: int) -> list[WaveSample]:
    if n < 2 or not z_min < z_max:
        raise ValueError("need n >= 2 and z_min < z_max")
    if sol.c_interior_1 is None:
        raise ValueError("wavefunction needs interior coefficients (analytic solution)")
    a1, a2 = model.junctions
    _, basis = interior_basis(model, sol.E)
    k1, k2 = sol.asym.k1, sol.asym.k2
    out = []
    for z in np.linspace(z_min, z_max, n):
        z = float(z)
        if a1 <= z <= a2:
            psi = sol.c_interior_1 * basis[0](z).psi + sol.c_interior_2 * basis[1](z).psi
        else:
            psi = wavefunction(model, sol, z)
        out.append(WaveSample(z, psi))
    return out


@dataclass(frozen=True)
class SweepPoint:
    """One energy of a sweep; ``coeffs`` is ``None`` when ``error`` is set."""

    E: float
    coeffs: Optional[FluxCoefficients]
    error: Optional[str] = None


def sweep(model, E_min: float, E_max: float, n: int, solver=None) -> list[SweepPoint]:
    """Coefficients on a uniform energy grid.

    ``solver(model, E) -> ScatteringSolution`` defaults to :func:`match`.
    Points whose solve fails are kept as gaps carrying the error message.
    """
    if n < 2 or not E_min < E_max:
        raise ValueError("need n >= 2 and E_min < E_max")
    solver = solver or match
    points = []
    for E in np.linspace(E_min, E_max, n):
        E = float(E)
        try:
            points.append(SweepPoint(E, coefficients(solver(model, E))))
        except PdemError as exc:
            points.append(SweepPoint(E, None, f"{type(exc).__name__}: {exc}"))
    return points
