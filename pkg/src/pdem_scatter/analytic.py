"""Exact interior wavefunctions for the well and barrier models.

The point-canonical substitution ``psi = (2m)^{1/4} phi``,
``rho = int sqrt(2m) dz`` turns the BenDaniel-Duke equation

    d/dz [ psi' / (2m) ] + (E - V) psi = 0

into a constant-mass problem ``phi'' + (E - Vt(rho)) phi = 0`` with

    Vt = V + 7 m'^2 / (32 m^3) - m'' / (8 m^2).

For the well, ``Vt`` is a shifted sech^2 well and ``phi`` is built from Gauss
functions of ``-z^2``. For the barrier, ``Vt`` is Coulomb-like in ``rho``. In
``y = 2 i kappa sqrt(2 m0) e^{-alpha z}`` the equation becomes Whittaker's
equation with ``k = i lambda2`` and ``m = +-i lambda1``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, ImaginaryLambda1, NotScattering
from .models import BarrierModel, WellModel
from .specialfn import (
    DEFAULT_CONTROL,
    SeriesControl,
    gauss_2f1,
    gauss_2f1_dx,
    kummer_m,
    kummer_m_dy,
    whittaker_m,
    whittaker_m_dy,
)

_Z_SLACK = 1e-9


@dataclass(frozen=True)
class WellSolutionParams:
    """Well solution constants.

    ``lam`` solves ``lam (lam - 1) = mu^2 - 1/(4 beta^2)``, the sech^2 strength
    in the canonical coordinate ``rho``. The Gauss parameters live in
    ``t = rho / beta``, where that strength is multiplied by ``beta^2``, so
    they use ``nu`` with ``nu (nu - 1) = beta^2 lam (lam - 1)``, i.e.
    ``nu = 1/2 + beta mu``; ``a, b = (nu +- i kappa beta) / 2``.
    """

    lam: float
    kappa: float
    a: complex
    b: complex
    nu: float


@dataclass(frozen=True)
class BarrierSolutionParams:
    kappa: float
    lambda1: float
    lambda2: float
    a_plus: complex
    a_minus: complex
    b_plus: complex
    b_minus: complex


@dataclass(frozen=True)
class InteriorState:
    psi: complex
    dpsi_dz: complex


# ---------------------------------------------------------------------------
# point-canonical reduction
# ---------------------------------------------------------------------------

def transformed_potential(V: float, m: float, dm: float, d2m: float) -> float:
    """Constant-mass potential ``V + 7 m'^2/(32 m^3) - m''/(8 m^2)``."""
    return V + 7.0 * dm * dm / (32.0 * m**3) - d2m / (8.0 * m * m)


def mass_derivatives(model, z: float) -> tuple[float, float, float]:
    """``(m, m', m'')`` of the interior mass formula at ``z``."""
    if isinstance(model, WellModel):
        s = 1.0 + z * z
        b2 = model.beta**2
        return b2 / (2 * s), -b2 * z / s**2, -b2 * (1 - 3 * z * z) / s**3
    if isinstance(model, BarrierModel):
        al = model.alpha
        m = model.m0 * al * al * math.exp(-2 * al * z)
        return m, -2 * al * m, 4 * al * al * m
    raise TypeError(f"no analytic mass for {type(model).__name__}")


def effective_potential(model, z: float) -> float:
    """Transformed potential at interior point ``z``, from the generic formula."""
    m, dm, d2m = mass_derivatives(model, z)
    return transformed_potential(float(model.potential(z)), m, dm, d2m)


def canonical_coordinate(model, z: float) -> float:
    """``rho(z) = int sqrt(2 m) dz`` with the integration constant dropped."""
    if isinstance(model, WellModel):
        return model.beta * math.asinh(z)
    if isinstance(model, BarrierModel):
        return -math.sqrt(2 * model.m0) * math.exp(-model.alpha * z)
    raise TypeError(f"no canonical coordinate for {type(model).__name__}")


def well_reduced_potential(model: WellModel, rho: float) -> float:
    """Closed form ``1/(4b^2) - (mu^2 - 1/(4b^2)) sech^2(rho/b)``."""
    q = 1.0 / (4 * model.beta**2)
    return q - (model.mu**2 - q) / math.cosh(rho / model.beta) ** 2


def barrier_reduced_potential(model: BarrierModel, rho: float) -> float:
    """Closed form ``-2 V0 sqrt(2m0)/rho - (2 m0 V0 - 3/4)/rho^2``."""
    v0, m0 = model.V0, model.m0
    return -2 * v0 * math.sqrt(2 * m0) / rho - (2 * m0 * v0 - 0.75) / rho**2


# ---------------------------------------------------------------------------
# well
# ---------------------------------------------------------------------------

def well_params(model: WellModel, E: float) -> WellSolutionParams:
    q = 1.0 / (4 * model.beta**2)
    if not E > q:
        raise NotScattering(f"well needs E > 1/(4 beta^2) = {q}, got E={E}")
    lam = 0.5 + 0.5 * math.sqrt(1 + 4 * model.mu**2 - 1 / model.beta**2)
    nu = 0.5 + model.beta * model.mu
    kappa = math.sqrt(E - q)
    kb = kappa * model.beta
    return WellSolutionParams(lam, kappa, complex(0.5 * nu, 0.5 * kb),
                              complex(0.5 * nu, -0.5 * kb), nu)


def _check_inside(model, z):
    a1, a2 = model.junctions
    slack = _Z_SLACK * max(1.0, a2 - a1)
    if not (a1 - slack <= z <= a2 + slack):
        raise DomainError(f"z={z} outside the interior [{a1}, {a2}]")


def well_interior(model: WellModel, params: WellSolutionParams, P: complex,
                  Q: complex, z: float,
                  ctl: SeriesControl = DEFAULT_CONTROL) -> InteriorState:
    """Interior well solution ``P * even + Q * odd`` and its z-derivative."""
    _check_inside(model, z)
    a, b = params.a, params.b
    s = 1.0 + z * z
    x = -z * z
    # (beta^2/(2s))^{1/4} s^{nu/2} = (beta^2/2)^{1/4} s^{nu/2 - 1/4}
    expo = 0.5 * (a + b).real - 0.25
    pref = (model.beta**2 / 2) ** 0.25 * s**expo
    dpref = pref * expo * 2 * z / s
    bracket = 0j
    dbracket = 0j
    if P != 0:
        f = gauss_2f1(a, b, 0.5, x, ctl)
        df = gauss_2f1_dx(a, b, 0.5, x, ctl)
        bracket += P * f
        dbracket += P * df * (-2 * z)
    if Q != 0:
        g = gauss_2f1(a + 0.5, b + 0.5, 1.5, x, ctl)
        dg = gauss_2f1_dx(a + 0.5, b + 0.5, 1.5, x, ctl)
        bracket += 1j * Q * z * g
        dbracket += 1j * Q * (g + z * dg * (-2 * z))
    return InteriorState(pref * bracket, dpref * bracket + pref * dbracket)


def well_even_odd_split(model: WellModel, params: WellSolutionParams,
                        ctl: SeriesControl = DEFAULT_CONTROL
                        ) -> tuple[Callable[[float], InteriorState], Callable[[float], InteriorState]]:
    """Even ``(P=1, Q=0)`` and odd ``(P=0, Q=1)`` interior basis evaluators."""

    def even(z):
        return well_interior(model, params, 1.0, 0.0, z, ctl)

    def odd(z):
        return well_interior(model, params, 0.0, 1.0, z, ctl)

    return even, odd


# ---------------------------------------------------------------------------
# barrier
# ---------------------------------------------------------------------------

def barrier_params(model: BarrierModel, E: float) -> BarrierSolutionParams:
    if not E > 0:
        raise NotScattering(f"barrier needs E > 0, got E={E}")
    g = 2 * model.m0 * model.V0
    if not g > 1:
        raise ImaginaryLambda1(f"2 m0 V0 = {g} <= 1; use the numerical oracle")
    kappa = math.sqrt(E)
    l1 = math.sqrt(g - 1)
    l2 = model.V0 * math.sqrt(2 * model.m0) / kappa
    return BarrierSolutionParams(
        kappa, l1, l2,
        a_plus=complex(0.5, l1 - l2), a_minus=complex(0.5, -l1 - l2),
        b_plus=complex(1, 2 * l1), b_minus=complex(1, -2 * l1),
    )


def barrier_coords(model: BarrierModel, kappa: float, z: float) -> tuple[float, complex]:
    """``(rho, y)`` with ``rho = -sqrt(2 m0) e^{-alpha z}`` and ``y = -2 i kappa rho``."""
    rho = canonical_coordinate(model, z)
    return rho, complex(0.0, -2 * kappa * rho)


def barrier_interior(model: BarrierModel, params: BarrierSolutionParams,
                     P1: complex, P2: complex, z: float,
                     ctl: SeriesControl = DEFAULT_CONTROL,
                     form: str = "whittaker") -> InteriorState:
    """Interior barrier solution and its z-derivative.

    ``form="whittaker"`` (default) uses the basis ``(2m)^{1/4} M_{i l2, +-i l1}(y)``.
    ``form="literal"`` evaluates ``(2m0)^{1/4} sqrt(alpha) e^{-alpha z/2}
    {P1 e^{y/2} y^{i l1} M(a+, b+; y) + P2 e^{-y/2} y^{-i l1} M(a-, b-; y)}``
    term by term. That literal combination does not satisfy the
    wave equation (see the test suite) and is kept only for comparison.
    """
    _check_inside(model, z)
    al = model.alpha
    _, y = barrier_coords(model, params.kappa, z)
    dy = -al * y
    pref = (2 * model.m0) ** 0.25 * math.sqrt(al) * math.exp(-0.5 * al * z)
    dpref = -0.5 * al * pref
    l1, l2 = params.lambda1, params.lambda2
    phi = 0j
    dphi = 0j
    if form == "whittaker":
        for coef, mw in ((P1, 1j * l1), (P2, -1j * l1)):
            if coef != 0:
                phi += coef * whittaker_m(1j * l2, mw, y, ctl)
                dphi += coef * whittaker_m_dy(1j * l2, mw, y, ctl)
    elif form == "literal":
        logy = cmath.log(y)
        for coef, sgn, a, b in ((P1, 1, params.a_plus, params.b_plus),
                                (P2, -1, params.a_minus, params.b_minus)):
            if coef != 0:
                e = cmath.exp(sgn * (0.5 * y + 1j * l1 * logy))
                m = kummer_m(a, b, y, ctl)
                dm = kummer_m_dy(a, b, y, ctl)
                phi += coef * e * m
                dphi += coef * e * (sgn * (0.5 + 1j * l1 / y) * m + dm)
    else:
        raise ValueError(f"unknown form {form!r}")
    return InteriorState(pref * phi, dpref * phi + pref * dphi * dy)


def interior_basis(model, E: float, ctl: SeriesControl = DEFAULT_CONTROL):
    """Solution parameters and the two interior basis evaluators for ``model``."""
    if isinstance(model, WellModel):
        params = well_params(model, E)
        return params, well_even_odd_split(model, params, ctl)
    if isinstance(model, BarrierModel):
        params = barrier_params(model, E)

        def plus(z):
            return barrier_interior(model, params, 1.0, 0.0, z, ctl)

        def minus(z):
            return barrier_interior(model, params, 0.0, 1.0, z, ctl)

        return params, (plus, minus)
    raise TypeError(f"no analytic solution for {type(model).__name__}")
