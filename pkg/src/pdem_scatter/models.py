"""Heterostructure profiles: effective mass m(z) and potential V(z).

All quantities are dimensionless (hbar = 1). Each model is constant outside
its two junctions and continuous across them, so evaluating the interior
formula at ``clip(z, a1, a2)`` gives the whole profile.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import EvanescentChannel


def _clip(z, lo, hi):
    if np.ndim(z) == 0:
        return min(max(float(z), lo), hi)
    return np.clip(np.asarray(z, dtype=float), lo, hi)


@dataclass(frozen=True)
class WellModel:
    """Diffused well ``V = -mu^2/(1+z^2)`` with mass ``beta^2/(2(1+z^2))``.

    Junctions sit at ``-a0`` and ``+a0``.
    """

    beta: float
    mu: float
    a0: float

    def __post_init__(self):
        if not (self.beta > 0 and self.mu > 0 and self.a0 > 0):
            raise ValueError("WellModel needs beta, mu, a0 > 0")
        if not 1 + 4 * self.mu**2 - 1 / self.beta**2 > 0:
            raise ValueError("1 + 4 mu^2 - 1/beta^2 must be positive")
        if not 4 * self.beta**2 * self.mu**2 > 1:
            raise ValueError("need |mu| > 1/(2 beta)")

    @property
    def junctions(self) -> tuple[float, float]:
        return (-self.a0, self.a0)

    def mass(self, z):
        return well_mass(self, z)

    def potential(self, z):
        return well_potential(self, z)


@dataclass(frozen=True)
class BarrierModel:
    """Inverted Morse barrier ``V0 e^{az}(2 - e^{az})`` with mass ``m0 a^2 e^{-2az}``.

    ``a`` is the decay constant ``alpha``; junctions at ``a1 < a2``. The
    analytic solution additionally needs ``2 m0 V0 > 1``; that condition is
    checked where the solution is built, so the numerical oracle can still
    treat other barriers.
    """

    m0: float
    V0: float
    alpha: float
    a1: float
    a2: float

    def __post_init__(self):
        if not (self.m0 > 0 and self.V0 > 0 and self.alpha > 0):
            raise ValueError("BarrierModel needs m0, V0, alpha > 0")
        if not self.a1 < self.a2:
            raise ValueError("BarrierModel needs a1 < a2")

    @property
    def junctions(self) -> tuple[float, float]:
        return (self.a1, self.a2)

    def mass(self, z):
        return barrier_mass(self, z)

    def potential(self, z):
        return barrier_potential(self, z)


@dataclass(frozen=True)
class Profile:
    """Arbitrary continuous profile given by callables, for the oracle.

    ``mass`` and ``potential`` are evaluated on ``[a1, a2]``. The asymptotic
    levels default to the junction values; they may be set explicitly for
    step-edged test profiles such as a square well.
    """

    mass_fn: Callable
    potential_fn: Callable
    a1: float
    a2: float
    m_left: Optional[float] = None
    m_right: Optional[float] = None
    V_left: Optional[float] = None
    V_right: Optional[float] = None

    @property
    def junctions(self) -> tuple[float, float]:
        return (self.a1, self.a2)

    def mass(self, z):
        return self.mass_fn(z)

    def potential(self, z):
        return self.potential_fn(z)

    def outside(self) -> tuple[float, float, float, float]:
        m1 = self.m_left if self.m_left is not None else float(self.mass_fn(self.a1))
        m2 = self.m_right if self.m_right is not None else float(self.mass_fn(self.a2))
        v1 = self.V_left if self.V_left is not None else float(self.potential_fn(self.a1))
        v2 = self.V_right if self.V_right is not None else float(self.potential_fn(self.a2))
        return m1, m2, v1, v2


AnyProfile = Union[WellModel, BarrierModel, Profile]


def well_potential(model: WellModel, z):
    zc = _clip(z, -model.a0, model.a0)
    return -model.mu**2 / (1 + zc * zc)


def well_mass(model: WellModel, z):
    zc = _clip(z, -model.a0, model.a0)
    return model.beta**2 / (2 * (1 + zc * zc))


def barrier_potential(model: BarrierModel, z):
    zc = _clip(z, model.a1, model.a2)
    e = np.exp(model.alpha * zc) if np.ndim(zc) else math.exp(model.alpha * zc)
    return model.V0 * e * (2 - e)


def barrier_mass(model: BarrierModel, z):
    zc = _clip(z, model.a1, model.a2)
    e = np.exp(-2 * model.alpha * zc) if np.ndim(zc) else math.exp(-2 * model.alpha * zc)
    return model.m0 * model.alpha**2 * e


@dataclass(frozen=True)
class Asymptotics:
    """Constant masses, potential levels and wavenumbers outside the junctions."""

    m1: float
    m2: float
    V01: float
    V02: float
    k1: float
    k2: float


def outside_levels(model: AnyProfile) -> tuple[float, float, float, float]:
    """``(m1, m2, V01, V02)`` of any supported profile."""
    if isinstance(model, Profile):
        return model.outside()
    a1, a2 = model.junctions
    return (float(model.mass(a1)), float(model.mass(a2)),
            float(model.potential(a1)), float(model.potential(a2)))


def asymptotics(model: AnyProfile, E: float) -> Asymptotics:
    """Wavenumbers ``k = sqrt(2 m (E - V))`` on both sides.

    Raises
    ------
    EvanescentChannel
        If ``E`` does not exceed both asymptotic potential levels.
    """
    m1, m2, v1, v2 = outside_levels(model)
    if not (E > v1 and E > v2):
        raise EvanescentChannel(
            f"E={E} must exceed both asymptotic levels V01={v1}, V02={v2}"
        )
    return Asymptotics(m1, m2, v1, v2,
                       math.sqrt(2 * m1 * (E - v1)), math.sqrt(2 * m2 * (E - v2)))
