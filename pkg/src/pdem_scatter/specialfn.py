"""
Complex-parameter hypergeometric functions.

Gauss ``2F1(a, b; c; x)`` on the non-positive real axis, Kummer's confluent
``M(a, b; y)`` for complex ``y`` and the Whittaker function ``M_{k,m}(y)``,
together with their derivatives.

Evaluation strategy
-------------------
The defining Maclaurin series is summed with a term recurrence. For
``x <= -1`` the Gauss function goes through the Pfaff transformation first,
and ``M`` goes through the Kummer transformation when ``Re(y) < 0``.

With large complex parameters (``|ab|`` in the hundreds for the well, ``|y|``
of several tens for the barrier) the alternating series cancel badly: the
largest term can exceed the sum by ten or more orders of magnitude. Each
summation therefore reports a condition estimate ``max|term| / |sum|``. When
it is too large, the value is continued analytically instead. The series is
summed at a point close to the origin, where it is well conditioned, and then
carried to the target by repeated Taylor re-expansion of the function's own
differential equation. Every step size is halved until that local expansion
is itself well conditioned. Along the paths used here (the negative real axis
for ``2F1``, a ray from the origin for ``M``) both solutions of the equation
have comparable magnitude, so the continuation is numerically stable.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchError, DegenerateB, DegenerateC, DomainError, NoConvergence

_EPS = 2.220446049250313e-16
# series accepted directly when at most ~3 digits are lost to cancellation
_MAX_SERIES_COND = 1e3
# seed point for continuation must be essentially cancellation free
_SEED_COND = 10.0
# Taylor step accepted when its largest term is within this factor of the data
_STEP_GROWTH = 1e2
_MAX_STEPS = 100000


@dataclass(frozen=True)
class SeriesControl:
    """Truncation control shared by all series in this module."""

    rel_tol: float = 1e-14
    max_terms: int = 10000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_CONTROL = SeriesControl()


def _is_nonpositive_integer(v: complex) -> bool:
    v = complex(v)
    return v.imag == 0.0 and v.real <= 0.0 and v.real == math.floor(v.real)


def _finite(v: complex) -> bool:
    return math.isfinite(v.real) and math.isfinite(v.imag)


def _checked(v: complex, what: str) -> complex:
    if not _finite(v):
        raise NoConvergence(f"{what} produced a non-finite value")
    return v


# ---------------------------------------------------------------------------
# raw series
# ---------------------------------------------------------------------------

def _sum_2f1(a, b, c, x, ctl):
    """Return ``(value, derivative, condition)`` of the Maclaurin series."""
    term = 1.0 + 0j
    total = term
    dtotal = 0j
    peak = 1.0
    small = 0
    for n in range(ctl.max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        if x != 0:
            dtotal += (n + 1) * term / x
        mag = abs(term)
        peak = max(peak, mag)
        if mag <= ctl.rel_tol * abs(total):
            small += 1
            if small == 2:
                break
        else:
            small = 0
    else:
        raise NoConvergence(
            f"2F1 series at x={x} did not converge in {ctl.max_terms} terms"
        )
    if x == 0:
        dtotal = a * b / c
    scale = abs(total)
    cond = peak / scale if scale > 0 else math.inf
    return total, dtotal, cond


def _sum_1f1(a, b, y, ctl):
    """Return ``(value, derivative, condition)`` of Kummer's series."""
    term = 1.0 + 0j
    total = term
    dtotal = 0j
    peak = 1.0
    small = 0
    for n in range(ctl.max_terms):
        term *= (a + n) / ((b + n) * (n + 1)) * y
        total += term
        if y != 0:
            dtotal += (n + 1) * term / y
        mag = abs(term)
        peak = max(peak, mag)
        if mag <= ctl.rel_tol * abs(total):
            small += 1
            if small == 2:
                break
        else:
            small = 0
    else:
        raise NoConvergence(
            f"1F1 series at y={y} did not converge in {ctl.max_terms} terms"
        )
    if y == 0:
        dtotal = a / b
    scale = abs(total)
    cond = peak / scale if scale > 0 else math.inf
    return total, dtotal, cond


def hyp2f1_series(a, b, c, x: float, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Plain Maclaurin sum of ``2F1(a, b; c; x)``, valid for ``|x| < 1``."""
    if _is_nonpositive_integer(c):
        raise DegenerateC(f"c={c} is a non-positive integer")
    if not abs(x) < 1:
        raise DomainError(f"Maclaurin series needs |x| < 1, got x={x}")
    return _checked(_sum_2f1(complex(a), complex(b), complex(c), float(x), ctl)[0], "2F1")


def hyp2f1_pfaff(a, b, c, x: float, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``2F1`` through ``(1-x)^(-a) 2F1(a, c-b; c; x/(x-1))``, for ``x <= 0``."""
    if _is_nonpositive_integer(c):
        raise DegenerateC(f"c={c} is a non-positive integer")
    if x > 0:
        raise DomainError(f"Pfaff route implemented for x <= 0, got x={x}")
    a, b, c = complex(a), complex(b), complex(c)
    w = x / (x - 1.0)
    s = _sum_2f1(a, c - b, c, w, ctl)[0]
    return _checked((1.0 - x) ** (-a) * s, "2F1")


def kummer_series(a, b, y, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Plain Maclaurin sum of ``M(a, b; y)`` with no transformation."""
    if _is_nonpositive_integer(b):
        raise DegenerateB(f"b={b} is a non-positive integer")
    return _checked(_sum_1f1(complex(a), complex(b), complex(y), ctl)[0], "1F1")


# ---------------------------------------------------------------------------
# analytic continuation by Taylor re-expansion
# ---------------------------------------------------------------------------

def _taylor_step(p, q, r0, u0, du0, h, ctl):
    """Advance ``P u'' + Q u' + r0 u = 0`` from ``s=0`` to ``s=h``.

    ``p = (p0, p1, p2)`` and ``q = (q0, q1)`` are the coefficients of the
    polynomials ``P`` and ``Q`` in the local variable ``s``. Returns
    ``(u(h), u'(h), peak)`` where ``peak`` is the largest scaled term.
    """
    p0, p1, p2 = p
    q0, q1 = q
    d_prev = u0             # c_n h^n
    d_cur = du0 * h         # c_{n+1} h^{n+1}
    u = d_prev + d_cur
    du_h = d_cur            # h * u'(h) accumulates n c_n h^n
    peak = max(abs(d_prev), abs(d_cur))
    scale = peak
    small = 0
    h2 = h * h
    for n in range(ctl.max_terms):
        d_next = -(
            (p1 * n * (n + 1) + q0 * (n + 1)) * d_cur * h
            + (p2 * n * (n - 1) + q1 * n + r0) * d_prev * h2
        ) / (p0 * (n + 2) * (n + 1))
        u += d_next
        du_h += (n + 2) * d_next
        mag = abs(d_next)
        peak = max(peak, mag)
        if (n + 2) * mag <= ctl.rel_tol * max(abs(u), abs(du_h), scale * _EPS):
            small += 1
            if small == 2:
                break
        else:
            small = 0
        d_prev, d_cur = d_cur, d_next
    else:
        raise NoConvergence("Taylor continuation step did not converge")
    return u, du_h / h, peak


def _continue(coeffs, singular, t0, t1, u0, du0, ctl):
    """Carry ``(u, u')`` from ``t0`` to ``t1`` along the straight segment.

    ``coeffs(t)`` returns the local ``(p, q, r0)`` at expansion point ``t``;
    ``singular`` lists the finite singular points of the equation.
    """
    t = complex(t0)
    t1 = complex(t1)
    u, du = complex(u0), complex(du0)
    for _ in range(_MAX_STEPS):
        remaining = t1 - t
        if remaining == 0:
            return u, du
        radius = min(abs(t - s) for s in singular)
        h = remaining
        if abs(h) > 0.5 * radius:
            h = remaining / abs(remaining) * 0.5 * radius
        p, q, r0 = coeffs(t)
        while True:
            u_new, du_new, peak = _taylor_step(p, q, r0, u, du, h, ctl)
            data = max(abs(u), abs(du * h), abs(u_new), abs(du_new * h))
            if peak <= _STEP_GROWTH * data or abs(h) < 1e-12 * max(1.0, abs(t)):
                break
            h *= 0.5
        if h == remaining:
            return u_new, du_new
        t += h
        u, du = u_new, du_new
    raise NoConvergence("continuation exceeded its step budget")


def _2f1_coeffs(a, b, c):
    ab1 = a + b + 1

    def coeffs(t):
        return (t * (1 - t), 1 - 2 * t, -1.0), (c - ab1 * t, -ab1), -a * b

    return coeffs


def _1f1_coeffs(a, b):
    def coeffs(t):
        return (t, 1.0, 0.0), (b - t, -1.0), -a

    return coeffs


def _seed(sum_fn, target, ctl):
    """Shrink ``target`` toward 0 until its series is well conditioned."""
    t = target
    while abs(t) > 0.5:
        t = t * 0.5
    while True:
        try:
            val, dval, cond = sum_fn(t)
        except NoConvergence:
            cond = math.inf
        if cond <= _SEED_COND:
            return t, val, dval
        t = t * 0.5


def _2f1_and_derivative(a, b, c, x, ctl):
    a, b, c = complex(a), complex(b), complex(c)
    if _is_nonpositive_integer(c):
        raise DegenerateC(f"c={c} is a non-positive integer")
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    if x > 0:
        raise DomainError(f"2F1 implemented for x <= 0 only, got x={x}")
    if x == 0:
        return 1.0 + 0j, a * b / c
    try:
        if x <= -1:
            w = x / (x - 1.0)
            s, ds, cond = _sum_2f1(a, c - b, c, w, ctl)
            pref = (1.0 - x) ** (-a)
            val = pref * s
            # d/dx [(1-x)^-a S(w)] with dw/dx = -1/(x-1)^2
            dval = pref * (a * s / (1.0 - x) - ds / (x - 1.0) ** 2)
        else:
            val, dval, cond = _sum_2f1(a, b, c, x, ctl)
    except NoConvergence:
        cond = math.inf
    if cond > _MAX_SERIES_COND:
        x0, u0, du0 = _seed(lambda t: _sum_2f1(a, b, c, t, ctl), x, ctl)
        val, dval = _continue(_2f1_coeffs(a, b, c), (0.0, 1.0), x0, x, u0, du0, ctl)
    return _checked(val, "2F1"), _checked(dval, "2F1'")


def _1f1_and_derivative(a, b, y, ctl):
    a, b, y = complex(a), complex(b), complex(y)
    if _is_nonpositive_integer(b):
        raise DegenerateB(f"b={b} is a non-positive integer")
    if not _finite(y):
        raise DomainError(f"y must be finite, got {y}")
    if y == 0:
        return 1.0 + 0j, a / b
    if y.real < 0:
        # M(a,b;y) = e^y M(b-a,b;-y);  M'(a,b;y) = e^y [M(b-a,b;-y) - M'(b-a,b;-y)]
        v, dv = _1f1_and_derivative(b - a, b, -y, ctl)
        e = cmath.exp(y)
        return _checked(e * v, "1F1"), _checked(e * (v - dv), "1F1'")
    try:
        val, dval, cond = _sum_1f1(a, b, y, ctl)
    except NoConvergence:
        cond = math.inf
    if cond > _MAX_SERIES_COND:
        y0, u0, du0 = _seed(lambda t: _sum_1f1(a, b, t, ctl), y, ctl)
        val, dval = _continue(_1f1_coeffs(a, b), (0.0,), y0, y, u0, du0, ctl)
    return _checked(val, "1F1"), _checked(dval, "1F1'")


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def gauss_2f1(a, b, c, x: float, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Gauss hypergeometric function ``2F1(a, b; c; x)`` for real ``x <= 0``.

    Parameters
    ----------
    a, b, c : complex
        Series parameters; ``c`` must not be zero or a negative integer.
    x : float
        Argument. Positive values raise :class:`DomainError`.
    ctl : SeriesControl
        Truncation tolerance and term budget.

    Raises
    ------
    DegenerateC, DomainError, NoConvergence
    """
    return _2f1_and_derivative(a, b, c, x, ctl)[0]


def gauss_2f1_dx(a, b, c, x: float, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``d/dx 2F1(a, b; c; x) = (ab/c) 2F1(a+1, b+1; c+1; x)``."""
    a, b, c = complex(a), complex(b), complex(c)
    if _is_nonpositive_integer(c):
        raise DegenerateC(f"c={c} is a non-positive integer")
    return a * b / c * gauss_2f1(a + 1, b + 1, c + 1, x, ctl)


def kummer_m(a, b, y, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Kummer's confluent hypergeometric function ``M(a, b; y)``."""
    return _1f1_and_derivative(a, b, y, ctl)[0]


def kummer_m_dy(a, b, y, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """``dM/dy = (a/b) M(a+1, b+1; y)``."""
    a, b = complex(a), complex(b)
    if _is_nonpositive_integer(b):
        raise DegenerateB(f"b={b} is a non-positive integer")
    return a / b * kummer_m(a + 1, b + 1, y, ctl)


def _whittaker_parts(kw, mw, y):
    kw, mw, y = complex(kw), complex(mw), complex(y)
    if y == 0:
        raise BranchError("Whittaker M evaluated at the branch point y=0")
    b = 1 + 2 * mw
    if _is_nonpositive_integer(b):
        raise DegenerateB(f"1+2m={b} is a non-positive integer")
    a = mw - kw + 0.5
    # principal branch: arg(y) in (-pi, pi]
    pref = cmath.exp(-0.5 * y + (mw + 0.5) * cmath.log(y))
    return a, b, y, mw, pref


def whittaker_m(kw, mw, y, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Whittaker ``M_{k,m}(y) = e^{-y/2} y^{m+1/2} M(m-k+1/2, 1+2m; y)``."""
    a, b, y, _, pref = _whittaker_parts(kw, mw, y)
    return _checked(pref * kummer_m(a, b, y, ctl), "Whittaker M")


def whittaker_m_dy(kw, mw, y, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Derivative of :func:`whittaker_m` with respect to ``y``."""
    a, b, y, mw, pref = _whittaker_parts(kw, mw, y)
    m = kummer_m(a, b, y, ctl)
    dm = kummer_m_dy(a, b, y, ctl)
    return _checked(pref * ((-0.5 + (mw + 0.5) / y) * m + dm), "Whittaker M'")
