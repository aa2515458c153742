import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdem_scatter.errors import EvanescentChannel
from pdem_scatter.models import (
    BarrierModel,
    Profile,
    WellModel,
    asymptotics,
    barrier_mass,
    barrier_potential,
    well_mass,
    well_potential,
)

WELL = WellModel(beta=4, mu=3, a0=2)
FIG3 = BarrierModel(m0=0.4, V0=5, alpha=1, a1=-0.8, a2=0.8)

wells = st.builds(WellModel, beta=st.floats(0.6, 8), mu=st.floats(0.9, 6), a0=st.floats(0.2, 5))
barriers = st.builds(
    lambda m0, V0, alpha, a1, w: BarrierModel(m0, V0, alpha, a1, a1 + w),
    st.floats(0.05, 2), st.floats(0.2, 10), st.floats(0.2, 3), st.floats(-3, 2), st.floats(0.1, 4),
)


def test_well_potential_values():
    assert well_potential(WELL, 0.0) == -9
    assert well_potential(WELL, 2.0) == pytest.approx(-1.8, abs=1e-15)
    assert well_potential(WELL, -2.0) == pytest.approx(-1.8, abs=1e-15)
    assert well_potential(WELL, 100.0) == pytest.approx(-1.8, abs=1e-15)


def test_well_mass_values():
    assert well_mass(WELL, 0.0) == 8
    assert well_mass(WELL, 2.0) == pytest.approx(1.6, abs=1e-15)
    assert well_mass(WELL, -50.0) == pytest.approx(1.6, abs=1e-15)


def test_barrier_values():
    assert barrier_potential(FIG3, 0.0) == 5
    # 5 e^{-0.8} (2 - e^{-0.8})
    assert barrier_potential(FIG3, -0.8) == pytest.approx(3.4838070511989389, rel=1e-14)
    assert barrier_potential(FIG3, 40.0) == barrier_potential(FIG3, 0.8)
    assert barrier_mass(FIG3, 0.0) == pytest.approx(0.4, rel=1e-15)
    assert barrier_mass(FIG3, 0.8) == pytest.approx(0.080759, rel=1e-5)
    assert barrier_mass(FIG3, -5.0) == pytest.approx(0.4 * math.exp(1.6), rel=1e-15)


def test_vectorized_evaluation_matches_scalar():
    zs = np.linspace(-3, 3, 13)
    for model in (WELL, FIG3):
        np.testing.assert_array_equal(model.mass(zs), [model.mass(float(z)) for z in zs])
        np.testing.assert_array_equal(model.potential(zs), [model.potential(float(z)) for z in zs])


def test_asymptotics_well():
    a = asymptotics(WELL, 40)
    assert a.m1 == a.m2 == pytest.approx(1.6)
    assert a.V01 == a.V02 == pytest.approx(-1.8)
    assert a.k1 == a.k2 == pytest.approx(11.565465835840768, rel=1e-14)


def test_asymptotics_barrier():
    a = asymptotics(FIG3, 33)
    assert a.m1 == pytest.approx(1.98121, rel=1e-5)
    assert a.V01 == pytest.approx(3.48381, rel=1e-5)
    assert a.k1 == pytest.approx(10.814607185473326, rel=1e-13)
    assert a.k2 == pytest.approx(math.sqrt(2 * 0.4 * math.exp(-1.6) * (33 - barrier_potential(FIG3, 0.8))))


@pytest.mark.parametrize("model", [WELL, FIG3])
def test_evanescent_channel(model):
    v1 = float(model.potential(model.junctions[0]))
    with pytest.raises(EvanescentChannel):
        asymptotics(model, v1)


def test_invalid_models():
    with pytest.raises(ValueError):
        WellModel(beta=1, mu=0.4, a0=1)  # 4 beta^2 mu^2 < 1
    with pytest.raises(ValueError):
        BarrierModel(0.4, 5, 1, 0.8, -0.8)
    with pytest.raises(ValueError):
        BarrierModel(0.4, -5, 1, -0.8, 0.8)


def test_profile_outside_levels():
    p = Profile(lambda z: 1.6 + 0 * z, lambda z: -7.2 + 0 * z, -2, 2, V_left=0.0, V_right=0.0)
    a = asymptotics(p, 40)
    assert (a.V01, a.V02, a.m1) == (0.0, 0.0, 1.6)


@pytest.mark.parametrize("model", [WELL, FIG3, BarrierModel(0.4, 5, 1, -1.0, 1.0)])
def test_continuity_at_junctions(model):
    eps = 1e-10
    for zj in model.junctions:
        for f in (model.mass, model.potential):
            assert abs(f(zj - eps) - f(zj + eps)) <= 1e-8


@given(model=wells | barriers, which=st.sampled_from([0, 1]))
def test_jump_vanishes_with_eps(model, which):
    # steep profiles cannot meet a fixed 1e-8 at eps=1e-10, but the jump must scale like eps
    zj = model.junctions[which]
    for f in (model.mass, model.potential):
        j1 = abs(f(zj - 1e-6) - f(zj + 1e-6))
        j2 = abs(f(zj - 1e-8) - f(zj + 1e-8))
        assert j2 <= 0.02 * j1 + 1e-12 * max(1.0, abs(f(zj)))


@given(model=wells | barriers, z=st.floats(-20, 20))
def test_mass_positive(model, z):
    assert model.mass(z) > 0


@given(model=wells, z=st.floats(-20, 20))
def test_well_symmetry(model, z):
    assert model.potential(z) == model.potential(-z)
    assert model.mass(z) == model.mass(-z)


def test_figure_profile_extremes():
    zs = np.linspace(-4, 4, 801)
    v = WELL.potential(zs)
    assert v.min() == -9 and zs[v.argmin()] == 0
    b = BarrierModel(0.4, 5, 1, -0.8, 0.8)
    vb = b.potential(np.linspace(-1.6, 1.6, 801))
    assert vb.max() == 5
