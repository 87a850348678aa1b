import math

import numpy as np
import pytest

from core_errors import DomainError
from core_geometry import symmetric_images
from core_maps import va_from_eta_direct, va_from_eta_indirect
from core_rectilinear import RectilinearArcQuery, parabolic_times, tof_direct
from core_symmetric import (
    SymmetricArcQuery,
    tof_direct_symmetric,
    tof_direct_symmetric_d2eta,
    tof_direct_symmetric_deta,
    tof_indirect_symmetric,
)
from utils_numerics import Numerics

R, THETA = 1.0, math.pi / 4


def sym(eta, r=R, theta=THETA):
    return SymmetricArcQuery(r, theta, eta)


def test_circle_takes_the_swept_angle():
    assert tof_direct_symmetric(sym(0.0)) == pytest.approx(math.pi / 2, rel=1e-12)
    assert tof_direct_symmetric(sym(0.0, r=4.0, theta=0.3)) == pytest.approx(8.0 * (math.pi - 0.6), rel=1e-12)


def test_parabolic_images():
    re = symmetric_images(R, THETA)
    direct_t, indirect_t = parabolic_times(re.xa, re.xb)
    assert tof_direct_symmetric(sym(-1.0)) == pytest.approx(direct_t, rel=1e-10)
    assert tof_indirect_symmetric(sym(1.0)) == pytest.approx(indirect_t, rel=1e-10)


@pytest.mark.parametrize("eta", [-2.0, -0.5, 0.0, 0.3, 0.8, 0.95])
def test_symmetric_agrees_with_rectilinear(eta):
    # two independent integrals of the same Lambert time
    re = symmetric_images(R, THETA)
    va = va_from_eta_direct(eta, re.xa, re.xb)
    expected = tof_direct(RectilinearArcQuery(re.xa, re.xb, va))
    assert tof_direct_symmetric(sym(eta)) == pytest.approx(expected, rel=1e-9)


def test_hyperbolic_asymptote():
    t = tof_direct_symmetric(sym(-1e3))
    assert t < 0.04
    # chord over the hyperbolic excess speed
    re = symmetric_images(R, THETA)
    h = (1e6 - 1.0) / (2.0 * R * (1.0 + 1e3 * math.sin(THETA)))
    assert t == pytest.approx((re.xa - re.xb) / math.sqrt(2.0 * h), rel=0.05)


@pytest.mark.parametrize("eta", [-1.5, -0.2, 0.4, 0.8])
def test_derivatives_match_differences(eta):
    d1, _ = Numerics.central_differences(lambda e: tof_direct_symmetric(sym(e)), eta, 1e-5)
    d2, _ = Numerics.central_differences(lambda e: tof_direct_symmetric_deta(sym(e)), eta, 1e-5)
    assert tof_direct_symmetric_deta(sym(eta)) == pytest.approx(d1, rel=1e-6)
    assert tof_direct_symmetric_d2eta(sym(eta)) == pytest.approx(d2, rel=1e-6)


def test_derivatives_far_on_the_hyperbolic_side():
    eta = -100.0
    d1, _ = Numerics.central_differences(lambda e: tof_direct_symmetric(sym(e)), eta, 1e-2)
    d2, _ = Numerics.central_differences(lambda e: tof_direct_symmetric_deta(sym(e)), eta, 1e-2)
    assert tof_direct_symmetric_deta(sym(eta)) == pytest.approx(d1, rel=1e-6)
    assert tof_direct_symmetric_d2eta(sym(eta)) == pytest.approx(d2, rel=1e-5)


def test_direct_increasing_and_convex():
    etas = np.linspace(-3.0, 0.98, 200)
    times = np.array([tof_direct_symmetric(sym(e)) for e in etas])
    assert np.all(np.diff(times) > 0)
    assert np.all(np.diff(times, 2) > 0)
    assert all(tof_direct_symmetric_d2eta(sym(e)) > 0 for e in etas[::20])


def test_direct_grows_without_bound_toward_one():
    assert tof_direct_symmetric(sym(1.0 - 1e-4)) > 1e3


def test_indirect_decreasing():
    etas = np.linspace(-0.9, 1.3, 50)
    times = np.array([tof_indirect_symmetric(sym(e)) for e in etas])
    assert np.all(np.diff(times) < 0)


def test_indirect_unbounded_near_minus_one():
    assert tof_indirect_symmetric(sym(-1.0 + 1e-6)) > 1e3


def test_indirect_limits():
    re = symmetric_images(R, THETA)
    # eta -> -1+: the arc tends to escape and the time diverges
    assert tof_indirect_symmetric(sym(-1.0 + 1e-7)) > tof_indirect_symmetric(sym(-1.0 + 1e-6)) > 1e3
    # eta -> 1 / sin(theta_A): v_A -> -inf and T -> (x_A + x_B) / |v_A|
    near_pole = (1.0 - 1e-8) / math.sin(THETA)
    va = va_from_eta_indirect(near_pole, re.xa, re.xb)
    t = tof_indirect_symmetric(sym(near_pole))
    assert 0.0 < t < 1e-2
    assert t == pytest.approx((re.xa + re.xb) / abs(va), rel=0.01)


def test_indirect_not_convex_near_right_angle():
    found = False
    for theta in np.linspace(1.47, 1.56, 10):
        pole = 1.0 / math.sin(theta)
        etas = np.linspace(-0.5, 0.5 * (1.0 + pole), 400)
        times = np.array([tof_indirect_symmetric(sym(e, theta=theta)) for e in etas])
        if np.any(np.diff(times, 2) < 0):
            found = True
            break
    assert found


def test_domains():
    with pytest.raises(DomainError):
        tof_direct_symmetric(sym(1.0))
    with pytest.raises(DomainError):
        tof_direct_symmetric(sym(0.0, theta=math.pi / 2))
    with pytest.raises(DomainError):
        tof_indirect_symmetric(sym(-1.0))
    with pytest.raises(DomainError):
        tof_indirect_symmetric(sym(1.0 / math.sin(THETA)))
