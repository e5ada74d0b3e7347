import math

import numpy as np
import pytest

import mcarma


@pytest.fixture
def m1():
    return mcarma.Model([np.array([[3.0, 1.0], [0.0, 2.0]])], [np.eye(2)], np.eye(2))


@pytest.fixture
def m2():
    return mcarma.Model([np.array([[3.0]]), np.array([[2.0]])], [np.array([[1.0]])], np.array([[1.0]]))


def test_model_roots(m1):
    roots = sorted(r.real for r, _ in mcarma.char_roots(m1))
    assert roots == pytest.approx([-3.0, -2.0])
    assert mcarma.det_poly(m1) == pytest.approx([6.0, 5.0, 1.0])


def test_unstable_model_raises():
    with pytest.raises(mcarma.McarmaError):
        mcarma.Model([np.array([[-3.0, 0.0], [0.0, 2.0]])], [np.eye(2)], np.eye(2))


def test_sampled_spectrum_oracles(m2):
    want = (math.tanh(0.5) / 6 - math.tanh(1.0) / 12) / (2 * math.pi)
    exact = mcarma.f_sampled_exact(m2, 0.5, math.pi / 2)
    assert exact[0, 0].real == pytest.approx(want, rel=1e-12)
    assert mcarma.f_sampled_reference(m2, 0.5, math.pi / 2)[0, 0].real == pytest.approx(want, rel=1e-9)
    taylor = mcarma.f_sampled_taylor(m2, 0.01, math.pi / 2, 20)
    assert taylor[0, 0].real == pytest.approx(mcarma.f_sampled_exact(m2, 0.01, math.pi / 2)[0, 0].real, rel=1e-10)


def test_theta_and_autocovariance(m1):
    start, coeffs = mcarma.theta_series(m1, 3)
    assert start == 1
    np.testing.assert_allclose(coeffs[2], [[-8, -3], [-3, -4]], atol=1e-12)
    np.testing.assert_allclose(mcarma.autocovariance(m1, 0.0), [[11 / 60, -0.05], [-0.05, 0.25]], atol=1e-13)


def test_polys_and_eta():
    q, r = mcarma.qr_polys(3)
    assert q == [64, 52, 4]
    assert r == [488, 224, 8]
    assert mcarma.eta(3.0).real == pytest.approx(-2 + math.sqrt(3))
    assert mcarma.eulerian_row(4) == [1, 11, 11, 1]


def test_filter_and_ma(m1, m2):
    phi = mcarma.sampling_filter(m1, 0.1)
    assert phi[2] == pytest.approx(math.exp(-0.5))
    g0 = mcarma.filtered_acov(m1, 0.01, 0)
    np.testing.assert_allclose(g0 / 0.01, 2 * np.eye(2), rtol=0.05, atol=0.05)
    acov = [mcarma.filtered_acov(m2, 0.1, h)[0, 0] for h in range(2)]
    psi, sigma = mcarma.scalar_factorization(acov)
    assert psi[1][0, 0] == pytest.approx(2 - math.sqrt(3), rel=0.03)
    asym = mcarma.asymptotic_ma(m2, 0.1)
    assert asym["unit_root_multiplicity"] == 0


def test_simulation_is_deterministic(m1):
    a = mcarma.simulate(m1, 0.5, 100, 3)
    b = mcarma.simulate(m1, 0.5, 100, 3)
    assert a.shape == (2, 100)
    np.testing.assert_array_equal(a, b)
    report = mcarma.verify(m1, 0.5, 200000, 1)
    assert report["pass"]
