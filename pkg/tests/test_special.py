import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robinkg import special
from robinkg.exceptions import DomainError
from robinkg.special import EULER_GAMMA, i0, i1, k0, k1, sigma0, sigma1

from oracles import series_i, series_k0, series_k1, series_sigma0, series_sigma1

# frozen from the 80-digit series oracles in oracles.py
I0_1 = 1.2660658777520083356
I0_2 = 2.2795853023360672674
I1_1 = 0.56515910399248502721
I1_2 = 1.5906368546373290634
K0_1 = 0.42102443824070833334
K0_3 = 0.034739504386279248072
K1_1 = 0.60190723019723457474


def rel(a, b):
    return abs(a - b) / abs(b)


def test_euler_gamma():
    assert EULER_GAMMA == pytest.approx(0.57721566490153286061, rel=1e-15, abs=0)


@pytest.mark.parametrize(
    "f, z, expected",
    [(i0, 1.0, I0_1), (i0, 2.0, I0_2), (i1, 1.0, I1_1), (i1, 2.0, I1_2), (k0, 1.0, K0_1), (k0, 3.0, K0_3), (k1, 1.0, K1_1)],
)
def test_frozen_values(f, z, expected):
    assert rel(f(z), expected) <= 1e-14


def test_values_at_zero():
    assert i0(0.0) == 1.0
    assert i1(0.0) == 0.0
    assert sigma0(0.0) == pytest.approx(-EULER_GAMMA, abs=1e-16)
    assert sigma1(0.0) == 0.0


def test_small_argument_limits():
    z = 1e-8
    assert abs(k0(z) + math.log(z / 2) * i0(z) + EULER_GAMMA) <= 1e-12
    assert abs(z * k1(z) - 1.0) <= 1e-10


def test_wronskian_at_two():
    assert i0(2.0) * k1(2.0) + i1(2.0) * k0(2.0) == pytest.approx(0.5, abs=1e-15)


def test_sigma_identity_examples():
    assert abs(sigma0(1.0) - (k0(1.0) + math.log(0.5) * i0(1.0))) <= 1e-13
    assert abs(sigma0(2.0) - k0(2.0)) <= 1e-15
    assert abs(sigma1(1.0) - (k1(1.0) - 1.0 - math.log(0.5) * i1(1.0))) <= 1e-12
    assert abs(sigma1(2.0) - (k1(2.0) - 0.5)) <= 1e-15


@pytest.mark.parametrize("z", [1e-6, 0.01, 0.3, 1.0, 1.99, 2.0, 2.01, 5.0, 8.0, 12.0, 20.0, 29.5])
def test_against_series_oracle(z):
    assert rel(i0(z), float(series_i(0, z))) <= 1e-14
    assert rel(i1(z), float(series_i(1, z))) <= 1e-14
    assert rel(k0(z), float(series_k0(z))) <= 1e-13
    assert rel(k1(z), float(series_k1(z))) <= 1e-13
    assert abs(sigma0(z) - float(series_sigma0(z))) <= 1e-13 * max(1.0, abs(sigma0(z)))
    assert abs(sigma1(z) - float(series_sigma1(z))) <= 1e-13 * max(1.0, abs(sigma1(z)))


def test_large_arguments_match_scipy():
    scipy_special = pytest.importorskip("scipy.special")
    z = np.linspace(30, 300, 50)
    assert np.max(np.abs(i0(z) / scipy_special.i0(z) - 1)) <= 1e-13
    assert np.max(np.abs(i1(z) / scipy_special.i1(z) - 1)) <= 1e-13
    assert np.max(np.abs(k0(z) / scipy_special.k0(z) - 1)) <= 1e-13
    assert np.max(np.abs(k1(z) / scipy_special.k1(z) - 1)) <= 1e-13


def test_wronskian_grid():
    z = np.logspace(np.log10(0.05), np.log10(20.0), 400)
    w = z * (i0(z) * k1(z) + i1(z) * k0(z))
    assert np.max(np.abs(w - 1.0)) <= 1e-12


def _identity_residuals(z):
    lg = np.log(0.5 * z)
    r0 = np.abs(k0(z) - (-lg * i0(z) + sigma0(z)))
    r1 = np.abs(k1(z) - (1 / z + lg * i1(z) + sigma1(z)))
    return lg, r0, r1


def test_splitting_identities_grid():
    z = np.logspace(-6, np.log10(5.0), 500)
    _, r0, r1 = _identity_residuals(z)
    assert np.all(r0 <= 1e-13 * np.maximum(1.0, np.abs(k0(z))))
    assert np.all(r1 <= 1e-12 * np.maximum(1.0, np.abs(k1(z))))


def test_splitting_identities_large_z():
    # the identity's terms grow like I0(z) while K0 decays; float64 rounding of
    # the right-hand side alone is ~1e-16 * |ln(z/2) I0(z)|
    z = np.linspace(5.0, 10.0, 200)
    lg, r0, r1 = _identity_residuals(z)
    assert np.all(r0 <= 1e-13 * np.maximum(1.0, np.abs(lg * i0(z))))
    assert np.all(r1 <= 1e-12 * np.maximum(1.0, np.abs(lg * i1(z))))


def test_monotonicity():
    z = np.linspace(0.01, 25, 2000)
    assert np.all(np.diff(k0(z)) < 0)
    assert np.all(np.diff(k1(z)) < 0)
    assert np.all(np.diff(i0(z)) > 0)
    assert np.all(np.diff(i1(z)) > 0)


def test_branch_seams_are_continuous():
    for seam in (special._K_SERIES_MAX, special._I_SERIES_MAX, special._SIGMA_SERIES_MAX):
        lo, hi = np.nextafter(seam, 0), np.nextafter(seam, np.inf)
        for f in (i0, i1, k0, k1, sigma0, sigma1):
            assert rel(f(lo), f(hi)) <= 1e-13


def test_array_and_scalar_shapes():
    assert isinstance(k0(1.0), float)
    z = np.array([[0.5, 1.0], [2.0, 3.0]])
    assert k0(z).shape == (2, 2)
    assert np.allclose(i0(z), [[i0(0.5), i0(1.0)], [i0(2.0), i0(3.0)]], rtol=0, atol=0)


@pytest.mark.parametrize("f", [k0, k1])
@pytest.mark.parametrize("z", [0.0, -1.0, np.nan, np.inf])
def test_k_domain_errors(f, z):
    with pytest.raises(DomainError):
        f(z)


@pytest.mark.parametrize("f", [i0, i1, sigma0, sigma1])
@pytest.mark.parametrize("z", [np.nan, np.inf, -0.5])
def test_i_domain_errors(f, z):
    with pytest.raises(DomainError):
        f(z)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.05, max_value=20.0))
def test_wronskian_property(z):
    assert abs(z * (i0(z) * k1(z) + i1(z) * k0(z)) - 1.0) <= 1e-12
