import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfweyl.core import OrderError, UpperHalfPoint, c_constants
from halfweyl.linalg import hermitian_min_eig
from halfweyl.weyl import (
    ExtensionKind,
    SingularBoundaryError,
    hankel_core,
    imag_boundary,
    scaling_matrix,
    sharp_constants,
    weyl_boundary,
    weyl_closed_form,
)
from halfweyl.core import root_minus_lambda

F, K = ExtensionKind.FRIEDRICHS, ExtensionKind.KREIN
I = UpperHalfPoint.from_complex(1j)

points = st.builds(
    UpperHalfPoint,
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1e-3, max_value=math.pi - 1e-3),
)


def test_kind_parsing():
    assert ExtensionKind.parse("Friedrichs") is F
    assert ExtensionKind.parse("k") is K
    assert ExtensionKind.parse(K) is K
    with pytest.raises(ValueError):
        ExtensionKind.parse("dirichlet")


def test_n1_friedrichs_at_i():
    m = weyl_closed_form(1, F, I)
    assert m.shape == (1, 1)
    assert abs(m[0, 0] - cmath.exp(3j * math.pi / 4)) < 1e-15
    assert abs(m[0, 0] - complex(-0.707107, 0.707107)) < 1e-6


def test_n2_friedrichs_at_i():
    m = weyl_closed_form(2, F, I)
    assert abs(m[0, 0] - (1j - 1) * cmath.exp(1j * math.pi / 8)) < 1e-15
    assert abs(m[0, 0] - complex(-1.306563, 0.541196)) < 1e-6
    assert abs(m[0, 1] - cmath.exp(3j * math.pi / 4)) < 1e-15


def test_n1_krein_at_i():
    m = weyl_closed_form(1, K, I)
    assert abs(m[0, 0] - cmath.exp(1j * math.pi / 4)) < 1e-15
    assert abs(m[0, 0] - 1j / cmath.sqrt(1j)) < 1e-15


def test_accepts_complex_and_rejects_large_order():
    np.testing.assert_array_equal(weyl_closed_form(2, "f", 1j), weyl_closed_form(2, F, I))
    with pytest.raises(OrderError):
        weyl_closed_form(65, F, I)
    with pytest.raises(ValueError):
        weyl_closed_form(2, F, -1j)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 17])
@pytest.mark.parametrize("kind", list(ExtensionKind))
def test_complex_symmetric_with_scaled_hankel_core(n, kind):
    lam = UpperHalfPoint(0.7, 2.0)
    m = weyl_closed_form(n, kind, lam)
    np.testing.assert_array_equal(m, m.T)
    core = hankel_core(n, kind, np.array([root_minus_lambda(n, lam)]))[0]
    c = np.array(c_constants(n))
    for j in range(n):
        for k in range(n):
            assert m[j, k] == c[j] * c[k] * core[j + k]


def test_not_plain_hankel_for_n3():
    m = weyl_closed_form(3, F, I)
    # entries share j+k = 2 but differ by C_1**2 = 3
    assert abs(m[1, 1] - 3 * m[0, 2]) < 1e-14
    assert abs(m[1, 1] - m[0, 2]) > 1


@pytest.mark.parametrize("kind, x, expected", [(F, -1.0, -1.0), (K, -1.0, 1.0)])
def test_boundary_n1_negative(kind, x, expected):
    m = weyl_boundary(1, kind, x)
    assert m[0, 0] == pytest.approx(expected, abs=1e-15)


def test_boundary_n2_friedrichs_positive():
    m = weyl_boundary(2, F, 1.0)
    assert abs(m[0, 0] + math.sqrt(2) * cmath.exp(-1j * math.pi / 4)) < 1e-15


def test_boundary_at_zero():
    np.testing.assert_array_equal(weyl_boundary(3, F, 0.0), np.zeros((3, 3)))
    with pytest.raises(SingularBoundaryError):
        weyl_boundary(3, K, 0.0)
    with pytest.raises(SingularBoundaryError):
        imag_boundary(3, K, 0.0)


@pytest.mark.parametrize("kind", list(ExtensionKind))
@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_boundary_negative_axis_real_symmetric(kind, n):
    m = weyl_boundary(n, kind, -2.5)
    assert np.all(m.imag == 0.0)
    np.testing.assert_array_equal(m, m.T)


def test_boundary_matches_explicit_piecewise_form():
    n = 4
    a = math.pi / (2 * n)
    c = c_constants(n)
    for x in (-3.0, -0.2, 0.2, 3.0):
        for kind in ExtensionKind:
            got = weyl_boundary(n, kind, x)
            for j in range(n):
                for k in range(n):
                    m = j + k + 1
                    if kind is F:
                        phase = cmath.exp(-1j * m * a) if x > 0 else 1.0
                        ref = -c[j] * c[k] * abs(x) ** (m / (2 * n)) * phase / math.sin(m * a)
                    else:
                        phase = cmath.exp(1j * m * a) if x > 0 else 1.0
                        ref = (-1) ** (j + k) * c[j] * c[k] * abs(x) ** (-m / (2 * n)) * phase / math.sin(m * a)
                    assert abs(got[j, k] - ref) <= 1e-13 * abs(ref)


@pytest.mark.parametrize("kind", list(ExtensionKind))
@pytest.mark.parametrize("n", [1, 2, 3, 5])
@pytest.mark.parametrize("x", [-2.0, -0.5, 0.5, 2.0])
def test_boundary_is_limit(kind, n, x):
    near = weyl_closed_form(n, kind, UpperHalfPoint.from_complex(complex(x, 1e-8)))
    lim = weyl_boundary(n, kind, x)
    assert np.linalg.norm(near - lim) <= 1e-6 * np.linalg.norm(lim)


def test_imag_boundary_examples():
    for n in (1, 3):
        for kind in ExtensionKind:
            np.testing.assert_array_equal(imag_boundary(n, kind, -5.0), np.zeros((n, n)))
    assert imag_boundary(1, F, 4.0)[0, 0] == pytest.approx(2.0, rel=1e-15)
    np.testing.assert_allclose(imag_boundary(2, K, 1.0), [[1, -1], [-1, 1]], rtol=1e-15)


@pytest.mark.parametrize("kind", list(ExtensionKind))
@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_imag_boundary_matches_limit(kind, n):
    for x in np.linspace(0.05, 20.0, 13):
        np.testing.assert_allclose(imag_boundary(n, kind, x), weyl_boundary(n, kind, x).imag,
                                   rtol=1e-12, atol=1e-14 * np.abs(weyl_boundary(n, kind, x)).max())


def test_sharp_constants_examples():
    assert sharp_constants(1) == [1.0]
    assert sharp_constants(2) == pytest.approx([2 ** 0.25, 2 ** 0.25], rel=1e-15)
    a = np.array(sharp_constants(3))
    mf = np.diag(weyl_boundary(3, F, -1.0)).real
    mk = np.diag(weyl_boundary(3, K, -1.0)).real
    np.testing.assert_allclose(np.sqrt(-mf), a, rtol=1e-12)
    np.testing.assert_allclose(np.sqrt(mk), a, rtol=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=12), points, st.sampled_from(list(ExtensionKind)))
def test_nevanlinna_property(n, lam, kind):
    m = weyl_closed_form(n, kind, lam)
    im_part = (m - m.conj().T) / 2j
    assert hermitian_min_eig(im_part) >= -1e-10 * np.linalg.norm(m)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10), points, st.sampled_from(list(ExtensionKind)),
       st.floats(min_value=0.2, max_value=5.0))
def test_scaling_covariance(n, lam, kind, s):
    d = scaling_matrix(n, kind, s)
    lhs = weyl_closed_form(n, kind, lam.scaled(s ** (2 * n)))
    rhs = d @ weyl_closed_form(n, kind, lam) @ d
    assert np.max(np.abs(lhs - rhs) / np.abs(rhs)) <= 1e-12


@given(st.integers(min_value=1, max_value=64))
def test_denominators_never_vanish(n):
    a = math.pi / (2 * n)
    assert min(math.sin(m * a) for m in range(1, 2 * n)) > 0
    assert np.all(np.isfinite(weyl_closed_form(n, F, I)))
