"""Parameter bundles and pairwise star kernels."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genstar import (
    SingularParameterError,
    ValidationError,
    complex_coefficients,
    kernel_phase,
    make_params,
    preset_params,
)

finite_complex = st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False)


def test_make_params_moyal_trivial():
    p = make_params(1.0, 0, 0, 0)
    assert p.theta == 1.0
    assert p.phi11 == p.phi12 == p.phi22 == 0


def test_make_params_voros_entries():
    p = make_params(1.0, -1j, 0, -1j)
    assert p.phi11 == -1j and p.phi22 == -1j and p.phi12 == 0


def test_make_params_rejects_nonfinite():
    with pytest.raises(ValidationError, match="phi11"):
        make_params(1.0, float("nan"), 0, 0)
    with pytest.raises(ValidationError, match="theta"):
        make_params(float("inf"))
    with pytest.raises(ValidationError, match="theta"):
        make_params(1 + 1j)


def test_preset_moyal():
    p = preset_params("moyal", 0.5)
    assert p.theta == 0.5
    assert p.is_moyal()


def test_preset_voros():
    p = preset_params("voros", 0.5)
    assert p.phi11 == -0.5j
    assert p.phi12 == 0
    assert p.phi22 == -0.5j


def test_preset_voros_theta_zero_degenerates():
    p = preset_params("voros", 0.0)
    assert p.theta == 0.0
    assert p.is_moyal()


def test_preset_unknown_kind():
    with pytest.raises(ValidationError, match="preset"):
        preset_params("weyl", 1.0)


def test_kernel_phase_moyal_cross():
    p = preset_params("moyal", 1.0)
    assert kernel_phase((1, 0), (0, 1), p) == pytest.approx(-0.5j)


def test_kernel_phase_voros_damping():
    p = preset_params("voros", 1.0)
    assert kernel_phase((1, 0), (1, 0), p) == pytest.approx(-0.5)


def test_kernel_phase_zero_vector():
    p = make_params(0.7, 0.1 + 0.2j, -0.3j, 1.0)
    assert kernel_phase((2.0, -1.0), (0.0, 0.0), p) == 0


@settings(max_examples=50, deadline=None)
@given(a=finite_complex, b=finite_complex, p1=finite_complex, p2=finite_complex,
       q1=finite_complex, q2=finite_complex)
def test_kernel_phase_bilinear(a, b, p1, p2, q1, q2):
    params = make_params(1.3, 0.2 - 0.1j, 0.4j, -0.6)
    lhs = kernel_phase((a * p1, a * p2), (b * q1, b * q2), params)
    rhs = a * b * kernel_phase((p1, p2), (q1, q2), params)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_kernel_phase_swap_leaves_phi_part():
    params = make_params(0.8, 0.3 + 0.1j, -0.2, 0.5j)
    rng = np.random.default_rng(3)
    for _ in range(25):
        p = rng.uniform(-2, 2, 2)
        q = rng.uniform(-2, 2, 2)
        total = kernel_phase(p, q, params) + kernel_phase(q, p, params)
        phi = (
            params.phi11 * p[0] * q[0]
            + params.phi12 * (p[0] * q[1] + p[1] * q[0])
            + params.phi22 * p[1] * q[1]
        )
        assert abs(total - (-1j) * phi) < 1e-12


def test_kernel_phase_antisymmetric_for_moyal():
    params = preset_params("moyal", 1.7)
    rng = np.random.default_rng(4)
    for _ in range(25):
        p = rng.uniform(-2, 2, 2)
        q = rng.uniform(-2, 2, 2)
        assert abs(kernel_phase(p, q, params) + kernel_phase(q, p, params)) < 1e-12


def test_complex_coefficients_moyal():
    c = complex_coefficients(preset_params("moyal", 1.0))
    assert c.astuple() == (0j, 0.5 + 0j, -0.5 + 0j, 0j)


def test_complex_coefficients_voros():
    c = complex_coefficients(preset_params("voros", 1.0))
    assert c.astuple() == (0j, 1.0 + 0j, 0j, 0j)


def test_complex_coefficients_derived_point():
    # direct substitution oracle: theta=2, phi11=4i gives
    # (i/8)(4i, 4i-4i, 4i+4i, 4i) = (-1/2, 0, -1, -1/2)
    c = complex_coefficients(make_params(2.0, 4j, 0, 0))
    expected = (-0.5 + 0j, 0j, -1.0 + 0j, -0.5 + 0j)
    assert max(abs(a - b) for a, b in zip(c.astuple(), expected)) < 1e-15


def test_complex_coefficients_theta_zero_raises():
    with pytest.raises(SingularParameterError):
        complex_coefficients(make_params(0.0, 1.0, 0, 0))


def test_coefficient_difference_is_unity():
    # czzbar - czbarz = (i/4theta)(-4i theta) = 1 for every parameter set
    rng = np.random.default_rng(5)
    for _ in range(20):
        params = make_params(
            rng.uniform(0.1, 2.0),
            complex(*rng.uniform(-1, 1, 2)),
            complex(*rng.uniform(-1, 1, 2)),
            complex(*rng.uniform(-1, 1, 2)),
        )
        c = complex_coefficients(params)
        assert abs((c.c_zzbar - c.c_zbarz) - 1.0) < 1e-12


def test_coefficients_invert_to_parameters():
    # The four coefficient equations are linear and homogeneous in
    # (phi11, phi12, phi22, theta), so the parameter vector spans the
    # null space; fixing the theta component recovers Phi.
    rng = np.random.default_rng(6)
    for _ in range(20):
        theta = rng.uniform(0.1, 2.0)
        phi = [complex(*rng.uniform(-1, 1, 2)) for _ in range(3)]
        params = make_params(theta, *phi)
        g = complex_coefficients(params).astuple()
        rows = [
            [1j, -2.0, -1j, -4.0 * g[0]],
            [1j, 0.0, 1j, 2.0 - 4.0 * g[1]],
            [1j, 0.0, 1j, -2.0 - 4.0 * g[2]],
            [1j, 2.0, -1j, -4.0 * g[3]],
        ]
        a = np.array(rows, dtype=complex)
        _, s, vh = np.linalg.svd(a)
        assert s[-1] < 1e-12  # the parameter direction is annihilated
        assert s[-2] > 1e-6  # and it is the only one
        v = vh[-1].conj()
        v = v * (theta / v[3])
        assert abs(v[0] - params.phi11) < 1e-12
        assert abs(v[1] - params.phi12) < 1e-12
        assert abs(v[2] - params.phi22) < 1e-12
        assert abs(v[3].imag) < 1e-12


def test_kernel_matrix_entries():
    params = make_params(2.0, 1.0, 3.0, -1.0)
    k11, k12, k21, k22 = params.kernel_matrix()
    assert k11 == 0.5j * 1.0
    assert k12 == 0.5j * 5.0
    assert k21 == 0.5j * 1.0
    assert k22 == 0.5j * -1.0


def test_params_are_frozen():
    params = make_params(1.0)
    with pytest.raises(AttributeError):
        params.theta = 2.0


def test_moyal_twin():
    params = make_params(1.5, 1j, 2, 3)
    twin = params.moyal()
    assert twin.theta == 1.5 and twin.is_moyal()
