import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framemult.errors import NotHermitian, NotInvertible
from framemult.numerics import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_matrix,
    as_vector,
    condition_number,
    pseudoinverse,
    relative_residual,
    spectrum_hermitian,
    try_invert,
)


def test_tolerance_config_defaults():
    assert DEFAULT_TOL.rel_eps == 1e-9
    assert DEFAULT_TOL.cond_max == 1e12


def test_tolerance_config_rejects_bad_values():
    with pytest.raises(ValueError):
        ToleranceConfig(rel_eps=0.0)
    with pytest.raises(ValueError):
        ToleranceConfig(rel_eps=-1e-9)
    with pytest.raises(ValueError):
        ToleranceConfig(cond_max=0.5)


def test_as_matrix_rejects_non_matrices():
    with pytest.raises(ValueError):
        as_matrix([1.0, 2.0])
    with pytest.raises(ValueError):
        as_matrix([[np.inf, 0.0], [0.0, 1.0]])


def test_as_vector_length_check():
    v = as_vector([1.0, 2.0], length=2)
    assert v.dtype == np.complex128
    with pytest.raises(ValueError):
        as_vector([1.0, 2.0, 3.0], length=2)


def test_adjoint_is_conjugate_transpose():
    a = np.array([[1.0 + 2.0j, 3.0], [0.0, -1.0j]])
    expected = np.array([[1.0 - 2.0j, 0.0], [3.0, 1.0j]])
    assert np.array_equal(adjoint(a), expected)


def test_pseudoinverse_rank_deficient_oracle():
    # pinv of diag(2, 0) is diag(1/2, 0): invert on the range, kill the kernel
    a = np.array([[2.0, 0.0], [0.0, 0.0]])
    expected = np.array([[0.5, 0.0], [0.0, 0.0]])
    assert np.allclose(pseudoinverse(a), expected, atol=1e-14, rtol=0.0)


def test_spectrum_hermitian_oracle():
    # [[2,1],[1,2]] has eigenvalues 1 and 3
    eigs = spectrum_hermitian(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(eigs, [1.0, 3.0], atol=1e-12, rtol=0.0)


def test_spectrum_hermitian_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        spectrum_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        spectrum_hermitian(np.ones((2, 3)))


def test_try_invert_oracle():
    # inverse of the unit shear flips the off-diagonal sign
    a = np.array([[1.0, 1.0], [0.0, 1.0]])
    expected = np.array([[1.0, -1.0], [0.0, 1.0]])
    assert np.allclose(try_invert(a), expected, atol=1e-14, rtol=0.0)


def test_try_invert_rejects_singular():
    with pytest.raises(NotInvertible):
        try_invert(np.zeros((2, 2)))
    with pytest.raises(NotInvertible) as info:
        try_invert(np.array([[1.0, 0.0], [0.0, 1e-15]]))
    assert info.value.sigma_max > 0
    assert info.value.sigma_ratio < 1.0 / DEFAULT_TOL.cond_max


def test_try_invert_respects_cond_max_policy():
    a = np.diag([1.0, 1e-6])
    try_invert(a)  # fine under the default ceiling
    with pytest.raises(NotInvertible):
        try_invert(a, ToleranceConfig(cond_max=1e5))


def test_condition_number_identity():
    assert condition_number(np.eye(3)) == pytest.approx(1.0)


def test_relative_residual_zero_reference_falls_back_to_absolute():
    zero = np.zeros((2, 2))
    assert relative_residual(zero, zero) == 0.0
    assert relative_residual(np.eye(2), zero) == pytest.approx(np.sqrt(2.0))


# small integer entries keep the nonzero singular values away from the
# truncation cutoff, so the identities hold at float precision
complex_entries = st.builds(
    complex,
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
)


@st.composite
def small_matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    data = draw(
        st.lists(
            st.lists(complex_entries, min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return np.array(data, dtype=np.complex128)


@given(small_matrices())
def test_adjoint_is_an_involution(a):
    assert np.array_equal(adjoint(adjoint(a)), a)


@settings(deadline=None)
@given(small_matrices())
def test_pseudoinverse_satisfies_moore_penrose(a):
    p = pseudoinverse(a)
    scale = 1.0 + float(np.linalg.norm(a))
    assert np.linalg.norm(a @ p @ a - a) <= 1e-10 * scale
    assert np.linalg.norm(p @ a @ p - p) <= 1e-10 * (1.0 + float(np.linalg.norm(p)))
