import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kerrscissors.fock import (
    FockDims,
    annihilation_matrix,
    basis_state,
    embed_qubit_state,
    levels,
    number_matrix,
    partial_trace,
    qubit_indices,
    random_density_matrix,
    tensor_index,
)
from kerrscissors.measures import BELL_STATES

dims_st = st.tuples(st.integers(2, 7), st.integers(2, 7)).map(lambda d: FockDims(*d))


def test_dims_validation():
    assert FockDims(3, 4).total == 12
    for bad in [(1, 3), (3, 0), (2.5, 3)]:
        with pytest.raises(ValueError):
            FockDims(*bad)


def test_annihilation_two_level():
    a = annihilation_matrix((2, 2), "a")
    np.testing.assert_array_equal(a @ basis_state(1, 0, (2, 2)), basis_state(0, 0, (2, 2)))
    np.testing.assert_array_equal(a @ basis_state(0, 0, (2, 2)), np.zeros(4))


def test_sqrt_matrix_element():
    dims = FockDims(3, 2)
    a = annihilation_matrix(dims, "a")
    assert a[tensor_index(1, 0, dims), tensor_index(2, 0, dims)] == pytest.approx(np.sqrt(2))


@given(dims_st)
def test_commutator_diagonal_away_from_edge(dims):
    for mode, cut in (("a", dims.dim_a), ("b", dims.dim_b)):
        a = annihilation_matrix(dims, mode)
        comm = a @ a.conj().T - a.conj().T @ a
        for m in range(dims.dim_a):
            for n in range(dims.dim_b):
                level = m if mode == "a" else n
                if level < cut - 1:
                    i = tensor_index(m, n, dims)
                    assert comm[i, i] == pytest.approx(1.0, abs=1e-14)


@given(dims_st)
def test_number_operator_diagonal(dims):
    na, nb = number_matrix(dims, "a"), number_matrix(dims, "b")
    a = annihilation_matrix(dims, "a")
    np.testing.assert_allclose(a.conj().T @ a, na, atol=1e-14)
    for i in range(dims.total):
        m, n = levels(i, dims)
        assert na[i, i] == m and nb[i, i] == n


def test_tensor_index_examples():
    assert tensor_index(0, 0, (20, 20)) == 0
    assert tensor_index(1, 1, (20, 20)) == 21
    with pytest.raises(IndexError):
        tensor_index(20, 0, (20, 20))


@given(dims_st)
def test_tensor_index_bijection(dims):
    seen = {tensor_index(m, n, dims) for m in range(dims.dim_a) for n in range(dims.dim_b)}
    assert seen == set(range(dims.total))
    for i in range(dims.total):
        assert tensor_index(*levels(i, dims), dims) == i


def test_partial_trace_product_and_bell():
    dims = FockDims(2, 2)
    rho = np.outer(basis_state(0, 0, dims), basis_state(0, 0, dims))
    np.testing.assert_allclose(partial_trace(rho, dims, "a"), np.diag([1, 0]))
    b1 = BELL_STATES[0]
    np.testing.assert_allclose(partial_trace(np.outer(b1, b1.conj()), dims, "a"), 0.5 * np.eye(2), atol=1e-15)


@given(dims_st, st.integers(0, 2**32 - 1))
def test_partial_trace_preserves_trace_and_linearity(dims, seed):
    rng = np.random.default_rng(seed)
    r1 = random_density_matrix(dims.total, rng)
    r2 = random_density_matrix(dims.total, rng)
    for keep in ("a", "b"):
        assert np.trace(partial_trace(r1, dims, keep)) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(
            partial_trace(0.3 * r1 + 0.7 * r2, dims, keep),
            0.3 * partial_trace(r1, dims, keep) + 0.7 * partial_trace(r2, dims, keep),
            atol=1e-13,
        )


def test_embed_qubit_state_places_amplitudes():
    dims = FockDims(4, 3)
    psi = embed_qubit_state([1, 2, 3, 4], dims)
    np.testing.assert_array_equal(psi[qubit_indices(dims)], [1, 2, 3, 4])
    assert np.count_nonzero(psi) == 4
