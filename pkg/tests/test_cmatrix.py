import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreath_states import cmatrix as cm


def random_hermitian(rng, n, rank=None):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if rank is not None:
        z[:, rank:] = 0
        return z @ z.conj().T
    return z + z.conj().T


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10_000))
def test_eigenvalues_match_numpy(n, seed):
    rng = np.random.default_rng(seed)
    m = random_hermitian(rng, n)
    w, v = cm.hermitian_eig(m)
    assert np.allclose(w, np.linalg.eigvalsh(m)[::-1], atol=1e-10)
    assert np.allclose(m @ v, v * w, atol=1e-9)
    assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-10)


def test_degenerate_spectrum():
    q, _ = np.linalg.qr(np.random.default_rng(1).normal(size=(4, 4)) + 0j)
    m = q @ np.diag([0.3, 0.3, -0.2, 0.0]) @ q.conj().T
    w, _ = cm.hermitian_eig(m)
    assert np.allclose(w, [0.3, 0.3, 0.0, -0.2], atol=1e-12)


def test_eigenvector_phase_convention():
    _, v = cm.hermitian_eig(np.array([[0, 1j], [-1j, 0]]))
    for k in range(2):
        nz = np.flatnonzero(np.abs(v[:, k]) > 1e-12)[0]
        assert abs(v[nz, k].imag) < 1e-14 and v[nz, k].real > 0


def test_non_hermitian_rejected():
    with pytest.raises(cm.MatrixError):
        cm.hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_abs_op():
    m = np.diag([0.5, -0.25])
    assert np.allclose(cm.abs_op(m), np.diag([0.5, 0.25]))


def test_psd():
    assert cm.is_psd(np.diag([1.0, 0.0]))
    assert not cm.is_psd(np.diag([1.0, -1e-3]))
    assert cm.min_eigenvalue(np.diag([2.0, -1.0])) == pytest.approx(-1.0)


@pytest.mark.parametrize("rank", [0, 1, 2, 4])
def test_rank_and_basis(rank):
    rng = np.random.default_rng(rank)
    m = random_hermitian(rng, 4, rank=rank)
    assert cm.rank(m) == rank
    q = cm.orthonormal_basis(m)
    assert q.shape == (4, rank)
    assert np.allclose(q.conj().T @ q, np.eye(rank), atol=1e-10)
    # the basis spans the column space
    assert np.allclose(q @ q.conj().T @ m, m, atol=1e-9)


def test_rank_sees_small_singular_values():
    m = np.diag([1.0, 1e-7])
    assert cm.rank(m) == 2


def test_kron_and_direct_sum():
    a, b = np.array([[1, 2], [3, 4]]), np.array([[0, 1], [1, 0]])
    assert np.array_equal(cm.kron(a, b), np.kron(a, b))
    assert np.array_equal(cm.kron_all([a, b, a]), np.kron(np.kron(a, b), a))
    ds = cm.direct_sum(a, np.array([[5]]))
    assert ds.shape == (3, 3) and ds[2, 2] == 5 and ds[0, 2] == 0


def test_literal_round_trip():
    m = np.array([[1 + 2j, -0.5], [0, 3j]])
    assert np.array_equal(cm.matrix_from_literal(cm.matrix_to_literal(m)), m)
    assert np.array_equal(cm.matrix_from_literal([[1, [0, 1]]]), np.array([[1, 1j]]))


@pytest.mark.parametrize("bad", [[[1, 2], [3]], [[[1, 2, 3]]]])
def test_literal_rejects(bad):
    with pytest.raises(cm.MatrixError):
        cm.matrix_from_literal(bad)


def test_unitary_and_hermitian_predicates():
    assert cm.is_unitary(np.array([[0, 1j], [1j, 0]]))
    assert not cm.is_unitary(np.eye(2) * 2)
    assert cm.is_hermitian(np.array([[1, 1j], [-1j, 2]]))
    assert not cm.is_hermitian(np.array([[1, 1j], [1j, 2]]))
