"""Dense complex linear algebra on numpy ``complex128`` arrays.

Kronecker products use the numpy convention: in ``kron(A, B)`` the left
factor is the slow index, row ``i_A * rows_B + i_B``.  The tensor-model
code depends on that ordering.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "MatrixError",
    "HERMITIAN_TOL",
    "as_matrix",
    "add",
    "scale",
    "mul",
    "adjoint",
    "trace",
    "kron",
    "kron_all",
    "direct_sum",
    "is_hermitian",
    "is_unitary",
    "hermitian_eig",
    "abs_op",
    "is_psd",
    "min_eigenvalue",
    "rank",
    "orthonormal_basis",
    "matrix_from_literal",
    "matrix_to_literal",
]

HERMITIAN_TOL = 1e-12
JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class MatrixError(ValueError):
    pass


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise MatrixError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise MatrixError(f"shape mismatch {a.shape} vs {b.shape}")
    return a + b


def scale(c: complex, a) -> np.ndarray:
    return complex(c) * as_matrix(a)


def mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise MatrixError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise MatrixError("trace of a non-square matrix")
    return complex(np.trace(a))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors) -> np.ndarray:
    out = np.eye(1, dtype=np.complex128)
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return out


def direct_sum(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.complex128)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return a.size == 0 or float(np.max(np.abs(a - a.conj().T))) <= tol


def is_unitary(a, tol: float = 1e-10) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return a.size == 0 or float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0])))) <= tol


def _require_hermitian(m, tol=HERMITIAN_TOL) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise MatrixError(f"expected a square matrix, got {a.shape}")
    if a.size and float(np.max(np.abs(a - a.conj().T))) > tol * max(1.0, float(np.max(np.abs(a)))):
        raise MatrixError("matrix is not Hermitian")
    return a


def hermitian_eig(m, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with ``w`` real and descending and ``M V = V diag(w)``.
    Each eigenvector is phased so its first entry of modulus above 1e-12 is
    real and positive.
    """
    a = _require_hermitian(m, tol).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 0:
        return np.zeros(0), v
    a = 0.5 * (a + a.conj().T)
    fro = float(np.linalg.norm(a))
    thresh = JACOBI_REL_TOL * fro
    for _ in range(JACOBI_MAX_SWEEPS):
        if float(np.linalg.norm(a - np.diag(np.diag(a)))) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0 or mag <= 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on columns p, q
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                cols = a[:, [p, q]] @ g
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = g.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0.0
                vc = v[:, [p, q]] @ g
                v[:, p], v[:, q] = vc[:, 0], vc[:, 1]
    w = np.real(np.diag(a)).copy()
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    for k in range(n):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            ph = col[nz[0]] / abs(col[nz[0]])
            v[:, k] = col / ph
    return w, v


def abs_op(m) -> np.ndarray:
    """|M| = V diag(|w|) V* for Hermitian M."""
    w, v = hermitian_eig(m)
    return (v * np.abs(w)) @ v.conj().T


def min_eigenvalue(m) -> float:
    w, _ = hermitian_eig(m)
    return float(w[-1]) if w.size else 0.0


def is_psd(m, tol: float = 1e-9) -> bool:
    return min_eigenvalue(m) >= -tol


def _singular_pairs(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Singular values (descending) and left singular vectors of ``a``.

    Uses the Hermitian dilation [[0, A], [A*, 0]], whose eigenvalues are
    +-sigma, so small singular values are not squared away.
    """
    m, n = a.shape
    dil = np.zeros((m + n, m + n), dtype=np.complex128)
    dil[:m, m:] = a
    dil[m:, :m] = a.conj().T
    w, v = hermitian_eig(dil, tol=1e-8)
    k = min(m, n)
    sv = np.clip(w[:k], 0.0, None)
    u = v[:m, :k] * np.sqrt(2.0)
    return sv, u


def rank(m, tol: float = 1e-10) -> int:
    """Numerical rank: singular values above ``tol`` relative to the largest (floor 1)."""
    a = as_matrix(m)
    if a.size == 0:
        return 0
    sv, _ = _singular_pairs(a)
    return int(np.sum(sv > tol * max(1.0, float(sv[0]))))


def orthonormal_basis(vectors, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal columns spanning the column space of ``vectors``."""
    a = as_matrix(vectors)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128)
    sv, u = _singular_pairs(a)
    keep = sv > tol * max(1.0, float(sv[0]))
    basis = u[:, keep]
    # re-orthonormalise: degenerate singular values leave u only approximately orthonormal
    q, _ = np.linalg.qr(basis)
    return q[:, : basis.shape[1]]


def matrix_from_literal(obj) -> np.ndarray:
    """Nested rows whose entries are ``[re, im]`` pairs (plain numbers also accepted)."""
    rows = []
    for row in obj:
        out = []
        for x in row:
            if isinstance(x, (list, tuple)):
                if len(x) != 2:
                    raise MatrixError(f"complex entry must be [re, im], got {x!r}")
                out.append(complex(float(x[0]), float(x[1])))
            else:
                out.append(complex(float(x)))
        rows.append(out)
    if not rows:
        return np.zeros((0, 0), dtype=np.complex128)
    if len({len(r) for r in rows}) != 1:
        raise MatrixError("ragged matrix literal")
    return np.array(rows, dtype=np.complex128)


def matrix_to_literal(m) -> list:
    a = as_matrix(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]
