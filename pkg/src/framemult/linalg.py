"""Dense complex linear algebra on C^d.

Everything here is built on cyclic Jacobi rotations: a two-sided sweep for
Hermitian eigenproblems and a one-sided (Hestenes) sweep for the SVD.  The
one-sided variant orthogonalises columns of A directly, which is the same
rotation sequence as a Jacobi sweep on A*A but without ever forming A*A, so
singular values keep absolute accuracy ~eps*sigma_max.  That is what makes a
relative rank threshold of 1e-10 meaningful.

Vectors are 1-D ``complex128`` arrays, matrices are 2-D ``complex128`` arrays.
"""
import numpy as np

from .errors import ContractViolation, SingularMatrix

HERMITIAN_TOL = 1e-10
RANK_TOL = 1e-10

_EPS = np.finfo(float).eps
_MAX_SWEEPS = 100


def as_vector(x, name="vector"):
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ContractViolation(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ContractViolation(f"{name} has non-finite entries")
    return v


def as_matrix(a, name="matrix"):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ContractViolation(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractViolation(f"{name} has non-finite entries")
    return m


def standard_basis(d):
    """Return the identity columns e_1, ..., e_d of C^d."""
    if int(d) != d or d < 1:
        raise ContractViolation(f"dimension must be a positive integer, got {d!r}")
    eye = np.eye(int(d), dtype=complex)
    return [eye[:, k].copy() for k in range(int(d))]


def _rotation(app, aqq, apq):
    """2x2 unitary G with G^* [[app, apq], [conj(apq), aqq]] G diagonal.

    ``app`` and ``aqq`` are real, ``apq`` complex and nonzero.
    """
    r = abs(apq)
    phase = apq / r
    theta = (aqq - app) / (2.0 * r)
    t = 1.0 / (abs(theta) + np.hypot(theta, 1.0))
    if theta < 0:
        t = -t
    c = 1.0 / np.hypot(t, 1.0)
    s = t * c
    # diag(1, conj(phase)) makes the off-diagonal real, then a real rotation.
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])


def hermitian_eig(a, herm_tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    a : (n, n) array_like
        Hermitian within ``herm_tol`` (relative Frobenius norm of A - A*).

    Returns
    -------
    w : (n,) ndarray of float
        Eigenvalues in ascending order.
    v : (n, n) ndarray
        Unitary matrix whose columns are the matching eigenvectors,
        so that ``a = v @ diag(w) @ v.conj().T``.
    """
    a = as_matrix(a)
    n, m = a.shape
    if n != m:
        raise ContractViolation(f"hermitian_eig needs a square matrix, got {a.shape}")
    norm = np.linalg.norm(a)
    if norm > 0 and np.linalg.norm(a - a.conj().T) > herm_tol * norm:
        raise ContractViolation("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    if norm > 0:
        target = _EPS * norm
        for _ in range(_MAX_SWEEPS):
            off = np.linalg.norm(a - np.diag(np.diag(a)))
            if off <= target:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if abs(apq) <= 0.1 * target / n:
                        continue
                    g = _rotation(a[p, p].real, a[q, q].real, apq)
                    idx = [p, q]
                    a[:, idx] = a[:, idx] @ g
                    a[idx, :] = g.conj().T @ a[idx, :]
                    a[p, q] = a[q, p] = 0.0
                    a[p, p] = a[p, p].real
                    a[q, q] = a[q, q].real
                    v[:, idx] = v[:, idx] @ g
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _hestenes(x):
    # x is m-by-n with m >= n; returns (x @ V, V) with orthogonal columns
    x = x.copy()
    m, n = x.shape
    v = np.eye(n, dtype=complex)
    # columns this small are numerically zero; rotating them only underflows
    negligible = (_EPS * np.linalg.norm(x)) ** 2 * 1e-4
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            xi = x[:, i]
            for j in range(i + 1, n):
                xj = x[:, j]
                alpha = np.vdot(xi, xi).real
                beta = np.vdot(xj, xj).real
                gamma = np.vdot(xi, xj)
                if min(alpha, beta) <= negligible or abs(gamma) <= _EPS * np.sqrt(alpha) * np.sqrt(beta):
                    continue
                rotated = True
                g = _rotation(alpha, beta, gamma)
                idx = [i, j]
                x[:, idx] = x[:, idx] @ g
                v[:, idx] = v[:, idx] @ g
                xi = x[:, i]
        if not rotated:
            break
    return x, v


def svd(a):
    """Thin singular value decomposition ``a = u @ diag(s) @ vh``.

    Singular values come back in descending order.  Columns of ``u`` that
    belong to zero singular values are zero rather than completed to an
    orthonormal set; nothing in this package needs them.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        u, s, vh = svd(a.conj().T)
        return vh.conj().T, s, u.conj().T
    x, v = _hestenes(a)
    s = np.linalg.norm(x, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    x = x[:, order]
    v = v[:, order]
    u = np.zeros_like(x)
    nz = s > 0
    u[:, nz] = x[:, nz] / s[nz]
    return u, s, v.conj().T


def singular_values(a):
    return svd(a)[1]


def rank(a, tol=RANK_TOL):
    """Number of singular values strictly above ``tol * sigma_max``."""
    if tol <= 0:
        raise ContractViolation("rank tolerance must be positive")
    s = singular_values(a)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def pinv(a, tol=RANK_TOL):
    """Moore-Penrose pseudoinverse, dropping singular values <= tol*sigma_max."""
    if tol < 0:
        raise ContractViolation("pinv tolerance must be non-negative")
    u, s, vh = svd(a)
    keep = s > tol * s[0] if s[0] > 0 else np.zeros_like(s, dtype=bool)
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    return (vh.conj().T * inv_s) @ u.conj().T


def inv(a, tol=RANK_TOL):
    """Inverse of a square matrix; raises :class:`SingularMatrix` if it has none."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ContractViolation(f"inverse needs a square matrix, got {a.shape}")
    u, s, vh = svd(a)
    if s[-1] <= tol * s[0]:
        cond = float("inf") if s[-1] == 0 else float(s[0] / s[-1])
        raise SingularMatrix(f"matrix is singular (condition estimate {cond:.3g})", cond)
    return (vh.conj().T / s) @ u.conj().T


def solve(a, b, tol=RANK_TOL):
    b = as_vector(b, "right-hand side")
    a = as_matrix(a)
    if a.shape[0] != b.size:
        raise ContractViolation(f"shape mismatch: {a.shape} vs {b.shape}")
    return inv(a, tol) @ b


def hermitian_inv(a, tol=RANK_TOL):
    """Inverse of a Hermitian positive definite matrix via :func:`hermitian_eig`."""
    w, v = hermitian_eig(a)
    if w[-1] <= 0 or w[0] <= tol * w[-1]:
        cond = float("inf") if w[0] <= 0 else float(w[-1] / w[0])
        raise SingularMatrix("Hermitian matrix is not positive definite", cond)
    return (v / w) @ v.conj().T


def column_space_leq(a, b, tol=RANK_TOL):
    """True iff range(a) is contained in range(b), by rank([b | a]) == rank(b)."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] != b.shape[0]:
        raise ContractViolation(f"row counts differ: {a.shape[0]} vs {b.shape[0]}")
    return rank(np.hstack([b, a]), tol) == rank(b, tol)
