"""Finite frames in C^d: analysis, synthesis, frame operator, duals.

At finite length every sequence is Bessel and every series converges
unconditionally, so those hypotheses never need checking here.  A sequence
is a frame exactly when it spans C^d, and minimal exactly when it is
linearly independent.
"""
import enum
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ContractViolation, NotAFrame

FRAME_TOL = 1e-10
DUAL_TOL = 1e-9


class FrameSeq:
    """An ordered sequence of N vectors in C^d.

    Stored as the d-by-N synthesis matrix whose n-th column is phi_n.  The
    array is copied and marked read-only, so instances can be shared freely.
    """

    __slots__ = ("_mat",)

    def __init__(self, matrix):
        mat = np.array(linalg.as_matrix(matrix, "frame matrix"), dtype=complex)
        mat.setflags(write=False)
        self._mat = mat

    @classmethod
    def from_vectors(cls, vectors):
        vecs = [linalg.as_vector(v, "frame vector") for v in vectors]
        if not vecs:
            raise ContractViolation("a frame sequence needs at least one vector")
        dims = {v.size for v in vecs}
        if len(dims) != 1:
            raise ContractViolation(f"frame vectors have mixed dimensions {sorted(dims)}")
        return cls(np.column_stack(vecs))

    @property
    def d(self):
        return self._mat.shape[0]

    @property
    def N(self):
        return self._mat.shape[1]

    @property
    def synthesis_matrix(self):
        """T: the d x N matrix with columns phi_n."""
        return self._mat

    @property
    def analysis_matrix(self):
        """U = T^*: the N x d matrix with rows phi_n^*."""
        return self._mat.conj().T

    @property
    def vectors(self):
        return [self._mat[:, n].copy() for n in range(self.N)]

    def __len__(self):
        return self.N

    def __getitem__(self, n):
        return self._mat[:, n].copy()

    def scaled(self, weights):
        """The sequence (w_n phi_n)."""
        w = linalg.as_vector(weights, "weights")
        if w.size != self.N:
            raise ContractViolation(f"need {self.N} weights, got {w.size}")
        return FrameSeq(self._mat * w)

    def transformed(self, op):
        """The sequence (G phi_n) for a d x d matrix G."""
        return FrameSeq(linalg.as_matrix(op) @ self._mat)

    def allclose(self, other, atol=1e-12):
        return self._mat.shape == other._mat.shape and np.allclose(
            self._mat, other._mat, rtol=0, atol=atol
        )

    def __repr__(self):
        return f"FrameSeq(d={self.d}, N={self.N})"


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float


class FrameKind(enum.Enum):
    SPANNING_FRAME = "SpanningFrame"
    RIESZ_BASIS = "RieszBasis"
    NON_SPANNING = "NonSpanning"


@dataclass(frozen=True)
class FrameClass:
    kind: FrameKind
    minimal: bool

    @property
    def is_frame(self):
        return self.kind is not FrameKind.NON_SPANNING


def analysis(phi, h):
    """Coefficients (<h, phi_n>)_n, conjugate-linear in phi."""
    h = linalg.as_vector(h)
    if h.size != phi.d:
        raise ContractViolation(f"vector has dim {h.size}, frame lives in C^{phi.d}")
    return phi.analysis_matrix @ h


def synthesis(phi, c):
    """The vector sum_n c_n phi_n."""
    c = linalg.as_vector(c, "coefficients")
    if c.size != phi.N:
        raise ContractViolation(f"need {phi.N} coefficients, got {c.size}")
    return phi.synthesis_matrix @ c


def frame_operator(phi):
    t = phi.synthesis_matrix
    s = t @ t.conj().T
    return 0.5 * (s + s.conj().T)


def frame_bounds(phi):
    """Optimal bounds: extreme eigenvalues of the frame operator.

    The lower bound is clamped at zero; round-off can push a vanishing
    eigenvalue slightly negative.
    """
    w, _ = linalg.hermitian_eig(frame_operator(phi))
    return FrameBounds(lower=max(float(w[0]), 0.0), upper=max(float(w[-1]), 0.0))


def is_frame(phi, tol=FRAME_TOL):
    b = frame_bounds(phi)
    return b.upper > 0 and b.lower > tol * b.upper


def _require_frame(phi, tol=FRAME_TOL, name="sequence"):
    if not is_frame(phi, tol):
        raise NotAFrame(f"{name} does not span C^{phi.d}")


def _canonical_dual_matrix(t):
    # S^{-1} T = U diag(1/s) V^* from T = U diag(s) V^*; avoids squaring cond(T)
    u, s, vh = linalg.svd(t)
    return (u / s) @ vh


def canonical_dual(phi, tol=FRAME_TOL):
    """The canonical dual (S^{-1} phi_n)."""
    _require_frame(phi, tol)
    return FrameSeq(_canonical_dual_matrix(phi.synthesis_matrix))


def is_dual_pair(phi, phi_d, tol=DUAL_TOL):
    """True iff h = sum_n <h, phi_n> phi_d_n for every h, i.e. T_{phi_d} U_phi = I."""
    if (phi.d, phi.N) != (phi_d.d, phi_d.N):
        raise ContractViolation("dual candidate has a different shape")
    resid = phi_d.synthesis_matrix @ phi.analysis_matrix - np.eye(phi.d)
    return bool(np.linalg.norm(resid) <= tol)


def random_dual(phi, seed=None, tol=FRAME_TOL):
    """A seeded non-canonical dual S^{-1}T + W (I - U S^{-1} T).

    ``seed`` may be an int or a :class:`numpy.random.Generator`.  When N = d
    the correction term vanishes and the canonical dual is returned.
    """
    _require_frame(phi, tol)
    rng = np.random.default_rng(seed)
    t = phi.synthesis_matrix
    u = phi.analysis_matrix
    canon = _canonical_dual_matrix(t)
    w = rng.standard_normal((phi.d, phi.N)) + 1j * rng.standard_normal((phi.d, phi.N))
    return FrameSeq(canon + w @ (np.eye(phi.N) - u @ canon))


def classify(phi, tol=FRAME_TOL, rank_tol=linalg.RANK_TOL):
    spanning = is_frame(phi, tol)
    minimal = linalg.rank(phi.synthesis_matrix, rank_tol) == phi.N
    if not spanning:
        kind = FrameKind.NON_SPANNING
    elif phi.N == phi.d:
        kind = FrameKind.RIESZ_BASIS
    else:
        kind = FrameKind.SPANNING_FRAME
    return FrameClass(kind=kind, minimal=minimal)


def _check_same_shape(phi, psi):
    if (phi.d, phi.N) != (psi.d, psi.N):
        raise ContractViolation(
            f"sequences differ in shape: (d={phi.d}, N={phi.N}) vs (d={psi.d}, N={psi.N})"
        )


def is_partial_equivalent(psi, phi, tol=linalg.RANK_TOL):
    """True iff range(U_phi) is contained in range(U_psi).

    Equivalently phi_n = Q psi_n for some operator Q.
    """
    _check_same_shape(phi, psi)
    return linalg.column_space_leq(phi.analysis_matrix, psi.analysis_matrix, tol)


def are_equivalent(phi, psi, tol=linalg.RANK_TOL):
    """True iff range(U_phi) == range(U_psi), i.e. psi_n = G phi_n for invertible G."""
    _check_same_shape(phi, psi)
    _require_frame(phi, name="first sequence")
    _require_frame(psi, name="second sequence")
    return is_partial_equivalent(psi, phi, tol) and is_partial_equivalent(phi, psi, tol)
