"""Frame multipliers h -> sum_n m_n <h, psi_n> phi_n and their inverses.

Three routes to an inverse that is itself a multiplier:

* :func:`riesz_inverse` for Riesz bases: reciprocal symbol, swapped canonical duals.
* :func:`inverse_as_multiplier` for any invertible frame multiplier with a
  semi-normalized symbol, via the dual frames built in :func:`dagger_duals`.
* :func:`constant_symbol_inverse`, which decides from the analysis ranges
  whether the reciprocal-symbol/canonical-dual candidate is an inverse.
"""
import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frames, linalg
from .errors import (
    ContractViolation,
    NoFactorizationStrategy,
    NonConstantSymbol,
    NotADual,
    NotAFrame,
    NotInvertible,
    NotRiesz,
    NotSemiNormalized,
    SingularMatrix,
    ZeroSymbol,
)
from .frames import FrameKind, FrameSeq

SEMI_NORMALIZED_TOL = 1e-12
INVERSE_TOL = 1e-9


class SymbolSeq:
    """A finite complex symbol (m_n)."""

    __slots__ = ("_values",)

    def __init__(self, values):
        v = np.array(linalg.as_vector(values, "symbol"), dtype=complex)
        v.setflags(write=False)
        self._values = v

    @classmethod
    def constant(cls, c, n):
        return cls(np.full(n, c, dtype=complex))

    @property
    def values(self):
        return self._values

    def __len__(self):
        return self._values.size

    @property
    def inf_abs(self):
        return float(np.min(np.abs(self._values)))

    @property
    def sup_abs(self):
        return float(np.max(np.abs(self._values)))

    @property
    def semi_normalized(self):
        return self.sup_abs > 0 and self.inf_abs > SEMI_NORMALIZED_TOL * self.sup_abs

    def conj(self):
        return SymbolSeq(self._values.conj())

    def reciprocal(self):
        if not self.semi_normalized:
            raise NotSemiNormalized("cannot invert a symbol with (near-)zero entries")
        return SymbolSeq(1.0 / self._values)

    def is_constant(self, rtol=1e-12):
        v = self._values
        return bool(np.all(np.abs(v - v[0]) <= rtol * max(abs(v[0]), self.sup_abs)))

    def __repr__(self):
        return f"SymbolSeq(N={len(self)}, inf_abs={self.inf_abs:.3g}, sup_abs={self.sup_abs:.3g})"


@dataclass(frozen=True)
class Multiplier:
    """M_{m, phi, psi}: phi is the output (synthesis) side, psi the input side."""

    m: SymbolSeq
    phi: FrameSeq
    psi: FrameSeq

    def __post_init__(self):
        if not isinstance(self.m, SymbolSeq):
            object.__setattr__(self, "m", SymbolSeq(self.m))
        if not (len(self.m) == self.phi.N == self.psi.N):
            raise ContractViolation(
                f"length mismatch: symbol {len(self.m)}, phi {self.phi.N}, psi {self.psi.N}"
            )
        if self.phi.d != self.psi.d:
            raise ContractViolation(f"phi lives in C^{self.phi.d}, psi in C^{self.psi.d}")

    @property
    def d(self):
        return self.phi.d

    @property
    def N(self):
        return self.phi.N

    def adjoint(self):
        """M_{conj(m), psi, phi}, the Hilbert adjoint."""
        return Multiplier(self.m.conj(), self.psi, self.phi)


class InverseClass(enum.Enum):
    TWO_SIDED = "TwoSided"
    LEFT_ONLY = "LeftOnly"
    RIGHT_ONLY = "RightOnly"
    NOT_INVERTIBLE = "NotInvertible"


@dataclass(frozen=True)
class InverseReport:
    """Outcome of an inversion attempt.

    ``inverse_multiplier`` is only set when a multiplier formula is known to
    invert M; a two-sided result reached by the direct matrix test leaves it
    empty.  ``residual`` is the larger of the left/right residuals of the
    candidate that was examined.
    """

    classification: InverseClass
    inverse_multiplier: Optional[Multiplier]
    residual: float
    left_residual: float = 0.0
    right_residual: float = 0.0
    range_relation: str = ""


def apply(M, h):
    h = linalg.as_vector(h)
    if h.size != M.d:
        raise ContractViolation(f"vector has dim {h.size}, multiplier acts on C^{M.d}")
    coeffs = M.m.values * (M.psi.analysis_matrix @ h)
    return M.phi.synthesis_matrix @ coeffs


def to_matrix(M):
    """The d x d matrix T_phi diag(m) U_psi."""
    return (M.phi.synthesis_matrix * M.m.values) @ M.psi.analysis_matrix


def is_invertible(M, tol=linalg.RANK_TOL):
    s = linalg.singular_values(to_matrix(M))
    return bool(s[0] > 0 and s[-1] > tol * s[0])


def verify_inverse(M, M_inv):
    """Frobenius residuals (left, right) = (|Minv M - I|, |M Minv - I|)."""
    a = to_matrix(M)
    b = to_matrix(M_inv)
    eye = np.eye(M.d)
    return float(np.linalg.norm(b @ a - eye)), float(np.linalg.norm(a @ b - eye))


def _require_semi_normalized(M):
    if not M.m.semi_normalized:
        raise NotSemiNormalized(
            f"symbol is not semi-normalized (inf |m_n| = {M.m.inf_abs:.3g})"
        )


def riesz_inverse(M):
    """M^{-1} = M_{1/m, canonical dual of psi, canonical dual of phi} for Riesz bases."""
    for name, seq in (("phi", M.phi), ("psi", M.psi)):
        if frames.classify(seq).kind is not FrameKind.RIESZ_BASIS:
            raise NotRiesz(f"{name} is not a Riesz basis")
    _require_semi_normalized(M)
    return Multiplier(
        M.m.reciprocal(), frames.canonical_dual(M.psi), frames.canonical_dual(M.phi)
    )


def _dense_inverse(M, tol=linalg.RANK_TOL):
    try:
        return linalg.inv(to_matrix(M), tol)
    except SingularMatrix as exc:
        raise NotInvertible(f"multiplier is not invertible: {exc}") from exc


def dagger_duals(M, tol=linalg.RANK_TOL):
    """The duals psi_dag = (M^{-1} m_n phi_n) of psi and phi_dag = ((M^{-1})^* conj(m_n) psi_n) of phi.

    Returns ``(psi_dag, phi_dag)``.  Both need M^{-1} itself, so this is a
    representation result rather than a way to compute the inverse.
    """
    _require_semi_normalized(M)
    for name, seq in (("phi", M.phi), ("psi", M.psi)):
        if not frames.is_frame(seq):
            raise NotAFrame(f"{name} does not span C^{seq.d}")
    m_inv = _dense_inverse(M, tol)
    m = M.m.values
    psi_dag = FrameSeq(m_inv @ (M.phi.synthesis_matrix * m))
    phi_dag = FrameSeq(m_inv.conj().T @ (M.psi.synthesis_matrix * m.conj()))
    return psi_dag, phi_dag


def inverse_as_multiplier(M, phi_d, psi_d, dual_tol=frames.DUAL_TOL):
    """Both multiplier forms of M^{-1}: (M_{1/m, psi_dag, phi_d}, M_{1/m, psi_d, phi_dag}).

    ``phi_d`` and ``psi_d`` may be any duals of phi and psi.
    """
    if not frames.is_dual_pair(M.phi, phi_d, dual_tol):
        raise NotADual("phi_d is not a dual of phi")
    if not frames.is_dual_pair(M.psi, psi_d, dual_tol):
        raise NotADual("psi_d is not a dual of psi")
    psi_dag, phi_dag = dagger_duals(M)
    recip = M.m.reciprocal()
    return Multiplier(recip, psi_dag, phi_d), Multiplier(recip, psi_d, phi_dag)


def factorization_case(M, tol=1e-12):
    """Which hypothesis admits a symbol split: 'equal' , 'minimal', 'bounded-below', or None."""
    if M.phi.allclose(M.psi, atol=tol * max(1.0, np.abs(M.phi.synthesis_matrix).max())):
        return "equal"
    if frames.classify(M.phi).minimal:
        return "minimal"
    norms = np.abs(M.m.values) * np.linalg.norm(M.phi.synthesis_matrix, axis=0) * np.linalg.norm(
        M.psi.synthesis_matrix, axis=0
    )
    if norms.min() > tol * max(norms.max(), 1.0):
        return "bounded-below"
    return None


def _polar_split(m):
    mag = np.sqrt(np.abs(m))
    c = np.zeros_like(m)
    nz = mag > 0
    c[nz] = m[nz] / mag[nz]
    return c, mag.astype(complex)


def factor_symbol(M):
    """Write M as M_{(1), (c_n phi_n), (d_n psi_n)} with m_n = c_n conj(d_n).

    Returns ``(c, d, reweighted)``.  When phi and psi coincide the split is
    c_n = m_n / sqrt|m_n|, d_n = sqrt|m_n|.  Otherwise c = m, d = 1 is tried
    first and the square-root split second.  The frame property of both
    reweighted sequences is checked; :class:`NoFactorizationStrategy` is
    raised if no hypothesis applies or neither split yields frames.
    """
    case = factorization_case(M)
    if case is None:
        raise NoFactorizationStrategy(
            "phi is not minimal, phi != psi and inf |m_n| |phi_n| |psi_n| = 0"
        )
    m = np.array(M.m.values)
    if case == "equal":
        splits = [_polar_split(m)]
    else:
        splits = [(m.copy(), np.ones_like(m)), _polar_split(m)]
    for c, d in splits:
        phi_w = M.phi.scaled(c)
        psi_w = M.psi.scaled(d)
        if frames.is_frame(phi_w) and frames.is_frame(psi_w):
            ones = SymbolSeq(np.ones(M.N, dtype=complex))
            return SymbolSeq(c), SymbolSeq(d), Multiplier(ones, phi_w, psi_w)
    raise NoFactorizationStrategy(f"no split for case {case!r} gives two frames")


def constant_symbol_inverse(M, tol=INVERSE_TOL, rank_tol=linalg.RANK_TOL):
    """Classify M_{(c), phi, psi} by comparing range(U_phi) and range(U_psi).

    The candidate is C = M_{(1/c), canonical dual of psi, canonical dual of phi}.
    range(U_phi) in range(U_psi) makes C a right inverse, the reverse
    inclusion a left inverse, equality a two-sided inverse; a strict
    inclusion rules out invertibility.  Incomparable ranges allow either
    outcome, so there M is tested directly and no formula is returned.
    """
    if not M.m.is_constant():
        raise NonConstantSymbol("symbol is not constant")
    c = complex(M.m.values[0])
    if c == 0:
        raise ZeroSymbol("constant symbol is zero")
    for name, seq in (("phi", M.phi), ("psi", M.psi)):
        if not frames.is_frame(seq):
            raise NotAFrame(f"{name} does not span C^{seq.d}")

    cand = Multiplier(
        SymbolSeq.constant(1.0 / c, M.N),
        frames.canonical_dual(M.psi),
        frames.canonical_dual(M.phi),
    )
    left, right = verify_inverse(M, cand)
    phi_in_psi = frames.is_partial_equivalent(M.psi, M.phi, rank_tol)
    psi_in_phi = frames.is_partial_equivalent(M.phi, M.psi, rank_tol)

    if phi_in_psi and psi_in_phi:
        cls = InverseClass.TWO_SIDED if max(left, right) <= tol else InverseClass.NOT_INVERTIBLE
        return InverseReport(cls, cand if cls is InverseClass.TWO_SIDED else None,
                             max(left, right), left, right, "equal")
    if phi_in_psi or psi_in_phi:
        relation = "phi-in-psi" if phi_in_psi else "psi-in-phi"
        return InverseReport(InverseClass.NOT_INVERTIBLE, None, max(left, right),
                             left, right, relation)

    if is_invertible(M, rank_tol):
        dense = linalg.inv(to_matrix(M), rank_tol)
        a = to_matrix(M)
        eye = np.eye(M.d)
        left = float(np.linalg.norm(dense @ a - eye))
        right = float(np.linalg.norm(a @ dense - eye))
        return InverseReport(InverseClass.TWO_SIDED, None, max(left, right),
                             left, right, "incomparable")
    return InverseReport(InverseClass.NOT_INVERTIBLE, None, max(left, right),
                         left, right, "incomparable")
