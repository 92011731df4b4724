"""Discrete Gabor systems on the cyclic group Z_L.

Translation is a cyclic shift, modulation multiplies by exp(2 pi i w x / L),
and a time-frequency shift is pi(w, t) = E_w T_t (translate first).  Lattices
are separable: time steps of ``a`` and frequency steps of ``b``, enumerated
with the time index outermost.

An operator V commutes with every lattice shift exactly when it is the
symbol-one Gabor multiplier built from (pi(l) V g) and the canonical dual
window of g; its inverse is then the Gabor multiplier built from g and the
canonical dual of (pi(l) V g).
"""
from dataclasses import dataclass

import numpy as np

from . import frames, linalg
from .errors import ContractViolation, DoesNotCommute, NotAFrame, NotInvertible
from .frames import FrameSeq
from .multiplier import Multiplier, SymbolSeq, to_matrix

COMMUTE_TOL = 1e-9


@dataclass(frozen=True)
class Lattice:
    L: int
    a: int
    b: int

    def __post_init__(self):
        for name in ("L", "a", "b"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
                raise ContractViolation(f"{name} must be a positive integer, got {v!r}")
        if self.L % self.a or self.L % self.b:
            raise ContractViolation(f"a={self.a} and b={self.b} must both divide L={self.L}")

    @property
    def size(self):
        return (self.L // self.a) * (self.L // self.b)

    def points(self):
        """Lattice points (omega, tau), tau outer and omega inner, both ascending."""
        return [(w, t) for t in range(0, self.L, self.a) for w in range(0, self.L, self.b)]


@dataclass(frozen=True, eq=False)
class GaborSystem:
    window: np.ndarray
    lattice: Lattice

    def __post_init__(self):
        g = np.array(linalg.as_vector(self.window, "window"), dtype=complex)
        if g.size != self.lattice.L:
            raise ContractViolation(f"window length {g.size} != L={self.lattice.L}")
        g.setflags(write=False)
        object.__setattr__(self, "window", g)

    @property
    def L(self):
        return self.lattice.L


def translate(f, tau):
    """(T_tau f)[x] = f[(x - tau) mod L]."""
    f = linalg.as_vector(f)
    return np.roll(f, int(tau) % f.size)


def modulate(f, omega):
    """(E_omega f)[x] = exp(2 pi i omega x / L) f[x]."""
    f = linalg.as_vector(f)
    L = f.size
    x = np.arange(L)
    return np.exp(2j * np.pi * ((int(omega) * x) % L) / L) * f


def tf_shift(lam, f):
    omega, tau = lam
    return modulate(translate(f, tau), omega)


def tf_shift_matrix(lam, L):
    """The L x L matrix of pi(lam)."""
    omega, tau = lam
    x = np.arange(L)
    mat = np.zeros((L, L), dtype=complex)
    mat[(x + tau) % L, x] = 1.0
    return np.exp(2j * np.pi * ((omega * x) % L) / L)[:, None] * mat


def gabor_frame(G):
    """The sequence (pi(lam) g) in lattice order.  Spanning is not checked."""
    return FrameSeq(np.column_stack([tf_shift(lam, G.window) for lam in G.lattice.points()]))


def canonical_dual_window(G):
    """g~ = S^{-1} g; the canonical dual frame is then (pi(lam) g~)."""
    phi = gabor_frame(G)
    if not frames.is_frame(phi):
        raise NotAFrame("Gabor system does not span C^L")
    return linalg.hermitian_inv(frames.frame_operator(phi)) @ G.window


def window_commutator(V, G):
    """max over the lattice of |V pi(lam) g - pi(lam) V g|."""
    V = linalg.as_matrix(V)
    vg = V @ G.window
    return max(
        float(np.linalg.norm(V @ tf_shift(lam, G.window) - tf_shift(lam, vg)))
        for lam in G.lattice.points()
    )


def commutes_on_window(V, G, tol=COMMUTE_TOL):
    V = _square(V, G.L)
    scale = np.linalg.norm(V) * np.linalg.norm(G.window)
    return bool(window_commutator(V, G) <= tol * scale)


def operator_commutator(V, lattice):
    """max over lattice points and basis vectors of |(V pi - pi V) e_k|."""
    V = linalg.as_matrix(V)
    worst = 0.0
    for lam in lattice.points():
        P = tf_shift_matrix(lam, lattice.L)
        worst = max(worst, float(np.linalg.norm(V @ P - P @ V, axis=0).max()))
    return worst


def commutes_all(V, lattice, tol=COMMUTE_TOL):
    V = _square(V, lattice.L)
    return bool(operator_commutator(V, lattice) <= tol * max(np.linalg.norm(V), np.finfo(float).tiny))


def _square(V, L):
    V = linalg.as_matrix(V, "operator")
    if V.shape != (L, L):
        raise ContractViolation(f"operator must be {L}x{L}, got {V.shape}")
    return V


def _window_multiplier(V, G):
    # symbol-one multiplier built from (pi(lam) V g) and the dual window of g
    vg = V @ G.window
    dual = canonical_dual_window(G)
    ones = SymbolSeq(np.ones(G.lattice.size, dtype=complex))
    return Multiplier(
        ones,
        gabor_frame(GaborSystem(vg, G.lattice)),
        gabor_frame(GaborSystem(dual, G.lattice)),
    )


def _inverse_window_multiplier(V, G):
    h = gabor_frame(GaborSystem(V @ G.window, G.lattice))
    if not frames.is_frame(h):
        raise NotAFrame("(pi(lam) V g) does not span C^L")
    ones = SymbolSeq(np.ones(G.lattice.size, dtype=complex))
    return Multiplier(ones, gabor_frame(G), frames.canonical_dual(h))


def as_gabor_multiplier(V, G, tol=COMMUTE_TOL):
    """Write V as M_{(1), (pi(lam) V g), (pi(lam) g~)}.

    Valid exactly when V commutes with every pi(lam) on the window g.
    """
    V = _square(V, G.L)
    if not commutes_on_window(V, G, tol):
        raise DoesNotCommute("V does not commute with the lattice shifts of g")
    return _window_multiplier(V, G)


def inverse_gabor_multiplier(V, G, tol=COMMUTE_TOL, rank_tol=linalg.RANK_TOL):
    """V^{-1} as M_{(1), (g_lam), (h~_lam)} with h_lam = pi(lam) V g."""
    V = _square(V, G.L)
    s = linalg.singular_values(V)
    if s[0] == 0 or s[-1] <= rank_tol * s[0]:
        raise NotInvertible("operator is singular")
    if not commutes_on_window(V, G, tol):
        raise DoesNotCommute("V does not commute with the lattice shifts of g")
    return _inverse_window_multiplier(V, G)


@dataclass(frozen=True)
class Gab2Report:
    """Residuals and verdicts for the four equivalent conditions."""

    residuals: dict
    holds: dict

    @property
    def consistent(self):
        return len(set(self.holds.values())) == 1


def check_gab2_equivalences(V, G, tol=COMMUTE_TOL):
    """Evaluate commutation on g, commutation everywhere, and the two
    multiplier constructions, and report whether the verdicts agree.

    Residuals are relative: commutators are scaled by |V|_F (times |g| for
    the window test), the representation residual by |V|_F and the inverse
    residual is |V^{-1}-candidate composed with V - I|_F.
    """
    V = _square(V, G.L)
    vnorm = np.linalg.norm(V)
    res = {
        "window": float(window_commutator(V, G) / (vnorm * np.linalg.norm(G.window))),
        "all": float(operator_commutator(V, G.lattice) / vnorm),
    }
    try:
        rep = to_matrix(_window_multiplier(V, G))
        res["multiplier"] = float(np.linalg.norm(rep - V) / vnorm)
    except NotAFrame:
        res["multiplier"] = float("inf")
    try:
        inv_rep = to_matrix(_inverse_window_multiplier(V, G))
        res["inverse"] = float(np.linalg.norm(inv_rep @ V - np.eye(G.L)))
    except NotAFrame:
        res["inverse"] = float("inf")
    holds = {k: bool(v <= tol) for k, v in res.items()}
    return Gab2Report(residuals=res, holds=holds)
