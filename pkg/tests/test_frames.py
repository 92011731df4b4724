import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framemult import frames
from framemult.errors import ContractViolation, NotAFrame
from framemult.frames import FrameKind, FrameSeq

E2 = np.eye(2)
DOUBLED2 = FrameSeq(np.repeat(E2, 2, axis=1))


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_analysis_examples():
    np.testing.assert_array_equal(frames.analysis(FrameSeq(E2), [3, 4j]), [3, 4j])
    np.testing.assert_array_equal(frames.analysis(DOUBLED2, [1, 2]), [1, 1, 2, 2])


def test_analysis_matches_dense_rows():
    rng = np.random.default_rng(0)
    phi = FrameSeq(crandn(rng, 3, 7))
    h = crandn(rng, 3)
    u = np.array([v.conj() for v in phi.vectors])
    np.testing.assert_allclose(frames.analysis(phi, h), u @ h, atol=1e-14)
    # conjugate-linear in the frame vector
    np.testing.assert_allclose(frames.analysis(phi, h)[0], np.sum(h * phi[0].conj()))


def test_dimension_mismatch():
    with pytest.raises(ContractViolation):
        frames.analysis(DOUBLED2, [1, 2, 3])
    with pytest.raises(ContractViolation):
        frames.synthesis(DOUBLED2, [1, 2])
    with pytest.raises(ContractViolation):
        FrameSeq.from_vectors([[1, 0], [1, 0, 0]])


def test_synthesis_examples():
    rng = np.random.default_rng(1)
    phi = FrameSeq(crandn(rng, 3, 5))
    for k in range(5):
        delta = np.zeros(5)
        delta[k] = 1
        np.testing.assert_array_equal(frames.synthesis(phi, delta), phi[k])
    np.testing.assert_array_equal(frames.synthesis(phi, np.zeros(5)), 0)
    h = crandn(rng, 3)
    np.testing.assert_allclose(
        frames.synthesis(phi, frames.analysis(phi, h)), frames.frame_operator(phi) @ h, atol=1e-13
    )


def test_frame_operator_examples():
    np.testing.assert_array_equal(frames.frame_operator(DOUBLED2), 2 * E2)
    tripled = FrameSeq(np.repeat(E2, 3, axis=1))
    np.testing.assert_array_equal(frames.frame_operator(tripled), 3 * E2)
    rng = np.random.default_rng(2)
    s = frames.frame_operator(FrameSeq(crandn(rng, 4, 3)))
    assert np.all(np.linalg.eigvalsh(s) >= -1e-12)


def test_frame_bounds_examples():
    b = frames.frame_bounds(DOUBLED2)
    assert (b.lower, b.upper) == pytest.approx((2, 2))
    b = frames.frame_bounds(FrameSeq(np.array([[1, 0, 0], [0, 1, 0]])))
    assert (b.lower, b.upper) == pytest.approx((1, 1))


def test_frame_bounds_inequality_sweep():
    rng = np.random.default_rng(3)
    phi = FrameSeq(crandn(rng, 4, 9))
    b = frames.frame_bounds(phi)
    for _ in range(100):
        h = crandn(rng, 4)
        energy = np.sum(np.abs(frames.analysis(phi, h)) ** 2)
        nh = np.linalg.norm(h) ** 2
        assert b.lower * nh - 1e-9 <= energy <= b.upper * nh + 1e-9


def test_canonical_dual_examples():
    dual = frames.canonical_dual(DOUBLED2)
    np.testing.assert_allclose(dual.synthesis_matrix, DOUBLED2.synthesis_matrix / 2, atol=1e-15)
    onb = FrameSeq(np.eye(3))
    np.testing.assert_allclose(frames.canonical_dual(onb).synthesis_matrix, np.eye(3), atol=1e-15)
    rng = np.random.default_rng(4)
    phi = FrameSeq(crandn(rng, 3, 6))
    dual = frames.canonical_dual(phi)
    h = crandn(rng, 3)
    np.testing.assert_allclose(frames.synthesis(phi, frames.analysis(dual, h)), h, atol=1e-9)


def test_canonical_dual_rejects_non_spanning():
    with pytest.raises(NotAFrame):
        frames.canonical_dual(FrameSeq(np.array([[1.0], [0.0]])))
    with pytest.raises(NotAFrame):
        frames.canonical_dual(FrameSeq(np.zeros((2, 3))))


def test_is_dual_pair_examples():
    rng = np.random.default_rng(5)
    phi = FrameSeq(crandn(rng, 3, 7))
    assert frames.is_dual_pair(phi, frames.canonical_dual(phi))
    assert not frames.is_dual_pair(FrameSeq(np.eye(2)), FrameSeq(2 * np.eye(2)))
    rd = frames.random_dual(phi, seed=9)
    assert frames.is_dual_pair(phi, rd)
    assert not rd.allclose(frames.canonical_dual(phi), atol=1e-3)


def test_random_dual_is_seeded():
    rng = np.random.default_rng(6)
    phi = FrameSeq(crandn(rng, 3, 7))
    a = frames.random_dual(phi, 1)
    b = frames.random_dual(phi, 1)
    np.testing.assert_array_equal(a.synthesis_matrix, b.synthesis_matrix)


def test_classify_examples():
    c = frames.classify(FrameSeq(np.eye(3)))
    assert c.kind is FrameKind.RIESZ_BASIS and c.minimal
    c = frames.classify(DOUBLED2)
    assert c.kind is FrameKind.SPANNING_FRAME and not c.minimal
    c = frames.classify(FrameSeq(np.array([[1.0], [0.0]])))
    assert c.kind is FrameKind.NON_SPANNING and c.minimal


def test_equivalence_examples():
    rng = np.random.default_rng(7)
    phi = FrameSeq(crandn(rng, 3, 6))
    assert frames.is_partial_equivalent(phi, phi)
    psi = phi.transformed(crandn(rng, 3, 3))
    assert frames.are_equivalent(phi, psi)
    a = FrameSeq(np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]))
    b = FrameSeq(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    assert not frames.is_partial_equivalent(b, a)
    # oracle: rank of [U_b | U_a] exceeds rank of U_b
    assert np.linalg.matrix_rank(np.hstack([b.analysis_matrix, a.analysis_matrix])) > 2


def test_zero_vectors_allowed():
    phi = FrameSeq(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    dual = frames.canonical_dual(phi)
    np.testing.assert_array_equal(dual[2], 0)


def test_frameseq_is_read_only():
    with pytest.raises(ValueError):
        DOUBLED2.synthesis_matrix[0, 0] = 5


seeds = st.integers(0, 2 ** 32 - 1)


@st.composite
def spanning_frames(draw):
    seed = draw(seeds)
    d = draw(st.integers(1, 6))
    n = draw(st.integers(d, 2 * d + 3))
    return FrameSeq(crandn(np.random.default_rng(seed), d, n)), seed


@settings(max_examples=100, deadline=None)
@given(spanning_frames())
def test_duality_identity_property(args):
    phi, seed = args
    rng = np.random.default_rng(seed + 1)
    h = crandn(rng, phi.d, 100)
    for dual in (frames.canonical_dual(phi), frames.random_dual(phi, rng)):
        rec = phi.synthesis_matrix @ (dual.analysis_matrix @ h)
        assert np.all(np.linalg.norm(rec - h, axis=0) <= 1e-9 * np.linalg.norm(h, axis=0))


@settings(max_examples=100, deadline=None)
@given(spanning_frames())
def test_dual_frame_operator_and_double_dual(args):
    phi, _ = args
    dual = frames.canonical_dual(phi)
    s_inv = np.linalg.inv(frames.frame_operator(phi))
    assert np.linalg.norm(frames.frame_operator(dual) - s_inv) <= 1e-9 * max(1, np.linalg.norm(s_inv))
    assert frames.canonical_dual(dual).allclose(phi, atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 5))
def test_riesz_dual_is_unique(seed, d):
    rng = np.random.default_rng(seed)
    phi = FrameSeq(crandn(rng, d, d))
    assert frames.classify(phi).kind is FrameKind.RIESZ_BASIS
    assert frames.random_dual(phi, rng).allclose(frames.canonical_dual(phi), atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 4))
def test_equivalence_is_an_equivalence_relation(seed, d):
    rng = np.random.default_rng(seed)
    n = d + 3
    base = FrameSeq(crandn(rng, d, n))
    family = [base.transformed(crandn(rng, d, d)) for _ in range(3)]
    other = FrameSeq(crandn(rng, d, n))
    family.append(other)
    rel = np.array([[frames.are_equivalent(a, b) for b in family] for a in family])
    assert rel.diagonal().all()
    assert (rel == rel.T).all()
    k = len(family)
    for i in range(k):
        for j in range(k):
            for m in range(k):
                if rel[i, j] and rel[j, m]:
                    assert rel[i, m]
    assert frames.are_equivalent(family[0], family[1])
