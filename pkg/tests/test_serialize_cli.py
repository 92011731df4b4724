import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framemult import checks, cli, gabor
from framemult import serialize as ser
from framemult.errors import ContractViolation
from framemult.frames import FrameSeq
from framemult.multiplier import Multiplier, SymbolSeq, to_matrix

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
complexes = st.builds(complex, finite, finite)


@settings(max_examples=100, deadline=None)
@given(st.lists(complexes, min_size=1, max_size=12))
def test_vector_round_trip_is_bit_exact(values):
    v = np.array(values, dtype=complex)
    back = ser.vector_from_json(json.loads(json.dumps(ser.vector_to_json(v))))
    assert back.tobytes() == v.tobytes()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(0, 4))
def test_multiplier_round_trip_is_bit_exact(seed, d, extra):
    rng = np.random.default_rng(seed)
    n = d + extra
    M = Multiplier(SymbolSeq(checks.random_matrix(rng, 1, n)[0]),
                   checks.random_frame(rng, d, n), checks.random_frame(rng, d, n))
    back = ser.multiplier_from_json(json.loads(json.dumps(ser.multiplier_to_json(M))))
    for a, b in ((M.m.values, back.m.values), (M.phi.synthesis_matrix, back.phi.synthesis_matrix),
                 (M.psi.synthesis_matrix, back.psi.synthesis_matrix)):
        assert a.tobytes() == b.tobytes()


def test_gabor_round_trip():
    G = gabor.GaborSystem(np.arange(8) + 0.5j, gabor.Lattice(8, 2, 4))
    back = ser.gabor_from_json(json.loads(json.dumps(ser.gabor_to_json(G))))
    assert back.lattice == G.lattice
    assert back.window.tobytes() == G.window.tobytes()


@pytest.mark.parametrize("data", [
    {},
    {"dim": 2},
    {"dim": 3, "vectors": [[[1, 0], [0, 0]]]},
    {"dim": 2, "vectors": [[[1, 0], [0, 0]], [[1, 0]]]},
    {"dim": 1, "vectors": [[["x", 0]]]},
    {"dim": 1, "vectors": [[[1, 2, 3]]]},
    [1, 2],
])
def test_malformed_frames(data):
    with pytest.raises(ContractViolation):
        ser.frame_from_json(data)


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def frame_file(tmp_path, mat, name="phi.json"):
    return write(tmp_path / name, ser.frame_to_json(FrameSeq(np.asarray(mat, dtype=float))))


def mult_file(tmp_path, m, phi, psi, name="m.json"):
    M = Multiplier(SymbolSeq(m), FrameSeq(np.asarray(phi, dtype=float)), FrameSeq(np.asarray(psi, dtype=float)))
    return write(tmp_path / name, ser.multiplier_to_json(M))


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


DOUBLED = np.repeat(np.eye(2), 2, axis=1)


def test_bounds(tmp_path, capsys):
    code, out, _ = run(capsys, ["bounds", frame_file(tmp_path, DOUBLED)])
    data = json.loads(out)
    assert code == 0
    assert data["lower"] == pytest.approx(2) and data["upper"] == pytest.approx(2)
    assert data["class"] == "SpanningFrame" and data["minimal"] is False
    code, out, _ = run(capsys, ["bounds", frame_file(tmp_path, DOUBLED), "--format", "text"])
    assert code == 0 and out.startswith("lower=")


def test_dual_random_is_deterministic(tmp_path, capsys):
    rng = np.random.default_rng(0)
    path = write(tmp_path / "f.json", ser.frame_to_json(checks.random_frame(rng, 3, 6)))
    outs = [run(capsys, ["dual", path, "--kind", "random", "--seed", "5"])[1] for _ in range(2)]
    assert outs[0] == outs[1]
    other = run(capsys, ["dual", path, "--kind", "random", "--seed", "6"])[1]
    assert other != outs[0]


def test_apply(tmp_path, capsys):
    m = mult_file(tmp_path, [1, 3], np.diag([2, 1]), np.eye(2))
    v = write(tmp_path / "v.json", ser.vector_to_json([1, 1]))
    code, out, _ = run(capsys, ["apply", m, v])
    assert code == 0
    np.testing.assert_allclose(ser.vector_from_json(json.loads(out)), [2, 3])


def test_invert_riesz(tmp_path, capsys):
    m = mult_file(tmp_path, [1, 3], np.diag([2, 1]), np.eye(2))
    code, out, _ = run(capsys, ["invert", m])
    data = json.loads(out)
    assert code == 0 and data["strategy"] == "riesz" and data["classification"] == "TwoSided"
    inv = ser.multiplier_from_json(data["inverse_multiplier"])
    np.testing.assert_allclose(inv.m.values, [1, 1 / 3])


def test_invert_constant_symbol_and_dagger(tmp_path, capsys):
    m = mult_file(tmp_path, [1] * 4, DOUBLED, DOUBLED)
    data = json.loads(run(capsys, ["invert", m])[1])
    assert data["strategy"] == "constant-symbol" and data["range_relation"] == "equal"
    code, out, _ = run(capsys, ["invert", m, "--strategy", "dagger", "--dual", "random", "--seed", "3"])
    data = json.loads(out)
    assert code == 0 and data["residual"] <= 1e-9
    assert "alternate_inverse_multiplier" in data


def test_invert_singular_exits_2(tmp_path, capsys):
    m = mult_file(tmp_path, [1, 1], [[1, 1], [0, 0]], np.eye(2))
    code, out, _ = run(capsys, ["invert", m])
    assert code == 2
    data = json.loads(out)
    assert data["classification"] == "NotInvertible" and data["residual"] == "inf"
    code, _, _ = run(capsys, ["invert", m, "--strategy", "dagger"])
    assert code == 2


def test_input_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, ["bounds", str(bad)])[0] == 3
    assert run(capsys, ["bounds", str(tmp_path / "missing.json")])[0] == 3
    assert run(capsys, ["bounds", write(tmp_path / "e.json", {})])[0] == 3
    m = mult_file(tmp_path, [1, 3], np.diag([2, 1]), np.eye(2))
    assert run(capsys, ["invert", m, "--tolerance-inverse", "-1"])[0] == 3


def test_out_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, ["bounds", frame_file(tmp_path, DOUBLED), "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["class"] == "SpanningFrame"


def test_gabor_commands(tmp_path, capsys):
    rng = np.random.default_rng(1)
    lat = gabor.Lattice(8, 2, 2)
    system = write(tmp_path / "g.json", ser.gabor_to_json(gabor.GaborSystem(checks.random_matrix(rng, 1, 8)[0], lat)))
    shift = write(tmp_path / "v.json", ser.matrix_to_json(gabor.tf_shift_matrix((0, 4), 8)))
    generic = write(tmp_path / "w.json", ser.matrix_to_json(checks.random_matrix(rng, 8, 8)))

    code, out, _ = run(capsys, ["gabor", "frame", system])
    assert code == 0 and len(json.loads(out)["vectors"]) == 16
    code, out, _ = run(capsys, ["gabor", "dual-window", system])
    assert code == 0 and len(json.loads(out)["window"]) == 8

    data = json.loads(run(capsys, ["gabor", "commute", system, "--operator", shift])[1])
    assert data["commutes_all"] and data["consistent"] and all(data["holds"].values())
    data = json.loads(run(capsys, ["gabor", "commute", system, "--operator", generic])[1])
    assert not data["commutes_all"] and data["consistent"]

    code, out, _ = run(capsys, ["gabor", "represent", system, "--operator", shift])
    assert code == 0
    rep = to_matrix(ser.multiplier_from_json(json.loads(out)))
    np.testing.assert_allclose(rep, gabor.tf_shift_matrix((0, 4), 8), atol=1e-10)
    code, out, _ = run(capsys, ["gabor", "invert", system, "--operator", shift])
    assert code == 0
    assert run(capsys, ["gabor", "invert", system, "--operator", generic])[0] == 2
    assert run(capsys, ["gabor", "represent", system])[0] == 3


def test_verification_suite_text_output(capsys):
    code, out, _ = run(capsys, ["paper-examples", "--format", "text", "--seed", "0"])
    lines = out.strip().splitlines()
    assert lines[0] == "# seed=0"
    assert len(lines) == 1 + len(checks.CHECKS)
    failed = [ln for ln in lines[1:] if ln.startswith("FAIL")]
    assert code == (2 if failed else 0)
