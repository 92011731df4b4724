"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 mathematical failure (not
invertible, not a frame, a failed verification check), 3 malformed input.
"""
import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import checks, frames, gabor, linalg
from . import multiplier as mult
from . import serialize as ser
from .errors import ContractViolation, MathematicalFailure, NotInvertible

EXIT_OK, EXIT_INTERNAL, EXIT_MATH, EXIT_INPUT = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    rank_tol: float = linalg.RANK_TOL
    dual_tol: float = frames.DUAL_TOL
    inverse_tol: float = mult.INVERSE_TOL
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        for name in ("rank_tol", "dual_tol", "inverse_tol"):
            if not getattr(self, name) > 0:
                raise ContractViolation(f"{name} must be positive")
        if self.output_format not in ("json", "text"):
            raise ContractViolation(f"unknown output format {self.output_format!r}")

    @property
    def tolerances(self):
        return checks.Tolerances(rank=self.rank_tol, dual=self.dual_tol, inverse=self.inverse_tol)


def cmd_bounds(frame, cfg):
    b = frames.frame_bounds(frame)
    cls = frames.classify(frame, rank_tol=cfg.rank_tol)
    return {"lower": b.lower, "upper": b.upper, "class": cls.kind.value, "minimal": cls.minimal}, EXIT_OK


def cmd_dual(frame, kind, cfg):
    if kind == "canonical":
        dual = frames.canonical_dual(frame)
    else:
        dual = frames.random_dual(frame, cfg.seed)
    return ser.frame_to_json(dual), EXIT_OK


def cmd_apply(M, h, cfg):
    return {"vector": ser.vector_to_json(mult.apply(M, h))}, EXIT_OK


def _two_sided(M, inverse, relation=""):
    left, right = mult.verify_inverse(M, inverse)
    return mult.InverseReport(mult.InverseClass.TWO_SIDED, inverse, max(left, right), left, right, relation)


def _dagger(M, dual, cfg):
    if dual == "canonical":
        phi_d, psi_d = frames.canonical_dual(M.phi), frames.canonical_dual(M.psi)
    else:
        phi_d = frames.random_dual(M.phi, cfg.seed)
        psi_d = frames.random_dual(M.psi, cfg.seed + 1)
    first, second = mult.inverse_as_multiplier(M, phi_d, psi_d, cfg.dual_tol)
    return _two_sided(M, first), second


def cmd_invert(M, strategy, dual, cfg):
    """Invert a multiplier and report it as JSON.

    ``auto`` tries the Riesz formula, then the constant-symbol range
    analysis, then the dual-frame construction.
    """
    alternate = None
    if strategy == "auto":
        used = None
        report = None
        if (M.m.semi_normalized
                and frames.classify(M.phi).kind is frames.FrameKind.RIESZ_BASIS
                and frames.classify(M.psi).kind is frames.FrameKind.RIESZ_BASIS):
            used, report = "riesz", _two_sided(M, mult.riesz_inverse(M))
        elif M.m.is_constant() and M.m.sup_abs > 0 and frames.is_frame(M.phi) and frames.is_frame(M.psi):
            cs = mult.constant_symbol_inverse(M, cfg.inverse_tol, cfg.rank_tol)
            if cs.inverse_multiplier is not None or cs.classification is mult.InverseClass.NOT_INVERTIBLE:
                used, report = "constant-symbol", cs
        if report is None:
            if not mult.is_invertible(M, cfg.rank_tol):
                used = "dense"
                inf = float("inf")
                report = mult.InverseReport(mult.InverseClass.NOT_INVERTIBLE, None, inf, inf, inf, "")
            else:
                used = "dagger"
                report, alternate = _dagger(M, dual, cfg)
    elif strategy == "riesz":
        used, report = "riesz", _two_sided(M, mult.riesz_inverse(M))
    elif strategy == "constant-symbol":
        used, report = "constant-symbol", mult.constant_symbol_inverse(M, cfg.inverse_tol, cfg.rank_tol)
    elif strategy == "dagger":
        used = "dagger"
        report, alternate = _dagger(M, dual, cfg)
    else:
        raise ContractViolation(f"unknown strategy {strategy!r}")

    out = {"strategy": used}
    out.update(ser.inverse_report_to_json(report))
    for key in ("residual", "left_residual", "right_residual"):
        out[key] = checks.json_float(out[key])
    if alternate is not None:
        out["alternate_inverse_multiplier"] = ser.multiplier_to_json(alternate)
    code = EXIT_MATH if report.classification is mult.InverseClass.NOT_INVERTIBLE else EXIT_OK
    return out, code


def cmd_gabor(sub, G, V, cfg):
    if sub == "frame":
        return ser.frame_to_json(gabor.gabor_frame(G)), EXIT_OK
    if sub == "dual-window":
        return {"window": ser.vector_to_json(gabor.canonical_dual_window(G))}, EXIT_OK
    if V is None:
        raise ContractViolation(f"'gabor {sub}' needs --operator")
    if sub == "commute":
        rep = gabor.check_gab2_equivalences(V, G, cfg.inverse_tol)
        out = {
            "commutes_on_window": gabor.commutes_on_window(V, G, cfg.inverse_tol),
            "commutes_all": gabor.commutes_all(V, G.lattice, cfg.inverse_tol),
            "residuals": {k: checks.json_float(v) for k, v in rep.residuals.items()},
            "holds": rep.holds,
            "consistent": rep.consistent,
        }
        return out, EXIT_OK
    if sub == "represent":
        return ser.multiplier_to_json(gabor.as_gabor_multiplier(V, G, cfg.inverse_tol)), EXIT_OK
    if sub == "invert":
        M = gabor.inverse_gabor_multiplier(V, G, cfg.inverse_tol, cfg.rank_tol)
        return ser.multiplier_to_json(M), EXIT_OK
    raise ContractViolation(f"unknown gabor subcommand {sub!r}")


def cmd_paper_examples(cfg):
    records = checks.run_all(cfg.seed, cfg.tolerances)
    out = {"config": asdict(cfg), "checks": [r.to_json() for r in records]}
    return out, EXIT_OK if all(r.status for r in records) else EXIT_MATH


def _format_text(command, payload):
    if command == "paper-examples":
        lines = [f"# seed={payload['config']['seed']}"]
        for c in payload["checks"]:
            res = c["residual"]
            res = f"{res:.3e}" if isinstance(res, float) else res
            lines.append(f"{c['status'].upper():4s}  {c['id']:30s} residual={res}  {c['description']}")
        return "\n".join(lines)
    if command == "bounds":
        return (f"lower={payload['lower']!r} upper={payload['upper']!r} "
                f"class={payload['class']} minimal={payload['minimal']}")
    return json.dumps(payload, indent=2)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance-rank", type=float, dest="rank_tol", default=argparse.SUPPRESS)
    common.add_argument("--tolerance-dual", type=float, dest="dual_tol", default=argparse.SUPPRESS)
    common.add_argument("--tolerance-inverse", type=float, dest="inverse_tol", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "text"), dest="output_format", default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="framemult", parents=[common],
        description="Frame multipliers: bounds, duals, application, inversion, Gabor multipliers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="frame bounds and classification")
    p.add_argument("frame")

    p = sub.add_parser("dual", parents=[common], help="canonical or seeded random dual frame")
    p.add_argument("frame")
    p.add_argument("--kind", choices=("canonical", "random"), default="canonical")

    p = sub.add_parser("apply", parents=[common], help="apply a multiplier to a vector")
    p.add_argument("multiplier")
    p.add_argument("vector")

    p = sub.add_parser("invert", parents=[common], help="invert a multiplier")
    p.add_argument("multiplier")
    p.add_argument("--strategy", choices=("auto", "riesz", "dagger", "constant-symbol"), default="auto")
    p.add_argument("--dual", choices=("canonical", "random"), default="canonical")

    p = sub.add_parser("gabor", parents=[common], help="discrete Gabor systems")
    p.add_argument("subcommand", choices=("frame", "dual-window", "commute", "represent", "invert"))
    p.add_argument("system", help="Gabor system JSON file")
    p.add_argument("--operator", help="operator matrix JSON file (commute/represent/invert)")

    sub.add_parser("paper-examples", parents=[common], help="run the full verification suite")
    return parser


def _run(args):
    cfg = RunConfig(
        rank_tol=getattr(args, "rank_tol", linalg.RANK_TOL),
        dual_tol=getattr(args, "dual_tol", frames.DUAL_TOL),
        inverse_tol=getattr(args, "inverse_tol", mult.INVERSE_TOL),
        seed=getattr(args, "seed", 0),
        output_format=getattr(args, "output_format", "json"),
    )
    cmd = args.command
    if cmd == "bounds":
        return cfg, cmd_bounds(ser.frame_from_json(ser.load_json(args.frame)), cfg)
    if cmd == "dual":
        return cfg, cmd_dual(ser.frame_from_json(ser.load_json(args.frame)), args.kind, cfg)
    if cmd == "apply":
        M = ser.multiplier_from_json(ser.load_json(args.multiplier))
        return cfg, cmd_apply(M, ser.vector_from_json(ser.load_json(args.vector)), cfg)
    if cmd == "invert":
        M = ser.multiplier_from_json(ser.load_json(args.multiplier))
        return cfg, cmd_invert(M, args.strategy, args.dual, cfg)
    if cmd == "gabor":
        G = ser.gabor_from_json(ser.load_json(args.system))
        V = ser.matrix_from_json(ser.load_json(args.operator)) if args.operator else None
        return cfg, cmd_gabor(args.subcommand, G, V, cfg)
    if cmd == "paper-examples":
        return cfg, cmd_paper_examples(cfg)
    raise ContractViolation(f"unknown command {cmd!r}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg, (payload, code) = _run(args)
    except ContractViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotInvertible as exc:
        print(json.dumps({"classification": "NotInvertible", "error": str(exc)}))
        return EXIT_MATH
    except MathematicalFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    if cfg.output_format == "text":
        text = _format_text(args.command, payload)
    else:
        text = json.dumps(payload, indent=2)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
