"""
iterstbc command line.

Usage:
    iterstbc catalog list
    iterstbc catalog show iter_silver --json
    iterstbc analyze iter_silver --theta -1 --hint silver_partition.json
    iterstbc diversity iter_silver --alphabet=-2,0,2 --mode random --samples 100000
    iterstbc check-theta --field "Q(i)" --a 3 --gamma 1+i --theta 1-i
    iterstbc decode-bench iter_silver --theta -1 --snr 20 --trials 100 --order grouping
    iterstbc simulate --config sim.json --out results.csv

Environment variables:
    ITERSTBC_WORKERS - default worker count (default: 1)
    ITERSTBC_LOG_LEVEL - logging level (default: INFO)
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from . import __version__, config
from .analysis import Partition, analyze_code, degree3_theta_check, min_det_scan, quaternion_theta_check
from .catalog import CATALOG, CodeSpec, export_code, list_codes, make_code
from .errors import BudgetExceededError, ConfigError, IterStbcError
from .fields import BUILTIN_FIELDS, get_field
from .serialize import BENCH_HEADER, SIM_HEADER, emit
from .sim import SimConfig, decode_bench, run_bler

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2


def _alphabet(text: str) -> list[int]:
    try:
        values = sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"alphabet must be comma-separated integers, got {text!r}")
    if len(values) < 2:
        raise argparse.ArgumentTypeError("alphabet needs at least two symbols")
    return values


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("code", choices=list(CATALOG), help="Catalog code name")
    p.add_argument("--theta", help="Override theta, e.g. -17, 1-i, i*sqrt7 (default: per code)")
    p.add_argument("--scaled", action=argparse.BooleanOptionalAction, default=None,
                   help="Use the scaled iterated map (default: per code)")


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="Output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iterstbc", description="Iterated space-time block codes from cyclic division algebras")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="Logging level (default: %(default)s)")
    sub = parser.add_subparsers(dest="verb", required=True)

    cat = sub.add_parser("catalog", help="List or show catalog codes")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    cat_sub.add_parser("list", help="List code names")
    show = cat_sub.add_parser("show", help="Show one code")
    _add_code_args(show)
    show.add_argument("--json", action="store_true", help="Emit the full JSON export")
    _add_out(show)

    an = sub.add_parser("analyze", help="M-matrix, grouping and exponents")
    _add_code_args(an)
    an.add_argument("--hint", help="JSON partition {groups: [[...]], conditioned: [...]} with 1-based indices")
    _add_out(an)

    div = sub.add_parser("diversity", help="Minimum determinant scan")
    _add_code_args(div)
    div.add_argument("--alphabet", type=_alphabet, default=[-2, 0, 2],
                     help="Comma-separated coefficient differences; use --alphabet=-2,0,2 (default: -2,0,2)")
    div.add_argument("--mode", choices=["exhaustive", "random"], default="random", help="Scan mode (default: random)")
    div.add_argument("--samples", type=int, default=100_000, help="Random samples (default: 100000)")
    div.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    div.add_argument("--workers", type=int, default=config.WORKERS, help="Worker processes (default: %(default)s)")
    div.add_argument("--expect", choices=["diverse"], help="Exit 1 when a vanishing determinant is found")
    _add_out(div)

    th = sub.add_parser("check-theta", help="Full-diversity criteria for theta")
    th.add_argument("--field", default="Q(i)", choices=list(BUILTIN_FIELDS), help="Ground field F (default: Q(i))")
    th.add_argument("--a", default="-1", help="K = F(sqrt a) (default: -1)")
    th.add_argument("--gamma", default="-1", help="gamma in F (default: -1)")
    th.add_argument("--theta", required=True, help="theta in F, or in K for --cubic")
    th.add_argument("--search-bound", type=int, default=2, help="Isotropy search bound (default: 2)")
    th.add_argument("--cubic", choices=["deg3_ex1", "deg3_ex2"],
                    help="Check tau(theta^3) != theta^3 over the field of this degree-3 code instead")
    th.add_argument("--expect", choices=["diverse"], help="Exit 1 on a counterexample verdict")
    _add_out(th)

    bench = sub.add_parser("decode-bench", help="Sphere-decoder node counts per trial")
    _add_code_args(bench)
    bench.add_argument("--snr", type=float, required=True, help="SNR in dB")
    bench.add_argument("--trials", type=int, default=100, help="Trials (default: 100)")
    bench.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    bench.add_argument("--order", choices=["basis", "grouping"], default="basis", help="Column order (default: basis)")
    bench.add_argument("--alphabet", type=_alphabet, default=[-1, 1], help="PAM alphabet (default: -1,1)")
    bench.add_argument("--n-rx", type=int, help="Receive antennas (default: kappa / (2 * side))")
    _add_out(bench)

    simp = sub.add_parser("simulate", help="Monte Carlo BLER")
    simp.add_argument("--config", required=True, help="Simulation config JSON")
    simp.add_argument("--workers", type=int, help="Override the config's worker count")
    _add_out(simp)
    return parser


def _code(args) -> CodeSpec:
    return make_code(args.code, theta=args.theta, scaled=args.scaled)


def _cmd_catalog(args) -> int:
    if args.action == "list":
        for name in list_codes():
            print(name)
        return EXIT_OK
    code = _code(args)
    if args.json:
        _write(export_code(code), args.out)
        return EXIT_OK
    summary = {
        "name": code.name,
        "description": code.description,
        "field": code.field.name,
        "n": code.n,
        "side": code.side,
        "kappa": code.kappa,
        "normalization": code.normalization,
        "fully_diverse_claim": code.fully_diverse_claim,
        "claimed_exponent": code.claimed_exponent,
    }
    _write(summary, args.out)
    return EXIT_OK


def _write(obj, out: Optional[str], config_echo: Optional[dict] = None) -> None:
    text = emit(obj, "json", out, config=config_echo)
    if out is None:
        print(text, end="")


def _cmd_analyze(args) -> int:
    hint = None
    if args.hint:
        path = Path(args.hint)
        if not path.is_file():
            raise ConfigError(f"hint file {path} not found")
        hint = Partition.model_validate_json(path.read_text())
    report = analyze_code(_code(args), hint)
    _write(report, args.out, {"code": args.code, "theta": args.theta, "scaled": args.scaled, "hint": args.hint})
    return EXIT_OK


def _cmd_diversity(args) -> int:
    code = _code(args)
    try:
        result = min_det_scan(code, args.alphabet, args.mode, args.samples, args.seed, args.workers)
    except BudgetExceededError as e:
        logger.warning(f"{e}; falling back to {args.samples} random samples")
        result = min_det_scan(code, args.alphabet, "random", args.samples, args.seed, args.workers)
    echo = {"code": args.code, "theta": args.theta, "scaled": args.scaled, "alphabet": args.alphabet,
            "mode": args.mode, "samples": args.samples, "seed": args.seed}
    _write(result, args.out, echo)
    if args.expect == "diverse" and result.count_zero > 0:
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_check_theta(args) -> int:
    if args.cubic:
        code = make_code(args.cubic)
        K = code.field
        theta = K(args.theta)
        result = {"theta": repr(theta), "field": K.name, "tau_theta3_differs": degree3_theta_check(theta, K.automorphism("tau"))}
        _write(result, args.out, _echo(args))
        return EXIT_VERDICT if args.expect == "diverse" and not result["tau_theta3_differs"] else EXIT_OK
    F = get_field(args.field)
    report = quaternion_theta_check(F, args.a, args.gamma, args.theta, args.search_bound)
    _write(report, args.out, _echo(args))
    if args.expect == "diverse" and report.verdict == "counterexample":
        return EXIT_VERDICT
    return EXIT_OK


def _echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("out", "log_level", "workers")}


def _cmd_decode_bench(args) -> int:
    code = _code(args)
    rows = decode_bench(code, args.snr, args.trials, args.seed, args.order, args.alphabet, args.n_rx)
    text = emit(rows, "csv", args.out, header=BENCH_HEADER, config=_echo(args))
    if args.out is None:
        print(text, end="")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    cfg = SimConfig.from_file(args.config)
    if args.workers:
        cfg = cfg.model_copy(update={"workers": args.workers})
    result = run_bler(cfg)
    text = emit(result, "csv", args.out, header=SIM_HEADER, config=cfg.echo())
    if args.out is None:
        print(text, end="")
    return EXIT_OK


COMMANDS = {
    "catalog": _cmd_catalog,
    "analyze": _cmd_analyze,
    "diversity": _cmd_diversity,
    "check-theta": _cmd_check_theta,
    "decode-bench": _cmd_decode_bench,
    "simulate": _cmd_simulate,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s'
    )
    try:
        return COMMANDS[args.verb](args)
    except (IterStbcError, ValidationError) as e:
        logger.error(f"{args.verb}: {e}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
