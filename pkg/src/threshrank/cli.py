"""Command-line interface: sweep, predict, tail, oracle, trace.

Exit codes: 0 success, 1 usage error, 2 oracle-check failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import binseq
from .distributions import BetaParams
from .harness import (
    ExperimentConfig,
    OracleBudget,
    fit_loglog_slope,
    run_oracle_checks,
    run_sweep,
    run_tail_experiment,
)
from .model import sample_instance
from .tbs import run_tbs
from .theory import (
    RegimeSpec,
    divergence_beta_closed_form,
    predict_msf_linear,
    predict_msf_power,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_seeds(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("seed range must look like LO..HI")
    return int(lo), int(hi)


def _parse_grid(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok)


def _add_beta_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ax", type=float, default=1.0, help="score shape a")
    parser.add_argument("--bx", type=float, default=1.0, help="score shape b")
    parser.add_argument("--ay", type=float, default=1.0, help="threshold shape a")
    parser.add_argument("--by", type=float, default=1.0, help="threshold shape b")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="threshrank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="Monte-Carlo sweep over an n grid")
    p.add_argument("--regime", choices=["linear", "power"], required=True)
    p.add_argument("--r", type=float, default=1.0, help="rate constant of m ~ r n^g")
    p.add_argument("--gamma", type=float, default=2.0, help="exponent (power regime)")
    p.add_argument("--n-grid", type=_parse_grid, required=True, metavar="N1,N2,...")
    _add_beta_flags(p)
    p.add_argument("--seeds", type=_parse_seeds, default=(1, 1000), metavar="LO..HI")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("predict", help="print the theoretical MSF predictors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    _add_beta_flags(p)

    p = sub.add_parser("tail", help="users-to-total-order tail experiment")
    p.add_argument("--n", type=int, default=2)
    _add_beta_flags(p)
    p.add_argument("--probes", type=_parse_grid, default=(10, 100, 1000))
    p.add_argument("--runs", type=int, default=100_000)
    p.add_argument("--cap", type=int, default=None, help="censoring cap (default max probe)")
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("oracle", help="run the self-check suites")
    p.add_argument("--msf-cases", type=int, default=500)
    p.add_argument("--tbs-cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=OracleBudget.seed)

    p = sub.add_parser("trace", help="dump a single-run TBS trace")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_beta_flags(p)
    p.add_argument("--seed", type=int, default=1)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "sweep":
        gamma = 1.0 if args.regime == "linear" else args.gamma
        config = ExperimentConfig(
            regime=RegimeSpec(args.r, gamma),
            n_grid=args.n_grid,
            fx=BetaParams(args.ax, args.bx),
            fy=BetaParams(args.ay, args.by),
            seed_lo=args.seeds[0],
            seed_hi=args.seeds[1],
            output_path=args.out,
        )
        rows = run_sweep(config)
        print(f"wrote {len(rows)} rows to {args.out}")
        return 0

    if args.command == "predict":
        fx, fy = BetaParams(args.ax, args.bx), BetaParams(args.ay, args.by)
        div = divergence_beta_closed_form(fx, fy)
        print(f"divergence = {div!r}")
        if args.gamma == 1.0:
            center, slack = predict_msf_linear(args.n, args.r, div)
            print(f"linear regime (m ~ {args.r} n): E[MSF] = {center!r} +- {slack!r}")
        else:
            value = predict_msf_power(args.n, RegimeSpec(args.r, args.gamma), div)
            print(f"power regime (m ~ {args.r} n^{args.gamma}): E[MSF] ~ {value!r}")
        return 0

    if args.command == "tail":
        cap = args.cap if args.cap is not None else max(args.probes)
        points = run_tail_experiment(
            args.n,
            BetaParams(args.ax, args.bx),
            BetaParams(args.ay, args.by),
            args.probes,
            args.runs,
            cap,
            args.seed,
        )
        for m, p in points:
            print(f"m={m} P(M>m)={p!r}")
        print(f"log-log slope = {fit_loglog_slope(points)!r}")
        return 0

    if args.command == "oracle":
        budget = OracleBudget(
            msf_cases=args.msf_cases, tbs_cases=args.tbs_cases, seed=args.seed
        )
        report = run_oracle_checks(budget)
        print(report.summary())
        return 0 if report.passed else 2

    if args.command == "trace":
        instance = sample_instance(
            args.n,
            args.m,
            BetaParams(args.ax, args.bx),
            BetaParams(args.ay, args.by),
            args.seed,
        )
        trace: list[str] = []
        seq, ledger = run_tbs(instance, trace)
        for line in trace:
            print(line)
        print(f"final {seq.render()}")
        print(
            f"msf={binseq.msf(seq)} q_search={ledger.q_search} "
            f"q_iso={ledger.q_iso} q_split={ledger.q_split}"
        )
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    raise SystemExit(main())
