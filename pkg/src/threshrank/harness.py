"""Seeded Monte-Carlo experiment runner: sweeps, tail experiment, self-checks.

Sweeps run one TBS simulation per (n, seed) cell, aggregate in ascending seed
order, and emit CSV with the fixed header below, so a config maps to
byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import binseq
from .binseq import BinSequence, ground_truth_partition
from .distributions import UNIFORM, BetaParams
from .model import sample_instance, sample_users_to_total_order, substream
from .tbs import run_tbs
from .theory import (
    RegimeSpec,
    divergence_beta_closed_form,
    divergence_quadrature,
    predict_msf_linear,
    predict_msf_power,
)

# Beta parameters of the mismatch experiments (scores vs thresholds).
MISMATCH_FX = BetaParams(2.0, 3.0)
MISMATCH_FY = BetaParams(2.0, 2.0)

CSV_HEADER = (
    "n,m,seeds,mean_msf,ci95,mean_q_total,mean_q_search,"
    "mean_q_iso,mean_q_split,predicted_msf"
)


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: a regime, an n grid, Beta parameters, and a seed range."""

    regime: RegimeSpec
    n_grid: tuple[int, ...]
    fx: BetaParams = UNIFORM
    fy: BetaParams = UNIFORM
    seed_lo: int = 1
    seed_hi: int = 1000
    output_path: str | None = None

    def __post_init__(self):
        if not self.n_grid or any(n < 1 for n in self.n_grid):
            raise ValueError("n_grid must be non-empty with all entries >= 1")
        if self.seed_hi < self.seed_lo:
            raise ValueError("empty seed range")
        for n in self.n_grid:
            if self.regime.m_of_n(n) < 1:
                raise ValueError(f"m(n={n}) rounds to zero users")

    @property
    def seeds(self) -> range:
        return range(self.seed_lo, self.seed_hi + 1)


@dataclass(frozen=True)
class SweepRow:
    """Aggregated Monte-Carlo result for one (n, m) grid point."""

    n: int
    m: int
    seeds_used: int
    mean_msf: float
    ci_half_width: float
    mean_q_total: float
    mean_q_search: float
    mean_q_iso: float
    mean_q_split: float
    predicted_msf: float

    def csv_line(self) -> str:
        return ",".join(
            repr(v) if isinstance(v, float) else str(v)
            for v in (
                self.n,
                self.m,
                self.seeds_used,
                self.mean_msf,
                self.ci_half_width,
                self.mean_q_total,
                self.mean_q_search,
                self.mean_q_iso,
                self.mean_q_split,
                self.predicted_msf,
            )
        )


def _mean_ci(values: Sequence[float]) -> tuple[float, float]:
    """Mean and 95% CI half-width 1.96 * sd / sqrt(s); 0 at a single sample."""
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    if len(arr) < 2:
        return mean, 0.0
    return mean, float(1.96 * arr.std(ddof=1) / math.sqrt(len(arr)))


def run_sweep(config: ExperimentConfig) -> list[SweepRow]:
    """Run TBS over the config's grid and seed range; one SweepRow per n.

    Writes CSV to config.output_path when set.
    """
    divergence = divergence_beta_closed_form(config.fx, config.fy)
    rows = []
    for n in config.n_grid:
        m = config.regime.m_of_n(n)
        msfs, q_tot, q_se, q_is, q_sp = [], [], [], [], []
        for seed in config.seeds:
            instance = sample_instance(n, m, config.fx, config.fy, seed)
            seq, ledger = run_tbs(instance)
            msfs.append(binseq.msf(seq))
            q_tot.append(ledger.total)
            q_se.append(ledger.q_search)
            q_is.append(ledger.q_iso)
            q_sp.append(ledger.q_split)
        mean_msf, ci = _mean_ci(msfs)
        if config.regime.gamma == 1.0:
            predicted, _slack = predict_msf_linear(n, config.regime.r, divergence)
        else:
            predicted = predict_msf_power(n, config.regime, divergence)
        rows.append(
            SweepRow(
                n=n,
                m=m,
                seeds_used=len(msfs),
                mean_msf=mean_msf,
                ci_half_width=ci,
                mean_q_total=float(np.mean(q_tot)),
                mean_q_search=float(np.mean(q_se)),
                mean_q_iso=float(np.mean(q_is)),
                mean_q_split=float(np.mean(q_sp)),
                predicted_msf=predicted,
            )
        )
    if config.output_path is not None:
        write_csv(rows, config.output_path)
    return rows


def write_csv(rows: Iterable[SweepRow], path: str) -> None:
    """Emit the sweep CSV (newline-terminated, decimal point, no separators)."""
    lines = [CSV_HEADER] + [row.csv_line() for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def run_tail_experiment(
    n: int,
    fx: BetaParams,
    fy: BetaParams,
    m_probe_grid: Sequence[int],
    runs: int,
    cap: int,
    seed: int,
) -> list[tuple[int, float]]:
    """Survival estimates P(M > m) of the users-to-total-order count.

    Repeats sample_users_to_total_order `runs` times on one sequential stream;
    runs censored at `cap` count as survivors at every probe <= cap.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    probes = sorted(m_probe_grid)
    if cap < probes[-1]:
        raise ValueError("cap must cover the largest probe")
    rng = substream(seed, 0)
    survivors = {m: 0 for m in probes}
    for _ in range(runs):
        result = sample_users_to_total_order(n, fx, fy, rng, cap)
        for m in probes:
            if result is None or result > m:
                survivors[m] += 1
    return [(m, survivors[m] / runs) for m in probes]


def fit_loglog_slope(points: Sequence[tuple[int, float]]) -> float:
    """Least-squares slope of log(P) against log(m) over the probe points."""
    xs = np.log([m for m, _ in points])
    ys = np.log([p for _, p in points])
    return float(np.polyfit(xs, ys, 1)[0])


# ---------------------------------------------------------------------------
# Oracle self-checks


@dataclass(frozen=True)
class OracleBudget:
    msf_cases: int = 500
    tbs_cases: int = 200
    divergence_tol: float = 1e-6
    seed: int = 20260823


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class OracleReport:
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def summary(self) -> str:
        lines = []
        for s in self.suites:
            status = "pass" if s.passed else f"FAIL ({len(s.failures)} failures)"
            lines.append(f"{s.name}: {s.cases} cases, {status}")
            lines.extend("  " + f for f in s.failures[:10])
        return "\n".join(lines)


def random_bin_sequence(
    rng: np.random.Generator, max_bins: int = 6, max_size: int = 6
) -> BinSequence:
    """Random bin sequence over consecutively numbered items."""
    sizes = rng.integers(1, max_size + 1, size=int(rng.integers(1, max_bins + 1)))
    bins, next_id = [], 0
    for s in sizes:
        bins.append(range(next_id, next_id + int(s)))
        next_id += int(s)
    return BinSequence(bins)


def divergence_test_grid() -> list[tuple[BetaParams, BetaParams]]:
    """Beta parameter pairs with a bounded, convergent divergence integrand."""
    shapes = [1.0, 1.5, 2.0, 2.5, 3.0]
    pairs = []
    for ax in shapes:
        for bx in shapes:
            for ay in shapes:
                for by in shapes:
                    if 2 * ax - ay >= 1 and 2 * bx - by >= 1:
                        pairs.append((BetaParams(ax, bx), BetaParams(ay, by)))
    return pairs


def run_oracle_checks(budget: OracleBudget = OracleBudget()) -> OracleReport:
    """Run the three dual-route suites and report per-suite failure counts."""
    rng = np.random.default_rng(budget.seed)

    msf_suite = SuiteResult("msf-vs-brute-force", budget.msf_cases)
    for case in range(budget.msf_cases):
        case_seed = int(rng.integers(0, 2**32))
        seq = random_bin_sequence(np.random.default_rng(case_seed))
        closed, brute = binseq.msf(seq), binseq.brute_force_msf(seq)
        if closed != brute:
            msf_suite.failures.append(
                f"case_seed={case_seed} sizes={seq.sizes}: msf={closed} brute={brute}"
            )

    pairs = divergence_test_grid()
    div_suite = SuiteResult("divergence-closed-form-vs-quadrature", len(pairs))
    for fx, fy in pairs:
        closed = divergence_beta_closed_form(fx, fy)
        numeric = divergence_quadrature(fx, fy, tol=budget.divergence_tol / 10)
        if abs(closed - numeric) > budget.divergence_tol * max(1.0, abs(closed)):
            div_suite.failures.append(f"fx={fx} fy={fy}: {closed} vs {numeric}")
        if closed < 1.0 - 1e-9:
            div_suite.failures.append(f"fx={fx} fy={fy}: divergence {closed} < 1")
        if fx == fy and abs(closed - 1.0) > 1e-9:
            div_suite.failures.append(f"fx={fx}=fy: divergence {closed} != 1")

    tbs_suite = SuiteResult("tbs-vs-ground-truth", budget.tbs_cases)
    for case in range(budget.tbs_cases):
        case_seed = int(rng.integers(0, 2**32))
        case_rng = np.random.default_rng(case_seed)
        n = int(case_rng.integers(1, 65))
        m = int(case_rng.integers(1, 257))
        fx, fy = (UNIFORM, UNIFORM) if case % 2 == 0 else (MISMATCH_FX, MISMATCH_FY)
        instance = sample_instance(n, m, fx, fy, case_seed)
        seq, ledger = run_tbs(instance)
        truth = ground_truth_partition(instance)
        if seq != truth:
            tbs_suite.failures.append(
                f"case_seed={case_seed} n={n} m={m}: bin sequence != ground truth"
            )
        if ledger.q_search > m * (math.log2(n) + 1):
            tbs_suite.failures.append(
                f"case_seed={case_seed} n={n} m={m}: q_search bound violated"
            )
        if ledger.q_iso > ledger.q_split:
            tbs_suite.failures.append(
                f"case_seed={case_seed} n={n} m={m}: q_iso > q_split"
            )

    return OracleReport([msf_suite, div_suite, tbs_suite])
