"""Sampled problem instances, the rating oracle with query accounting, rescaling.

RNG architecture: a 64-bit master seed derives three named sub-streams via
numpy's SeedSequence with entropy (seed, stream id):

    stream 0 -> item scores        (numpy PCG64)
    stream 1 -> user thresholds    (numpy PCG64)
    stream 2 -> algorithm choices  (stdlib random.Random, seeded from stream 2)

Scores and thresholds live on decoupled streams, so changing m never changes
the scores drawn for a given seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from io import StringIO
from typing import Iterable, TextIO

import numpy as np

from .distributions import UNIFORM, BetaParams, beta_cdf, sample_beta

STREAM_SCORES = 0
STREAM_THRESHOLDS = 1
STREAM_ALGO = 2

_SEED_MASK = (1 << 64) - 1

PHASES = ("search", "iso", "split")


def substream(seed: int, stream: int) -> np.random.Generator:
    """Named numpy sub-stream of a master seed."""
    return np.random.default_rng(np.random.SeedSequence([seed & _SEED_MASK, stream]))


def algo_rng(seed: int) -> random.Random:
    """Algorithm-choices sub-stream (stdlib Random; cheap single draws)."""
    state = np.random.SeedSequence([seed & _SEED_MASK, STREAM_ALGO]).generate_state(2)
    return random.Random((int(state[0]) << 32) | int(state[1]))


@dataclass(frozen=True, eq=False)
class Instance:
    """One sampled world: n item scores and m user thresholds, arrival order."""

    n: int
    m: int
    scores: np.ndarray
    thresholds: np.ndarray
    score_params: BetaParams
    threshold_params: BetaParams
    seed: int


class QueryLedger:
    """Per-(user, item) rating cache plus phase-tagged query counters.

    Each (user, item) pair contributes at most one counted query across all
    phases; repeat lookups return the cached bit for free.
    """

    __slots__ = ("cache", "q_search", "q_iso", "q_split")

    def __init__(self):
        self.cache: dict[tuple[int, int], tuple[int, str]] = {}
        self.q_search = 0
        self.q_iso = 0
        self.q_split = 0

    @property
    def total(self) -> int:
        return self.q_search + self.q_iso + self.q_split

    def has_rating(self, user: int, item: int) -> bool:
        return (user, item) in self.cache

    def phase_of(self, user: int, item: int) -> str | None:
        entry = self.cache.get((user, item))
        return None if entry is None else entry[1]

    def reattribute(self, user: int, item: int, new_phase: str) -> None:
        """Move a cached rating's query count to another phase (Appendix-F style
        accounting: split absorbs the isolate queries on the bin it splits)."""
        bit, old_phase = self.cache[(user, item)]
        if old_phase == new_phase:
            return
        setattr(self, "q_" + old_phase, getattr(self, "q_" + old_phase) - 1)
        setattr(self, "q_" + new_phase, getattr(self, "q_" + new_phase) + 1)
        self.cache[(user, item)] = (bit, new_phase)


def rate(instance: Instance, ledger: QueryLedger, user: int, item: int, phase: str) -> int:
    """Noiseless rating 1(X_item > Y_user), with caching and phase accounting.

    The first query for a (user, item) pair increments the counter of `phase`;
    repeat queries return the cached bit and count nothing.
    """
    entry = ledger.cache.get((user, item))
    if entry is not None:
        return entry[0]
    if not 0 <= user < instance.m:
        raise ValueError(f"user id {user} out of range [0, {instance.m})")
    if not 0 <= item < instance.n:
        raise ValueError(f"item id {item} out of range [0, {instance.n})")
    if phase not in PHASES:
        raise ValueError(f"unknown phase {phase!r}")
    bit = 1 if instance.scores[item] > instance.thresholds[user] else 0
    ledger.cache[(user, item)] = (bit, phase)
    setattr(ledger, "q_" + phase, getattr(ledger, "q_" + phase) + 1)
    return bit


def _distinct_sample(
    params: BetaParams, rng: np.random.Generator, count: int, taken: set[float]
) -> np.ndarray:
    """Draw `count` values, resampling any later value that collides at 64-bit
    float equality with an earlier one (or with `taken`). Ties have probability
    zero in the continuous model; this enforces the convention in float space."""
    if count == 0:
        return np.empty(0)
    values = sample_beta(params, rng, count)
    for i in range(count):
        while values[i] in taken:
            values[i] = sample_beta(params, rng, 1)[0]
        taken.add(float(values[i]))
    return values


def sample_instance(
    n: int, m: int, fx: BetaParams, fy: BetaParams, seed: int
) -> Instance:
    """Sample an instance deterministically from (n, m, fx, fy, seed)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 0:
        raise ValueError("m must be >= 0")
    taken: set[float] = set()
    scores = _distinct_sample(fx, substream(seed, STREAM_SCORES), n, taken)
    thresholds = _distinct_sample(fy, substream(seed, STREAM_THRESHOLDS), m, taken)
    scores.flags.writeable = False
    thresholds.flags.writeable = False
    return Instance(n, m, scores, thresholds, fx, fy, seed)


def rescale_instance(instance: Instance) -> Instance:
    """Compose all scores and thresholds by the threshold CDF F_Y.

    The thresholds become uniform on (0, 1) and the relative order of all
    n + m values is preserved exactly (F_Y is strictly increasing on the
    support). The score_params field is kept as-is: it records the shape the
    scores were originally drawn from, and no further sampling uses it.
    """
    if instance.threshold_params.is_uniform:
        return instance
    fy = instance.threshold_params
    scores = np.asarray(beta_cdf(instance.scores, fy))
    thresholds = np.asarray(beta_cdf(instance.thresholds, fy))
    scores.flags.writeable = False
    thresholds.flags.writeable = False
    return replace(
        instance, scores=scores, thresholds=thresholds, threshold_params=UNIFORM
    )


def _cover_gaps(sorted_scores: np.ndarray, draw, cap: int) -> int | None:
    """Draw thresholds until every gap between consecutive sorted scores holds
    one; returns the number of draws, or None when censored at `cap`."""
    n = len(sorted_scores)
    uncovered = set(range(n - 1))
    count = 0
    while uncovered:
        if count >= cap:
            return None
        y = draw()
        count += 1
        k = int(np.searchsorted(sorted_scores, y)) - 1
        uncovered.discard(k)
    return count


def sample_users_to_total_order(
    n: int,
    fx: BetaParams,
    fy: BetaParams,
    rng: np.random.Generator,
    cap: int,
) -> int | None:
    """Number of user thresholds drawn until the n items are totally ordered.

    Draws n scores once, then thresholds one at a time until every gap between
    consecutive sorted scores contains at least one threshold. Returns the
    count M, or None if M would exceed `cap` (censoring).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    scores = np.sort(sample_beta(fx, rng, n))

    def draw() -> float:
        return float(sample_beta(fy, rng, 1)[0])

    return _cover_gaps(scores, draw, cap)


_HEADER = "threshrank-instance v1"


def instance_to_text(instance: Instance, out: TextIO | None = None) -> str:
    """Line-oriented dump: header with n, m, params, seed; one value per line."""
    buf = out if out is not None else StringIO()
    buf.write(_HEADER + "\n")
    buf.write(f"n {instance.n}\n")
    buf.write(f"m {instance.m}\n")
    buf.write(f"fx {instance.score_params.a!r} {instance.score_params.b!r}\n")
    buf.write(f"fy {instance.threshold_params.a!r} {instance.threshold_params.b!r}\n")
    buf.write(f"seed {instance.seed}\n")
    buf.write("scores\n")
    for v in instance.scores:
        buf.write(repr(float(v)) + "\n")
    buf.write("thresholds\n")
    for v in instance.thresholds:
        buf.write(repr(float(v)) + "\n")
    return buf.getvalue() if out is None else ""


def instance_from_text(lines: Iterable[str] | str) -> Instance:
    """Inverse of instance_to_text (values round-trip via repr)."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    it = iter(lines)
    if next(it).strip() != _HEADER:
        raise ValueError("not a threshrank instance dump")
    fields: dict[str, list[str]] = {}
    for key in ("n", "m", "fx", "fy", "seed"):
        tag, *rest = next(it).split()
        if tag != key:
            raise ValueError(f"expected field {key!r}, got {tag!r}")
        fields[key] = rest
    n, m = int(fields["n"][0]), int(fields["m"][0])
    fx = BetaParams(float(fields["fx"][0]), float(fields["fx"][1]))
    fy = BetaParams(float(fields["fy"][0]), float(fields["fy"][1]))
    seed = int(fields["seed"][0])
    if next(it).strip() != "scores":
        raise ValueError("missing scores section")
    scores = np.array([float(next(it)) for _ in range(n)])
    if next(it).strip() != "thresholds":
        raise ValueError("missing thresholds section")
    thresholds = np.array([float(next(it)) for _ in range(m)])
    scores.flags.writeable = False
    thresholds.flags.writeable = False
    return Instance(n, m, scores, thresholds, fx, fy, seed)
