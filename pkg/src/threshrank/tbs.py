"""Threshold Binary Search: per-user SEARCH, ISOLATE, SPLIT and the driver.

Bins are 1-based inside the phase functions to mirror the pseudocode; the
public BinSequence is 0-based. Item sampling uses the algorithm-choices
sub-stream of the instance seed.

Query accounting follows the convention under which Q^iso <= Q^split holds:
when SPLIT processes a bin, any rating of its items made earlier in the same
user's ISOLATE phase is re-attributed from q_iso to q_split.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .binseq import BinSequence
from .model import Instance, QueryLedger, algo_rng, rate

Bins = Sequence[tuple[int, ...]]


def _as_bins(bins: BinSequence | Iterable[Iterable[int]]) -> Bins:
    # run_tbs already maintains a list of sorted tuples; don't recopy it.
    if isinstance(bins, list) and all(type(b) is tuple for b in bins):
        return bins
    return [tuple(sorted(b)) for b in bins]


def search(
    bin_sequence,
    instance: Instance,
    ledger: QueryLedger,
    user: int,
    rng: random.Random,
    trace: list[str] | None = None,
) -> tuple[int, int]:
    """Bisect the bin sequence down to two adjacent candidate bins (1-based).

    Repeatedly queries one uniformly sampled item of the middle bin: a rating
    of 1 moves the right edge, 0 the left. Returns (l, r) with r - l <= 1;
    sequences of at most two bins need no queries.
    """
    bins = _as_bins(bin_sequence)
    l, r = 1, len(bins)
    while l < r - 1:
        k = (l + r) // 2
        bin_k = bins[k - 1]
        item = bin_k[rng.randrange(len(bin_k))]
        bit = rate(instance, ledger, user, item, "search")
        if trace is not None:
            trace.append(f"user={user} phase=search bin={k} item={item} rating={bit}")
        if bit == 1:
            r = k
        else:
            l = k
    return l, r


def isolate(
    bin_sequence,
    l: int,
    r: int,
    instance: Instance,
    ledger: QueryLedger,
    user: int,
    rng: random.Random,
    trace: list[str] | None = None,
) -> int:
    """Decide which of bins l and r (1-based) contains the user's threshold.

    Alternates single ratings between the two bins, sampling uniformly without
    replacement within each bin: a 1-rating in bin l settles on l, a 0-rating
    in bin r settles on r. If either bin runs out of unsampled items, the
    larger bin is returned (ties go to r).
    """
    if l == r:
        return l
    bins = _as_bins(bin_sequence)
    bin_l, bin_r = bins[l - 1], bins[r - 1]
    # Exclusion sets grow only with this phase's own picks; a pick that was
    # already rated during SEARCH costs nothing (cached) but still advances
    # the loop. Exhausting a pool certifies the threshold is not interior to
    # that bin, and the exhausted side is never the larger one, so falling
    # back to the larger bin is always safe.
    taken_l: set[int] = set()
    taken_r: set[int] = set()
    while len(taken_l) < len(bin_l) and len(taken_r) < len(bin_r):
        pool_l = [i for i in bin_l if i not in taken_l]
        i = pool_l[rng.randrange(len(pool_l))]
        taken_l.add(i)
        bit = rate(instance, ledger, user, i, "iso")
        if trace is not None:
            trace.append(f"user={user} phase=iso bin={l} item={i} rating={bit}")
        if bit == 1:
            return l
        pool_r = [j for j in bin_r if j not in taken_r]
        j = pool_r[rng.randrange(len(pool_r))]
        taken_r.add(j)
        bit = rate(instance, ledger, user, j, "iso")
        if trace is not None:
            trace.append(f"user={user} phase=iso bin={r} item={j} rating={bit}")
        if bit == 0:
            return r
    return l if len(bin_l) > len(bin_r) else r


def split(
    bin_items: Iterable[int],
    instance: Instance,
    ledger: QueryLedger,
    user: int,
    trace: list[str] | None = None,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Rate every item of the bin; return (items rated 0, items rated 1).

    Cached ratings are reused without counting, but every query this user ever
    made on an item of the bin is re-attributed to q_split: the split phase
    owns all ratings of the bin it splits, which is the accounting under
    which q_iso <= q_split holds.
    """
    lower, upper = [], []
    for i in sorted(bin_items):
        if ledger.phase_of(user, i) not in (None, "split"):
            ledger.reattribute(user, i, "split")
        bit = rate(instance, ledger, user, i, "split")
        if trace is not None:
            trace.append(f"user={user} phase=split item={i} rating={bit}")
        (upper if bit else lower).append(i)
    return tuple(lower), tuple(upper)


def run_tbs(
    instance: Instance, trace: list[str] | None = None
) -> tuple[BinSequence, QueryLedger]:
    """Run TBS over all users in arrival order.

    Each user is steered through search -> isolate -> split; the bin sequence
    is refined whenever the split produces two non-empty parts. The final
    sequence carries all the information the users can provide, i.e. it equals
    the ground-truth partition over all m users.
    """
    ledger = QueryLedger()
    rng = algo_rng(instance.seed)
    bins: list[tuple[int, ...]] = [tuple(range(instance.n))]
    for user in range(instance.m):
        l, r = search(bins, instance, ledger, user, rng, trace)
        k = isolate(bins, l, r, instance, ledger, user, rng, trace)
        lower, upper = split(bins[k - 1], instance, ledger, user, trace)
        if trace is not None:
            trace.append(f"user={user} l={l} r={r} k={k}")
        if lower and upper:
            bins[k - 1 : k] = [lower, upper]
    return BinSequence(bins), ledger
