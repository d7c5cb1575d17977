"""Bin sequences (ordered partial orders over items) and exact MSF evaluation.

A bin sequence is an ordered partition of the items; items inside a bin are
mutually unordered, items in different bins are ordered by bin position. The
maximum Spearman footrule (MSF) of a bin sequence is the diameter, under the
footrule distance, of the set of total orders compatible with it.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .model import Instance


class BinSequence:
    """Immutable ordered partition of item ids into non-empty disjoint bins."""

    __slots__ = ("bins",)

    def __init__(self, bins: Iterable[Iterable[int]]):
        normalized = tuple(frozenset(b) for b in bins)
        for b in normalized:
            if not b:
                raise ValueError("empty bins are never stored")
        total = sum(len(b) for b in normalized)
        if normalized and total != len(frozenset().union(*normalized)):
            raise ValueError("bins must be pairwise disjoint")
        object.__setattr__(self, "bins", normalized)

    def __len__(self) -> int:
        return len(self.bins)

    def __iter__(self):
        return iter(self.bins)

    def __getitem__(self, k: int) -> frozenset:
        return self.bins[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, BinSequence) and self.bins == other.bins

    def __hash__(self) -> int:
        return hash(self.bins)

    def __repr__(self) -> str:
        return f"BinSequence({self.render()!r})"

    @property
    def n_items(self) -> int:
        return sum(len(b) for b in self.bins)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bins)

    def render(self) -> str:
        """Text form '{ids} | {ids} | ...' for logs and golden tests."""
        return " | ".join(
            "{" + ",".join(str(i) for i in sorted(b)) + "}" for b in self.bins
        )


def ground_truth_partition(
    instance: Instance, users: Iterable[int] | None = None
) -> BinSequence:
    """Bin sequence induced by the thresholds of the selected users.

    Items are grouped by the inter-threshold interval their score falls into;
    empty intervals are dropped; bins are ordered by increasing score.
    """
    if users is None:
        selected = instance.thresholds
    else:
        users = sorted(set(users))
        for u in users:
            if not 0 <= u < instance.m:
                raise ValueError(f"user id {u} out of range [0, {instance.m})")
        selected = instance.thresholds[users]
    cuts = np.sort(selected)
    idx = np.searchsorted(cuts, instance.scores)
    bins: dict[int, list[int]] = {}
    for item, k in enumerate(idx):
        bins.setdefault(int(k), []).append(item)
    return BinSequence(bins[k] for k in sorted(bins))


def msf_of_bin(size: int) -> int:
    """MSF of a single bin of `size` items: size^2/2 (even), (size^2-1)/2 (odd)."""
    if size < 0:
        raise ValueError("size must be >= 0")
    return size * size // 2 if size % 2 == 0 else (size * size - 1) // 2


def msf(bin_sequence: BinSequence) -> int:
    """Exact MSF of a bin sequence: sum of the per-bin closed forms."""
    return sum(msf_of_bin(len(b)) for b in bin_sequence)


@lru_cache(maxsize=None)
def _max_footrule(size: int) -> int:
    # Enumerates all permutation pairs of a bin; maximum of
    # sum_i |sigma(i) - sigma'(i)|. Kept independent of msf_of_bin.
    if size <= 1:
        return 0
    perms = np.array(list(permutations(range(size))), dtype=np.int64)
    best = 0
    for row in perms:
        best = max(best, int(np.abs(perms - row).sum(axis=1).max()))
    return best


def brute_force_msf(bin_sequence: BinSequence) -> int:
    """MSF by enumeration of compatible total-order pairs (oracle for msf).

    Per-bin enumeration is exact because compatible orders agree on bin
    membership, so cross-bin displacement is zero and the footrule maximum
    decomposes as a sum of per-bin maxima. Refuses bins larger than 7.
    """
    for b in bin_sequence:
        if len(b) > 7:
            raise ValueError(f"bin of size {len(b)} exceeds the enumeration budget")
    return sum(_max_footrule(len(b)) for b in bin_sequence)


def refine(
    bin_sequence: BinSequence,
    bin_index: int,
    lower: Iterable[int],
    upper: Iterable[int],
) -> BinSequence:
    """Replace bin `bin_index` by (lower, upper) in place in the sequence.

    If either part is empty the input is returned unchanged (the split user
    brought no information on that bin).
    """
    lower, upper = frozenset(lower), frozenset(upper)
    target = bin_sequence[bin_index]
    if lower & upper or (lower | upper) != target:
        raise ValueError("lower/upper must partition the selected bin")
    if not lower or not upper:
        return bin_sequence
    bins = list(bin_sequence.bins)
    bins[bin_index : bin_index + 1] = [lower, upper]
    return BinSequence(bins)


def bin_size_stats(
    bin_sequence: BinSequence | Sequence[int], m: int
) -> tuple[float, float]:
    """(sample E[B^2], sample P(B odd)) over all m+1 inter-threshold intervals.

    The statistic averages over every interval, including empty ones, so the
    stored non-empty bins are padded with (m+1) - len zero-size intervals.
    """
    if isinstance(bin_sequence, BinSequence):
        sizes = bin_sequence.sizes
    else:
        sizes = tuple(bin_sequence)
    k = m + 1
    if k < len(sizes):
        raise ValueError(f"m+1 = {k} intervals cannot hold {len(sizes)} non-empty bins")
    eb2 = sum(s * s for s in sizes) / k
    p_odd = sum(1 for s in sizes if s % 2 == 1) / k
    return eb2, p_odd
