"""MineClus: DOC's box model with the inner random search replaced by frequent itemset mining.

Around a seed point p every object contributes the itemset of dims on which
it lies within w of p. The best cluster for p is the frequent itemset with
the highest quality, found exactly by a levelwise (apriori) search over
per-dimension object bitsets.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional

import numpy as np

from ..model import Clustering, Dataset
from .doc import BoxCandidate, log_quality, peel, seed_trials
from .params import MineclusParams


def _bitsets(close: np.ndarray) -> list[int]:
    """One Python int per dimension; bit t set when object t is close on that dim."""
    out = []
    for col in close.T:
        packed = np.packbits(col, bitorder="little")
        out.append(int.from_bytes(packed.tobytes(), "little"))
    return out


def frequent_itemsets(bits: list[int], thr: int):
    """Yield (itemset, support bitset) for every itemset with support >= thr, level by level."""
    level = {}
    for j, b in enumerate(bits):
        if b.bit_count() >= thr:
            level[(j,)] = b
    while level:
        yield from sorted(level.items())
        ordered = sorted(level)
        nxt = {}
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                if a[:-1] != b[:-1]:
                    break
                cand = a + (b[-1],)
                if any(sub not in level for sub in combinations(cand, len(a))):
                    continue
                support = level[a] & bits[b[-1]]
                if support.bit_count() >= thr:
                    nxt[cand] = support
        level = nxt


def mineclus_seed_search(rows: np.ndarray, ids: np.ndarray, seed: int, w: float, beta: float,
                         thr: int) -> Optional[BoxCandidate]:
    """Exact best box around one seed point (ties keep the earlier itemset in levelwise order)."""
    close = np.abs(rows[ids] - rows[seed]) <= w
    best = None
    best_bits = 0
    for itemset, support in frequent_itemsets(_bitsets(close), thr):
        q = log_quality(support.bit_count(), len(itemset), beta)
        if best is None or q > best[1]:
            best = (itemset, q)
            best_bits = support
    if best is None:
        return None
    members = [int(ids[t]) for t in range(ids.size) if best_bits >> t & 1]
    return BoxCandidate(int(seed), tuple(members), best[0], best[1])


def mineclus_search(data: Dataset, p: MineclusParams) -> tuple[Clustering, list[BoxCandidate]]:
    def round_(rows, ids, thr, rng):
        best = None
        for _ in range(seed_trials(p.alpha)):
            s = int(ids[rng.below(ids.size)])
            cand = mineclus_seed_search(rows, ids, s, p.w, p.beta, thr)
            if cand is not None and (best is None or cand.log_quality > best.log_quality):
                best = cand
        return best

    return peel(data, p.alpha, p.max_clusters, p.seed, round_, "mineclus")


def run_mineclus(data: Dataset, p: MineclusParams) -> Clustering:
    return mineclus_search(data, p)[0]
