"""Monte-Carlo projective clustering (DOC and FastDOC) and the shared peeling loop.

A cluster is a box of half-width ``w`` around a seed point ``p`` on its
relevant dims ``D``; its quality is ``|C| * (1/beta)**|D|``. Qualities are
handled as logarithms so that wide datasets cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import InsufficientData, InvalidParams
from ..model import Clustering, Dataset, SubspaceCluster
from ..rng import Rng
from .params import DocParams, FastDocParams


@dataclass(frozen=True)
class BoxCandidate:
    seed: int                   # object id of the seed point
    objects: tuple[int, ...]    # object ids, ascending
    dims: tuple[int, ...]
    log_quality: float


def log_quality(size: int, n_dims: int, beta: float) -> float:
    return math.log(size) + n_dims * math.log(1.0 / beta)


def support_threshold(alpha: float, n: int) -> int:
    return max(1, math.ceil(round(alpha * n, 9)))


def doc_trial_counts(alpha: float, beta: float, d: int) -> tuple[int, int]:
    """(r, m): discriminating-set size and inner trials per seed point.

    With beta = 0.5 the size formula has a zero denominator; r is then d.
    """
    if 2 * beta >= 1:
        r = d
    else:
        r = max(1, math.ceil(math.log(2 * d) / math.log(1.0 / (2 * beta))))
    m = math.ceil((2.0 / alpha) ** r * math.log(4))
    return r, m


# draws beyond this need an explicit max_inner_trials cap
MAX_UNCAPPED_DRAWS = 20_000_000


def _inner_trials(p: DocParams, d: int) -> tuple[int, int]:
    r, m = doc_trial_counts(p.alpha, p.beta, d)
    if p.max_inner_trials is not None:
        m = min(m, p.max_inner_trials)
    elif r * m > MAX_UNCAPPED_DRAWS:
        raise InvalidParams(f"alpha={p.alpha}, beta={p.beta}, d={d} imply {m} inner trials of size {r} "
                            f"per seed point; set max_inner_trials to bound the search")
    return r, m


def _box_members(rows: np.ndarray, ids: np.ndarray, p_row: np.ndarray, dims, w: float) -> np.ndarray:
    cols = list(dims)
    inside = np.all(np.abs(rows[np.ix_(ids, cols)] - p_row[cols]) <= w, axis=1)
    return ids[inside]


def _discriminating_dims(rows, ids, p_row, rng: Rng, r: int, m: int, w: float) -> np.ndarray:
    """Boolean (m, d) matrix: dims on which every point of a random r-set stays within w of p."""
    nr = ids.size
    draws = np.array([rng.below(nr) for _ in range(m * r)], dtype=np.intp).reshape(m, r)
    close = np.abs(rows[ids] - p_row) <= w  # (nr, d)
    return np.all(close[draws], axis=1)


def doc_seed_search(rows: np.ndarray, ids: np.ndarray, seed: int, p: DocParams, thr: int,
                    rng: Rng) -> Optional[BoxCandidate]:
    """Best box around one seed point over the Monte-Carlo inner trials."""
    r, m = _inner_trials(p, rows.shape[1])
    p_row = rows[seed]
    masks = _discriminating_dims(rows, ids, p_row, rng, r, m, p.w)
    uniq, first = np.unique(masks, axis=0, return_index=True)
    best = None
    # visit distinct dim sets in order of first appearance so ties go to the earliest trial
    for u in np.argsort(first, kind="stable"):
        dims = tuple(int(j) for j in np.flatnonzero(uniq[u]))
        if not dims:
            continue
        members = _box_members(rows, ids, p_row, dims, p.w)
        if members.size < thr:
            continue
        q = log_quality(members.size, len(dims), p.beta)
        if best is None or q > best.log_quality:
            best = BoxCandidate(int(seed), tuple(int(o) for o in members), dims, q)
    return best


def fastdoc_seed_search(rows, ids, seed, p: FastDocParams, rng: Rng, state: dict) -> bool:
    """Track the largest discriminated dim set; returns True once it reaches d0."""
    d = rows.shape[1]
    r, m = _inner_trials(p, d)
    target = min(p.d0, d)
    p_row = rows[seed]
    masks = _discriminating_dims(rows, ids, p_row, rng, r, m, p.w)
    sizes = masks.sum(axis=1)
    t = int(np.argmax(sizes))
    if sizes[t] > state.get("size", -1):
        state.update(size=int(sizes[t]), seed=int(seed),
                     dims=tuple(int(j) for j in np.flatnonzero(masks[t])))
    return state["size"] >= target


RoundSearch = Callable[[np.ndarray, np.ndarray, int, Rng], Optional[BoxCandidate]]


def peel(data: Dataset, alpha: float, max_clusters: int, seed: int, search_round: RoundSearch,
         label: str) -> tuple[Clustering, list[BoxCandidate]]:
    """Mine one cluster per round on the objects not yet taken, until none qualifies."""
    if data.n < 1:
        raise InsufficientData(f"{label} needs at least one object")
    rng = Rng(seed)
    thr = support_threshold(alpha, data.n)
    remaining = np.arange(data.n, dtype=np.intp)
    found: list[BoxCandidate] = []
    while len(found) < max_clusters and remaining.size >= thr:
        best = search_round(data.rows, remaining, thr, rng)
        if best is None:
            break
        found.append(best)
        remaining = np.setdiff1d(remaining, np.array(best.objects, dtype=np.intp), assume_unique=True)
    clusters = tuple(SubspaceCluster(frozenset(c.objects), frozenset(c.dims)) for c in found)
    return Clustering(clusters, data.n, data.d, label=label), found


def seed_trials(alpha: float) -> int:
    return math.ceil(round(2.0 / alpha, 9))


def doc_search(data: Dataset, p: DocParams) -> tuple[Clustering, list[BoxCandidate]]:
    def round_(rows, ids, thr, rng):
        best = None
        for _ in range(seed_trials(p.alpha)):
            s = int(ids[rng.below(ids.size)])
            cand = doc_seed_search(rows, ids, s, p, thr, rng)
            if cand is not None and (best is None or cand.log_quality > best.log_quality):
                best = cand
        return best

    return peel(data, p.alpha, p.max_clusters, p.seed, round_, "doc")


def run_doc(data: Dataset, p: DocParams) -> Clustering:
    return doc_search(data, p)[0]


def fastdoc_search(data: Dataset, p: FastDocParams) -> tuple[Clustering, list[BoxCandidate]]:
    def round_(rows, ids, thr, rng):
        state: dict = {}
        for _ in range(seed_trials(p.alpha)):
            s = int(ids[rng.below(ids.size)])
            if fastdoc_seed_search(rows, ids, s, p, rng, state):
                break
        if not state.get("dims"):
            return None
        members = _box_members(rows, ids, rows[state["seed"]], state["dims"], p.w)
        if members.size < thr:
            return None
        return BoxCandidate(state["seed"], tuple(int(o) for o in members), state["dims"],
                            log_quality(members.size, len(state["dims"]), p.beta))

    return peel(data, p.alpha, p.max_clusters, p.seed, round_, "fastdoc")


def run_fastdoc(data: Dataset, p: FastDocParams) -> Clustering:
    return fastdoc_search(data, p)[0]
