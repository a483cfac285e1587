"""Projected k-medoid clustering (PROCLUS).

Three phases: greedy selection of well-scattered medoid candidates from a
random sample, hill climbing over medoid sets with per-medoid dimension
selection, and a refinement pass that recomputes dimensions from the final
clusters and removes outliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InsufficientData, InvalidParams
from ..model import Clustering, Dataset, SubspaceCluster
from ..rng import Rng
from .params import ProclusParams


@dataclass
class ProclusState:
    medoids: list[int]
    dims: list[tuple[int, ...]]
    labels: np.ndarray
    objective: float

    def cluster_sizes(self, k: int) -> np.ndarray:
        return np.bincount(self.labels[self.labels >= 0], minlength=k)


@dataclass
class ProclusResult:
    medoids: list[int]
    dims: list[tuple[int, ...]]
    labels: np.ndarray  # -1 marks outliers
    best_objective: float
    history: list[float] = field(default_factory=list)   # every evaluated medoid set
    accepted: list[float] = field(default_factory=list)  # each new best, in order
    candidates: list[int] = field(default_factory=list)


def greedy_candidates(rows: np.ndarray, sample: list[int], count: int) -> list[int]:
    """Well-scattered subset: start from the lowest id, then repeatedly add the
    point farthest (Euclidean) from everything chosen so far."""
    pool = np.array(sorted(sample), dtype=np.intp)
    chosen = [int(pool[0])]
    mind = np.linalg.norm(rows[pool] - rows[pool[0]], axis=1)
    mind[0] = -1.0
    while len(chosen) < count:
        nxt = int(np.argmax(mind))  # first maximum = lowest id
        chosen.append(int(pool[nxt]))
        mind = np.minimum(mind, np.linalg.norm(rows[pool] - rows[pool[nxt]], axis=1))
        for c in range(len(pool)):
            if int(pool[c]) in chosen:
                mind[c] = -1.0
    return chosen


def select_dimensions(spread: np.ndarray, l: int) -> list[tuple[int, ...]]:
    """Pick k*l (medoid, dim) slots by ascending standardized spread, at least two per medoid.

    ``spread[i, j]`` is the average distance along j between medoid i and
    its neighbourhood. Each row is standardized by its own mean and sample
    standard deviation; a row with zero deviation standardizes to zeros.
    """
    k, d = spread.shape
    mean = spread.mean(axis=1, keepdims=True)
    if d > 1:
        sd = np.sqrt(((spread - mean) ** 2).sum(axis=1, keepdims=True) / (d - 1))
    else:
        sd = np.zeros((k, 1))
    z = np.divide(spread - mean, sd, out=np.zeros_like(spread), where=sd > 0)

    picked = [set() for _ in range(k)]
    for i in range(k):
        for j in np.lexsort((np.arange(d), z[i]))[:2]:
            picked[i].add(int(j))
    rest = [(z[i, j], i, j) for i in range(k) for j in range(d) if j not in picked[i]]
    rest.sort()
    for _, i, j in rest[:k * l - 2 * k]:
        picked[i].add(j)
    return [tuple(sorted(s)) for s in picked]


def segmental_distances(rows: np.ndarray, medoid_rows: np.ndarray, dims: list[tuple[int, ...]]) -> np.ndarray:
    """(n, k) Manhattan distance over each medoid's dims, divided by their count."""
    out = np.empty((rows.shape[0], len(dims)))
    for i, ds in enumerate(dims):
        cols = list(ds)
        out[:, i] = np.abs(rows[:, cols] - medoid_rows[i, cols]).sum(axis=1) / len(cols)
    return out


def _influence_radii(rows: np.ndarray, medoids: list[int], sample: list[int]) -> np.ndarray:
    mrows = rows[medoids]
    k = len(medoids)
    if k == 1:
        return np.array([np.linalg.norm(rows[sample] - mrows[0], axis=1).max()])
    dist = np.linalg.norm(mrows[:, None, :] - mrows[None, :, :], axis=2)
    np.fill_diagonal(dist, np.inf)
    return dist.min(axis=1)


def _evaluate(rows, medoids, sample, l) -> ProclusState:
    mrows = rows[medoids]
    delta = _influence_radii(rows, medoids, sample)
    spread = np.empty((len(medoids), rows.shape[1]))
    for i, m in enumerate(medoids):
        local = np.linalg.norm(rows - mrows[i], axis=1) <= delta[i]
        spread[i] = np.abs(rows[local] - mrows[i]).mean(axis=0)
    dims = select_dimensions(spread, l)
    seg = segmental_distances(rows, mrows, dims)
    labels = np.argmin(seg, axis=1)
    objective = float(seg[np.arange(rows.shape[0]), labels].mean())
    return ProclusState(list(medoids), dims, labels, objective)


def proclus(data: Dataset, p: ProclusParams) -> ProclusResult:
    n, d = data.n, data.d
    k, l = p.k, p.l
    if n < k:
        raise InsufficientData(f"PROCLUS needs at least k={k} objects, got {n}")
    if l > d:
        raise InvalidParams(f"l={l} exceeds the dimensionality d={d}")
    rows = data.rows
    rng = Rng(p.seed)

    sample = rng.sample(range(n), min(n, p.sample_factor * k))
    cand = greedy_candidates(rows, sample, min(len(sample), p.candidate_factor * k))
    current = rng.sample(cand, k)

    best: ProclusState | None = None
    history, accepted = [], []
    stale = 0
    iterations = 0
    while stale < p.effective_patience and iterations < p.max_iterations:
        iterations += 1
        state = _evaluate(rows, current, sample, l)
        history.append(state.objective)
        if best is None or state.objective < best.objective:
            best = state
            accepted.append(state.objective)
            stale = 0
        else:
            stale += 1
        unused = [c for c in cand if c not in best.medoids]
        if not unused:
            break
        sizes = best.cluster_sizes(k)
        worst = int(np.argmin(sizes))
        current = list(best.medoids)
        current[worst] = rng.choice(unused)

    # refinement: dimensions from the clusters themselves, one reassignment, outliers
    medoids = best.medoids
    mrows = rows[medoids]
    spread = np.empty((k, d))
    delta = _influence_radii(rows, medoids, sample)
    for i in range(k):
        members = best.labels == i
        if not members.any():
            members = np.linalg.norm(rows - mrows[i], axis=1) <= delta[i]
        spread[i] = np.abs(rows[members] - mrows[i]).mean(axis=0)
    dims = select_dimensions(spread, l)
    seg = segmental_distances(rows, mrows, dims)
    labels = np.argmin(seg, axis=1)
    if k == 1:
        radius = np.array([math.inf])
    else:
        between = segmental_distances(mrows, mrows, dims)  # [a, i]: medoid a to medoid i over D_i
        np.fill_diagonal(between, np.inf)
        radius = between.min(axis=0)
    own = seg[np.arange(n), labels]
    labels = np.where(own > radius[labels], -1, labels)

    return ProclusResult(list(medoids), dims, labels, best.objective, history, accepted, cand)


def run_proclus(data: Dataset, p: ProclusParams) -> Clustering:
    res = proclus(data, p)
    clusters = []
    for i in range(p.k):
        objs = np.flatnonzero(res.labels == i)
        if objs.size:
            clusters.append(SubspaceCluster(frozenset(int(o) for o in objs), frozenset(res.dims[i])))
    return Clustering(tuple(clusters), data.n, data.d, label="proclus")
