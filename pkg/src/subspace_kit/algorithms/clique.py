"""Grid-based subspace clustering (CLIQUE).

Units are encoded as tuples of (dimension, interval) pairs sorted by
dimension, so two units of the same level join exactly when they agree on
every pair but the last, as in apriori candidate generation.
"""

from __future__ import annotations

import math
from collections import defaultdict

import numpy as np

from ..errors import InsufficientData
from ..model import Clustering, Dataset, SubspaceCluster
from .params import CliqueParams


def grid_cells(data: Dataset, xi: int) -> np.ndarray:
    """Interval index of every value, shape (n, d).

    Each dimension is cut into ``xi`` equal-width intervals over its
    [min, max]. A value equal to an interior boundary goes right; the
    maximum goes to the last interval; a constant dimension is one interval.
    """
    n, d = data.rows.shape
    cells = np.zeros((n, d), dtype=np.int64)
    if n == 0:
        return cells
    for j in range(d):
        col = data.rows[:, j]
        lo, hi = float(col.min()), float(col.max())
        if hi <= lo:
            continue
        width = (hi - lo) / xi
        bounds = lo + width * np.arange(1, xi)
        cells[:, j] = np.minimum(np.searchsorted(bounds, col, side="right"), xi - 1)
    return cells


def density_threshold(tau: float, n: int) -> int:
    # round away float noise such as 0.1 * 30 == 3.0000000000000004
    return max(1, math.ceil(round(tau * n, 9)))


def _count_units(cells: np.ndarray, subspace: tuple[int, ...]) -> dict[tuple, list[int]]:
    members: dict[tuple, list[int]] = defaultdict(list)
    proj = cells[:, list(subspace)]
    for o, row in enumerate(proj.tolist()):
        members[tuple(row)].append(o)
    return members


def dense_units(data: Dataset, p: CliqueParams) -> dict[tuple[int, ...], dict[tuple[int, ...], frozenset]]:
    """Bottom-up dense unit search.

    Returns {subspace: {interval tuple: member objects}} for every subspace
    holding at least one dense unit.
    """
    n, d = data.rows.shape
    thr = density_threshold(p.tau, n)
    cells = grid_cells(data, p.xi)

    result: dict[tuple, dict[tuple, frozenset]] = {}
    level: set[tuple] = set()  # units as ((dim, interval), ...)
    for j in range(d):
        counts = _count_units(cells, (j,))
        dense = {iv: frozenset(objs) for iv, objs in counts.items() if len(objs) >= thr}
        if dense:
            result[(j,)] = dense
            level.update((((j, iv[0]),) for iv in dense))

    k = 1
    while level:
        ordered = sorted(level)
        candidates: dict[tuple, set] = defaultdict(set)
        for a_i in range(len(ordered)):
            a = ordered[a_i]
            for b in ordered[a_i + 1:]:
                if a[:-1] != b[:-1]:
                    break
                if a[-1][0] >= b[-1][0]:
                    continue
                unit = a + (b[-1],)
                if all(unit[:i] + unit[i + 1:] in level for i in range(k + 1)):
                    candidates[tuple(dim for dim, _ in unit)].add(tuple(iv for _, iv in unit))
        k += 1
        level = set()
        for subspace in sorted(candidates):
            counts = _count_units(cells, subspace)
            dense = {}
            for iv in candidates[subspace]:
                objs = counts.get(iv, ())
                if len(objs) >= thr:
                    dense[iv] = frozenset(objs)
            if dense:
                result[subspace] = dense
                level.update(tuple(zip(subspace, iv)) for iv in dense)
    return result


def connected_units(units) -> list[list[tuple[int, ...]]]:
    """Group units sharing a common face; components ordered by their smallest unit."""
    unit_set = set(units)
    seen = set()
    components = []
    for start in sorted(unit_set):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for i in range(len(u)):
                for step in (-1, 1):
                    v = u[:i] + (u[i] + step,) + u[i + 1:]
                    if v in unit_set and v not in seen:
                        seen.add(v)
                        stack.append(v)
        components.append(sorted(comp))
    return components


def run_clique(data: Dataset, p: CliqueParams) -> Clustering:
    if data.n < 1:
        raise InsufficientData("CLIQUE needs at least one object")
    found = dense_units(data, p)
    clusters = []
    for subspace in sorted(found, key=lambda s: (len(s), s)):
        units = found[subspace]
        for comp in connected_units(units):
            objs = frozenset().union(*(units[u] for u in comp))
            clusters.append(SubspaceCluster(objs, frozenset(subspace)))
    return Clustering(tuple(clusters), data.n, data.d, label="clique")

