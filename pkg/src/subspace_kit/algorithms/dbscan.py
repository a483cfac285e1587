"""DBSCAN restricted to a dimension subset and a candidate object set."""

from __future__ import annotations

from collections import deque
from typing import Iterable

import numpy as np

from ..errors import InvalidParams
from ..model import Dataset


def _neighbourhoods(points: np.ndarray, eps: float) -> list[np.ndarray]:
    m = points.shape[0]
    out = []
    block = max(1, 4_000_000 // max(1, m))
    for start in range(0, m, block):
        chunk = points[start:start + block]
        diff = chunk[:, None, :] - points[None, :, :]
        dist2 = np.einsum("ijk,ijk->ij", diff, diff)
        if np.isinf(eps):
            within = np.ones_like(dist2, dtype=bool)
        else:
            within = dist2 <= eps * eps
        out.extend(np.flatnonzero(row) for row in within)
    return out


def run_dbscan(data: Dataset, subspace: Iterable[int], candidates: Iterable[int],
               eps: float, min_pts: int) -> list[frozenset]:
    """Density-based clusters of ``candidates`` under Euclidean distance on ``subspace``.

    A point is core when at least ``min_pts`` candidates (itself included) lie
    within ``eps``. Points are visited in ascending id order; a border point
    reachable from several clusters stays with the first one that reached it.
    Noise is dropped. Clusters come back in discovery order.
    """
    dims = sorted(set(subspace))
    if not dims:
        raise InvalidParams("subspace must be non-empty")
    if not (eps > 0):
        raise InvalidParams(f"eps must be > 0, got {eps!r}")
    if min_pts < 1:
        raise InvalidParams(f"min_pts must be >= 1, got {min_pts!r}")
    ids = np.array(sorted(set(int(c) for c in candidates)), dtype=np.intp)
    if ids.size == 0:
        return []
    pts = data.rows[np.ix_(ids, dims)]
    nbrs = _neighbourhoods(pts, eps)
    core = np.array([len(nb) >= min_pts for nb in nbrs])

    label = np.full(ids.size, -1, dtype=np.intp)
    clusters = []
    for i in range(ids.size):
        if label[i] != -1 or not core[i]:
            continue
        cid = len(clusters)
        members = [i]
        label[i] = cid
        queue = deque([i])
        while queue:
            p = queue.popleft()
            if not core[p]:
                continue
            for q in nbrs[p]:
                if label[q] == -1:
                    label[q] = cid
                    members.append(q)
                    queue.append(q)
        clusters.append(frozenset(int(ids[m]) for m in members))
    return clusters
