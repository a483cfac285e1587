"""Density-connected subspace clustering (SUBCLU)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import InsufficientData
from ..model import Clustering, Dataset, SubspaceCluster
from .dbscan import run_dbscan
from .params import SubcluParams


@dataclass(frozen=True)
class SubcluRecord:
    """One reported cluster with the candidate set DBSCAN was run on."""

    subspace: tuple[int, ...]
    candidates: frozenset
    objects: frozenset


def _join(subspaces: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    level = set(subspaces)
    ordered = sorted(subspaces)
    k = len(ordered[0]) if ordered else 0
    out = []
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a[:-1] != b[:-1]:
                break
            cand = a + (b[-1],)
            if all(s in level for s in combinations(cand, k)):
                out.append(cand)
    return out


def subclu_search(data: Dataset, p: SubcluParams) -> list[SubcluRecord]:
    """All clusters at all levels, in (level, subspace, discovery) order."""
    if data.n < 1:
        raise InsufficientData("SUBCLU needs at least one object")
    everyone = frozenset(range(data.n))
    clusters_of: dict[tuple[int, ...], list[frozenset]] = {}
    records: list[SubcluRecord] = []

    for j in range(data.d):
        found = run_dbscan(data, (j,), everyone, p.eps, p.min_pts)
        if found:
            clusters_of[(j,)] = found
            records.extend(SubcluRecord((j,), everyone, c) for c in found)

    current = sorted(clusters_of)
    while current:
        k = len(current[0])
        nxt = []
        for cand in _join(current):
            # cheapest parent: fewest clustered objects, then lexicographic
            parents = sorted(combinations(cand, k),
                             key=lambda s: (sum(len(c) for c in clusters_of[s]), s))
            best = parents[0]
            found = []
            for base in clusters_of[best]:
                for c in run_dbscan(data, cand, base, p.eps, p.min_pts):
                    found.append(c)
                    records.append(SubcluRecord(cand, base, c))
            if found:
                clusters_of[cand] = found
                nxt.append(cand)
        current = nxt
    return records


def run_subclu(data: Dataset, p: SubcluParams) -> Clustering:
    clusters = tuple(SubspaceCluster(r.objects, frozenset(r.subspace))
                     for r in subclu_search(data, p))
    return Clustering(clusters, data.n, data.d, label="subclu")
