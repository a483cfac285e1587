"""Synthetic data with hidden axis-parallel subspace clusters, plus its ground truth.

Draw order from the seeded stream is fixed: per cluster its dim count, its
dims and its center; then every clustered object cluster by cluster, dim by
dim; then noise objects; then one shuffle of all rows.
"""

from __future__ import annotations

import math
from dataclasses import MISSING, asdict, dataclass, fields
from typing import Optional

import numpy as np

from .errors import InvalidSpec
from .model import Clustering, Dataset, SubspaceCluster
from .rng import Rng

MODELS = ("uniform-box", "gaussian")


@dataclass(frozen=True)
class GeneratorSpec:
    n_clustered: int
    d: int
    k: int
    dims_min: int
    dims_max: int
    n_noise: int = 0
    size_weights: Optional[tuple[float, ...]] = None
    extent: float = 0.05
    value_range: tuple[float, float] = (0.0, 1.0)
    model: str = "uniform-box"
    seed: int = 0

    def __post_init__(self):
        def need(cond, field_name, msg):
            if not cond:
                raise InvalidSpec(f"{field_name}: {msg}")

        def is_int(v):
            return isinstance(v, int) and not isinstance(v, bool)

        for name in ("n_clustered", "d", "k", "dims_min", "dims_max", "n_noise", "seed"):
            need(is_int(getattr(self, name)), name, f"must be an integer, got {getattr(self, name)!r}")
        need(self.k >= 1, "k", "at least one cluster is required")
        need(self.d >= 2, "d", "must be >= 2")
        need(self.n_noise >= 0, "n_noise", "must be >= 0")
        need(self.n_clustered >= self.k, "n_clustered", f"must be >= k={self.k}")
        need(self.dims_min >= 2, "dims_min", "must be >= 2")
        need(self.dims_min <= self.dims_max, "dims_min", f"dims_min={self.dims_min} exceeds dims_max={self.dims_max}")
        need(self.dims_max <= self.d, "dims_max", f"dims_max={self.dims_max} exceeds d={self.d}")
        need(0 <= self.seed < 2**64, "seed", "must fit in 64 unsigned bits")
        need(self.model in MODELS, "model", f"must be one of {MODELS}, got {self.model!r}")
        try:
            lo, hi = (float(v) for v in self.value_range)
        except (TypeError, ValueError):
            raise InvalidSpec("value_range: must be a pair [lo, hi]") from None
        need(math.isfinite(lo) and math.isfinite(hi) and lo < hi, "value_range", "needs finite lo < hi")
        object.__setattr__(self, "value_range", (lo, hi))
        need(isinstance(self.extent, (int, float)) and not isinstance(self.extent, bool)
             and 0 < self.extent < 0.5 * (hi - lo), "extent", "must lie in (0, half the value range)")
        if self.size_weights is not None:
            weights = tuple(float(x) for x in self.size_weights)
            need(len(weights) == self.k, "size_weights", f"needs {self.k} entries, got {len(weights)}")
            need(all(math.isfinite(x) and x > 0 for x in weights), "size_weights", "entries must be positive")
            object.__setattr__(self, "size_weights", weights)
        if min(cluster_sizes(self)) < 1:
            raise InvalidSpec("size_weights: apportionment leaves a cluster empty")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["value_range"] = list(self.value_range)
        if self.size_weights is not None:
            out["size_weights"] = list(self.size_weights)
        return out

    @classmethod
    def from_dict(cls, raw: dict, seed: Optional[int] = None) -> "GeneratorSpec":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise InvalidSpec(f"{unknown[0]}: unknown field")
        missing = [f.name for f in fields(cls)
                   if f.name not in raw and f.default is MISSING]
        if missing:
            raise InvalidSpec(f"{missing[0]}: required field missing")
        kwargs = dict(raw)
        if seed is not None:
            kwargs["seed"] = seed
        if kwargs.get("size_weights") is not None:
            kwargs["size_weights"] = tuple(kwargs["size_weights"])
        if "value_range" in kwargs:
            vr = kwargs["value_range"]
            if not isinstance(vr, (list, tuple)) or len(vr) != 2:
                raise InvalidSpec("value_range: must be a pair [lo, hi]")
            kwargs["value_range"] = tuple(vr)
        return cls(**kwargs)


def apportion(total: int, weights) -> list[int]:
    """Largest-remainder split of ``total``; ties on the remainder go to the lower index."""
    wsum = float(sum(weights))
    quotas = [total * w / wsum for w in weights]
    sizes = [math.floor(q) for q in quotas]
    left = total - sum(sizes)
    order = sorted(range(len(weights)), key=lambda i: (-(quotas[i] - sizes[i]), i))
    for i in order[:left]:
        sizes[i] += 1
    return sizes


def cluster_sizes(spec: GeneratorSpec) -> list[int]:
    weights = spec.size_weights if spec.size_weights is not None else (1.0,) * spec.k
    return apportion(spec.n_clustered, weights)


def _truncated_gauss(rng: Rng, center: float, extent: float) -> float:
    sigma = extent / 2.0
    while True:
        v = rng.gauss(center, sigma)
        if abs(v - center) <= extent:
            return v


@dataclass(frozen=True)
class HiddenCluster:
    dims: tuple[int, ...]
    center: dict  # dim -> center value


def generate(spec: GeneratorSpec) -> tuple[Dataset, Clustering]:
    """Synthesize (dataset, ground truth). Ground-truth ids refer to the shuffled rows."""
    return generate_with_centers(spec)[:2]


def generate_with_centers(spec: GeneratorSpec) -> tuple[Dataset, Clustering, list[HiddenCluster]]:
    rng = Rng(spec.seed)
    lo, hi = spec.value_range
    e = spec.extent
    hidden = []
    for _ in range(spec.k):
        size = rng.randint(spec.dims_min, spec.dims_max)
        dims = tuple(sorted(rng.sample(range(spec.d), size)))
        center = {j: rng.uniform(lo + e, hi - e) for j in dims}
        hidden.append(HiddenCluster(dims, center))

    rows: list[list[float]] = []
    owner: list[int] = []
    for ci, (hc, size) in enumerate(zip(hidden, cluster_sizes(spec))):
        for _ in range(size):
            row = []
            for j in range(spec.d):
                if j in hc.center:
                    c = hc.center[j]
                    if spec.model == "uniform-box":
                        row.append(rng.uniform(c - e, c + e))
                    else:
                        row.append(_truncated_gauss(rng, c, e))
                else:
                    row.append(rng.uniform(lo, hi))
            rows.append(row)
            owner.append(ci)
    for _ in range(spec.n_noise):
        rows.append([rng.uniform(lo, hi) for _ in range(spec.d)])
        owner.append(-1)

    order = list(range(len(rows)))
    rng.shuffle(order)
    shuffled = [rows[i] for i in order]
    members: list[set] = [set() for _ in range(spec.k)]
    for new_id, old_id in enumerate(order):
        if owner[old_id] >= 0:
            members[owner[old_id]].add(new_id)

    n = len(shuffled)
    data = Dataset(np.array(shuffled, dtype=np.float64).reshape(n, spec.d),
                   tuple(f"dim_{j}" for j in range(spec.d)), "generated")
    truth = Clustering(tuple(SubspaceCluster(frozenset(m), frozenset(hc.dims))
                             for m, hc in zip(members, hidden)), n, spec.d, label="truth")
    return data, truth, hidden
