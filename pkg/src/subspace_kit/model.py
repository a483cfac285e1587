"""Domain types: datasets, subspace clusters, clusterings, micro-objects.

Object and dimension ids are 0-based everywhere. All types are frozen; the
dataset's value matrix is a read-only numpy array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidCluster, ValidationError

MicroObjectSet = frozenset  # of (object id, dimension id) pairs


@dataclass(frozen=True)
class Dataset:
    """n objects with d real-valued features."""

    rows: np.ndarray
    dim_names: tuple[str, ...]
    source_label: Optional[str] = None

    def __post_init__(self):
        names = tuple(str(x) for x in self.dim_names)
        d = len(names)
        if d < 1:
            raise ValidationError("a dataset needs at least one dimension")
        if len(set(names)) != d:
            dupes = sorted({x for x in names if names.count(x) > 1})
            raise ValidationError(f"duplicate dimension names: {dupes}")
        arr = np.array(self.rows, dtype=np.float64, copy=True)
        if arr.size == 0:
            arr = arr.reshape(0, d)
        if arr.ndim != 2 or arr.shape[1] != d:
            raise ValidationError(f"rows must have shape (n, {d}), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("dataset values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "rows", arr)
        object.__setattr__(self, "dim_names", names)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], dim_names: Optional[Sequence[str]] = None,
                  source_label: Optional[str] = None) -> "Dataset":
        rows = [list(r) for r in rows]
        if dim_names is None:
            if not rows:
                raise ValidationError("cannot infer dimensionality from zero rows")
            dim_names = default_dim_names(len(rows[0]))
        for i, r in enumerate(rows):
            if len(r) != len(dim_names):
                raise ValidationError(f"row {i} has {len(r)} values, expected {len(dim_names)}")
        return cls(np.array(rows, dtype=np.float64).reshape(len(rows), len(dim_names)),
                   tuple(dim_names), source_label)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def d(self) -> int:
        return self.rows.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (self.dim_names == other.dim_names
                and self.rows.shape == other.rows.shape
                and bool(np.array_equal(self.rows, other.rows)))

    __hash__ = None


def default_dim_names(d: int) -> tuple[str, ...]:
    return tuple(f"dim_{j}" for j in range(d))


def _id_set(values: Iterable[int], what: str) -> frozenset:
    out = set()
    for v in values:
        if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
            raise InvalidCluster(f"{what} ids must be integers, got {v!r}")
        if v < 0:
            raise InvalidCluster(f"{what} ids must be non-negative, got {v}")
        out.add(int(v))
    if not out:
        raise InvalidCluster(f"a subspace cluster needs at least one {what}")
    return frozenset(out)


@dataclass(frozen=True)
class SubspaceCluster:
    """A set of objects together with the dimensions they cluster in."""

    objects: frozenset
    dims: frozenset

    def __post_init__(self):
        object.__setattr__(self, "objects", _id_set(self.objects, "object"))
        object.__setattr__(self, "dims", _id_set(self.dims, "dimension"))

    @property
    def size(self) -> int:
        return len(self.objects)

    def sorted_objects(self) -> list[int]:
        return sorted(self.objects)

    def sorted_dims(self) -> list[int]:
        return sorted(self.dims)

    def check_bounds(self, n: int, d: int) -> None:
        if max(self.objects) >= n:
            raise InvalidCluster(f"object id {max(self.objects)} out of range for n={n}")
        if max(self.dims) >= d:
            raise InvalidCluster(f"dimension id {max(self.dims)} out of range for d={d}")


@dataclass(frozen=True)
class Clustering:
    """Ordered, possibly overlapping, possibly non-covering list of clusters."""

    clusters: tuple[SubspaceCluster, ...]
    n_ref: int
    d_ref: int
    # free-form provenance (e.g. algorithm name); not part of equality
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        clusters = tuple(self.clusters)
        if self.n_ref < 0 or self.d_ref < 1:
            raise ValidationError(f"invalid reference shape n={self.n_ref}, d={self.d_ref}")
        for c in clusters:
            if not isinstance(c, SubspaceCluster):
                raise InvalidCluster(f"expected SubspaceCluster, got {type(c).__name__}")
            c.check_bounds(self.n_ref, self.d_ref)
        object.__setattr__(self, "clusters", clusters)

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    def __getitem__(self, i):
        return self.clusters[i]

    @classmethod
    def empty(cls, n: int, d: int) -> "Clustering":
        return cls((), n, d)

    def covered_objects(self) -> frozenset:
        out = set()
        for c in self.clusters:
            out |= c.objects
        return frozenset(out)


def micro_objects(cluster: SubspaceCluster) -> MicroObjectSet:
    return frozenset((o, j) for o in cluster.objects for j in cluster.dims)


def clustering_micro_union(c: Clustering | Iterable[SubspaceCluster]) -> MicroObjectSet:
    out = set()
    for cl in c:
        out.update(micro_objects(cl))
    return frozenset(out)
