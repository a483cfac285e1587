"""External measures comparing a found clustering with a reference clustering.

All scores lie in [0, 1] with 1 best. Micro-object measures (CE, RNIA, E4SC)
credit (object, dimension) pairs, so a cluster found in the wrong subspace is
penalised even when its objects are right; F1P/F1R and Entropy look at
object sets only. RNIA's micro-object unions use set semantics: an overlap
counted by two clusters counts once. CE counts a pair as often as the side
that covers it more often, see ce_union_size.

Degenerate inputs are pinned rather than raised where a sweep would
otherwise abort: an empty found clustering scores 0 (Entropy adds a
warning). An empty reference raises EmptyReference for every measure that
matches against reference clusters.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..errors import DimensionMismatch, EmptyReference
from ..model import Clustering, Dataset, clustering_micro_union, micro_objects
from .hungarian import max_weight_matching


def check_compatible(found: Clustering, ref: Clustering, data: Optional[Dataset] = None) -> None:
    if (found.n_ref, found.d_ref) != (ref.n_ref, ref.d_ref):
        raise DimensionMismatch(
            f"found clustering has n={found.n_ref}, d={found.d_ref}; reference has n={ref.n_ref}, d={ref.d_ref}")
    if data is not None and (data.n, data.d) != (ref.n_ref, ref.d_ref):
        raise DimensionMismatch(
            f"clusterings have n={ref.n_ref}, d={ref.d_ref}; dataset has n={data.n}, d={data.d}")


def _require_reference(ref: Clustering, name: str) -> None:
    if len(ref) == 0:
        raise EmptyReference(f"{name} needs a non-empty reference clustering")


def _overlap_matrix(found: Clustering, ref: Clustering) -> list[list[int]]:
    # |micro(A) ∩ micro(B)| = |O_A ∩ O_B| * |S_A ∩ S_B|
    return [[len(a.objects & b.objects) * len(a.dims & b.dims) for b in ref] for a in found]


def _micro_size(c) -> int:
    return len(c.objects) * len(c.dims)


def _f1(inter: int, size_a: int, size_b: int) -> float:
    return 2.0 * inter / (size_a + size_b)


def eval_rnia(found: Clustering, ref: Clustering, data: Optional[Dataset] = None) -> float:
    check_compatible(found, ref, data)
    f, r = clustering_micro_union(found), clustering_micro_union(ref)
    union = len(f | r)
    if union == 0:
        return 1.0
    return len(f & r) / union


def _micro_counts(c: Clustering) -> Counter:
    counts: Counter = Counter()
    for cl in c:
        counts.update(micro_objects(cl))
    return counts


def ce_union_size(found: Clustering, ref: Clustering) -> int:
    """Size of the micro-object union, each pair counted max(found, ref) times.

    Equal to the plain set union when neither side overlaps itself; with
    self-overlap it keeps CE within [0, 1] and CE(A, A) at exactly 1.
    """
    f, r = _micro_counts(found), _micro_counts(ref)
    return sum(max(f[k], r[k]) for k in f.keys() | r.keys())


def ce_matching(found: Clustering, ref: Clustering) -> tuple[int, int]:
    """(D_max, union size): best one-to-one micro-object overlap and the CE denominator."""
    total, _ = max_weight_matching(_overlap_matrix(found, ref)) if len(found) else (0, [])
    return total, ce_union_size(found, ref)


def eval_ce(found: Clustering, ref: Clustering, data: Optional[Dataset] = None) -> float:
    check_compatible(found, ref, data)
    _require_reference(ref, "CE")
    d_max, union = ce_matching(found, ref)
    return d_max / union


def _best_object_f1(source: Clustering, target: Clustering) -> list[float]:
    out = []
    for a in source:
        best = 0.0
        for b in target:
            best = max(best, _f1(len(a.objects & b.objects), len(a.objects), len(b.objects)))
        out.append(best)
    return out


def eval_f1r(found: Clustering, ref: Clustering, data: Optional[Dataset] = None) -> float:
    check_compatible(found, ref, data)
    _require_reference(ref, "F1R")
    if len(found) == 0:
        return 0.0
    scores = _best_object_f1(ref, found)
    return math.fsum(scores) / len(scores)


def eval_f1p(found: Clustering, ref: Clustering, data: Optional[Dataset] = None) -> float:
    check_compatible(found, ref, data)
    _require_reference(ref, "F1P")
    if len(found) == 0:
        return 0.0
    scores = _best_object_f1(found, ref)
    return math.fsum(scores) / len(scores)


def _best_micro_f1(source: Clustering, target: Clustering, overlap_rows) -> list[float]:
    out = []
    for a, row in zip(source, overlap_rows):
        sa = _micro_size(a)
        out.append(max((_f1(inter, sa, _micro_size(b)) for inter, b in zip(row, target)), default=0.0))
    return out


def _weighted_mean(values, weights) -> float:
    return math.fsum(v * w for v, w in zip(values, weights)) / math.fsum(weights)


def e4sc_components(found: Clustering, ref: Clustering) -> tuple[float, float]:
    """Micro-object-size weighted best-match F1 from the found side and from the reference side."""
    m = _overlap_matrix(found, ref)
    mt = [list(col) for col in zip(*m)] if m else [[] for _ in ref]
    s_pr = _weighted_mean(_best_micro_f1(found, ref, m), [_micro_size(c) for c in found])
    s_re = _weighted_mean(_best_micro_f1(ref, found, mt), [_micro_size(c) for c in ref])
    return s_pr, s_re


def eval_e4sc(found: Clustering, ref: Clustering, data: Optional[Dataset] = None) -> float:
    """Harmonic mean of the two weighted micro-object F1 aggregates.

    This construction is kept behind this one function so that a variant with
    different weighting can replace it without touching callers.
    """
    check_compatible(found, ref, data)
    _require_reference(ref, "E4SC")
    if len(found) == 0:
        return 0.0
    s_pr, s_re = e4sc_components(found, ref)
    if s_pr == 0 or s_re == 0:
        return 0.0
    return 2.0 * s_pr * s_re / (s_pr + s_re)


NOISE = -1


def reference_labels(ref: Clustering, n: int) -> list[int]:
    """Lowest-index reference cluster containing each object, NOISE for none."""
    labels = [NOISE] * n
    for idx in range(len(ref) - 1, -1, -1):
        for o in ref[idx].objects:
            labels[o] = idx
    return labels


def eval_entropy(found: Clustering, ref: Clustering, data: Optional[Dataset] = None,
                 warnings: Optional[list] = None) -> float:
    """1 - (size-weighted label entropy of found clusters) / ln(#labels present)."""
    check_compatible(found, ref, data)
    n = data.n if data is not None else ref.n_ref
    if len(found) == 0:
        if warnings is not None:
            warnings.append("entropy: found clustering is empty, score set to 0")
        return 0.0
    labels = reference_labels(ref, n)
    n_labels = len(set(labels))
    if n_labels < 2:
        return 1.0
    total = sum(len(c.objects) for c in found)
    weighted = []
    for c in found:
        counts: dict[int, int] = {}
        for o in c.objects:
            counts[labels[o]] = counts.get(labels[o], 0) + 1
        size = len(c.objects)
        h = -math.fsum(k / size * math.log(k / size) for k in counts.values())
        weighted.append(size / total * h)
    score = 1.0 - math.fsum(weighted) / math.log(n_labels)
    return min(1.0, max(0.0, score))


MEASURES: dict[str, Callable] = {
    "ce": eval_ce,
    "rnia": eval_rnia,
    "entropy": eval_entropy,
    "f1p": eval_f1p,
    "f1r": eval_f1r,
    "e4sc": eval_e4sc,
}

PER_CLUSTER_MEASURES = ("f1p", "f1r", "e4sc")


def eval_per_cluster(measure: str, found: Clustering, ref: Clustering,
                     data: Optional[Dataset] = None) -> list[tuple[int, float]]:
    """Best-match score per found cluster (F1P, E4SC) or per reference cluster (F1R)."""
    measure = measure.lower()
    check_compatible(found, ref, data)
    _require_reference(ref, measure.upper())
    if measure == "f1p":
        scores = _best_object_f1(found, ref)
    elif measure == "f1r":
        scores = _best_object_f1(ref, found)
    elif measure == "e4sc":
        scores = _best_micro_f1(found, ref, _overlap_matrix(found, ref))
    else:
        raise ValueError(f"no per-cluster variant for measure {measure!r}")
    return list(enumerate(scores))


@dataclass
class EvaluationReport:
    entries: list[tuple[str, float]] = field(default_factory=list)
    per_cluster: list[tuple[str, int, float]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def lines(self, per_cluster: bool = False) -> list[str]:
        out = [f"{name}={score:.6f}" for name, score in self.entries]
        if per_cluster:
            out.extend(f"{name}[{idx}]={score:.6f}" for name, idx, score in self.per_cluster)
        return out

    def csv_header(self) -> str:
        return ",".join(name for name, _ in self.entries)

    def csv_row(self) -> str:
        return ",".join(f"{score:.6f}" for _, score in self.entries)


def evaluate(measures, found: Clustering, ref: Clustering, data: Optional[Dataset] = None,
             per_cluster: bool = False) -> EvaluationReport:
    """Run measures in the given order; repeated names are evaluated again."""
    report = EvaluationReport()
    for name in measures:
        key = name.lower()
        if key not in MEASURES:
            raise KeyError(name)
        if key == "entropy":
            score = eval_entropy(found, ref, data, report.warnings)
        else:
            score = MEASURES[key](found, ref, data)
        report.entries.append((key, score))
        if per_cluster and key in PER_CLUSTER_MEASURES:
            for idx, s in eval_per_cluster(key, found, ref, data):
                report.per_cluster.append((key, idx, s))
    return report
