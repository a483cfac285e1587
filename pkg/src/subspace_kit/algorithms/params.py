"""Parameter records for the clustering algorithms.

Every bound is checked at construction and raises InvalidParams. Fixed
constants of the algorithms (sample factors, patience, trial caps) are
ordinary fields with defaults so they can be overridden per run.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

from ..errors import InvalidParams

DEFAULT_SEED = 0


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_real(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParams(msg)


def _check_seed(seed) -> None:
    _require(_is_int(seed) and 0 <= seed < 2**64, f"seed must be a 64-bit unsigned integer, got {seed!r}")


@dataclass(frozen=True)
class CliqueParams:
    xi: int = 10
    tau: float = 0.1

    def __post_init__(self):
        _require(_is_int(self.xi) and self.xi >= 2, f"xi must be an integer >= 2, got {self.xi!r}")
        _require(_is_real(self.tau) and 0 < self.tau <= 1, f"tau must lie in (0, 1], got {self.tau!r}")


@dataclass(frozen=True)
class SubcluParams:
    eps: float = 0.1
    min_pts: int = 5

    def __post_init__(self):
        # eps may be +inf: everything is then density-connected
        _require(isinstance(self.eps, (int, float)) and not isinstance(self.eps, bool)
                 and self.eps > 0 and not math.isnan(self.eps), f"eps must be > 0, got {self.eps!r}")
        _require(_is_int(self.min_pts) and self.min_pts >= 1, f"min_pts must be an integer >= 1, got {self.min_pts!r}")


@dataclass(frozen=True)
class ProclusParams:
    k: int = 3
    l: int = 2
    seed: int = DEFAULT_SEED
    sample_factor: int = 30      # A: sample size A*k
    candidate_factor: int = 3    # B: B*k greedy medoid candidates
    patience: Optional[int] = None  # non-improving iterations; None -> max(20, 5k)
    max_iterations: int = 10_000

    def __post_init__(self):
        _require(_is_int(self.k) and self.k >= 1, f"k must be an integer >= 1, got {self.k!r}")
        _require(_is_int(self.l) and self.l >= 2, f"l must be an integer >= 2, got {self.l!r}")
        _check_seed(self.seed)
        _require(_is_int(self.sample_factor) and self.sample_factor >= 1, "sample_factor must be >= 1")
        _require(_is_int(self.candidate_factor) and self.candidate_factor >= 1, "candidate_factor must be >= 1")
        _require(self.patience is None or (_is_int(self.patience) and self.patience >= 1),
                 "patience must be a positive integer")
        _require(_is_int(self.max_iterations) and self.max_iterations >= 1, "max_iterations must be >= 1")

    @property
    def effective_patience(self) -> int:
        return self.patience if self.patience is not None else max(20, 5 * self.k)


@dataclass(frozen=True)
class DocParams:
    alpha: float = 0.1
    beta: float = 0.25
    w: float = 0.05
    max_clusters: int = 10
    seed: int = DEFAULT_SEED
    # optional ceiling on inner trials per seed point; None keeps the formula value
    max_inner_trials: Optional[int] = None

    def __post_init__(self):
        _require(_is_real(self.alpha) and 0 < self.alpha <= 1, f"alpha must lie in (0, 1], got {self.alpha!r}")
        _require(_is_real(self.beta) and 0 < self.beta <= 0.5, f"beta must lie in (0, 0.5], got {self.beta!r}")
        _require(_is_real(self.w) and self.w > 0, f"w must be > 0, got {self.w!r}")
        _require(_is_int(self.max_clusters) and self.max_clusters >= 1,
                 f"max_clusters must be an integer >= 1, got {self.max_clusters!r}")
        _check_seed(self.seed)
        _require(self.max_inner_trials is None or (_is_int(self.max_inner_trials) and self.max_inner_trials >= 1),
                 "max_inner_trials must be a positive integer")


@dataclass(frozen=True)
class FastDocParams(DocParams):
    d0: int = 1

    def __post_init__(self):
        super().__post_init__()
        _require(_is_int(self.d0) and self.d0 >= 1, f"d0 must be an integer >= 1, got {self.d0!r}")


@dataclass(frozen=True)
class MineclusParams:
    alpha: float = 0.1
    beta: float = 0.25
    w: float = 0.05
    max_clusters: int = 10
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        _require(_is_real(self.alpha) and 0 < self.alpha <= 1, f"alpha must lie in (0, 1], got {self.alpha!r}")
        _require(_is_real(self.beta) and 0 < self.beta <= 0.5, f"beta must lie in (0, 0.5], got {self.beta!r}")
        _require(_is_real(self.w) and self.w > 0, f"w must be > 0, got {self.w!r}")
        _require(_is_int(self.max_clusters) and self.max_clusters >= 1,
                 f"max_clusters must be an integer >= 1, got {self.max_clusters!r}")
        _check_seed(self.seed)


def field_types(cls) -> dict[str, type]:
    """Scalar type to coerce each field's textual value to (CLI / config use)."""
    out = {}
    for f in dataclasses.fields(cls):
        t = f.type if isinstance(f.type, str) else getattr(f.type, "__name__", str(f.type))
        out[f.name] = int if "int" in t else float
    return out


def coerce_params(cls, raw: dict):
    """Build ``cls`` from string or JSON values, rejecting unknown names."""
    types = field_types(cls)
    kwargs = {}
    for name, value in raw.items():
        if name not in types:
            raise InvalidParams(f"unknown parameter {name!r}; expected one of {sorted(types)}")
        if isinstance(value, str):
            try:
                if types[name] is int:
                    value = int(value)
                else:
                    value = float(value)
            except ValueError:
                raise InvalidParams(f"parameter {name}={value!r} is not a valid {types[name].__name__}") from None
        elif types[name] is float and _is_int(value):
            value = float(value)
        kwargs[name] = value
    return cls(**kwargs)
