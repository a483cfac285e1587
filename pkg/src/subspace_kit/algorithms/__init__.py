"""Subspace clustering algorithms: Dataset in, Clustering out."""

from __future__ import annotations

import dataclasses
from typing import Callable

from ..model import Clustering, Dataset
from .clique import run_clique
from .dbscan import run_dbscan
from .doc import run_doc, run_fastdoc
from .mineclus import run_mineclus
from .params import (CliqueParams, DocParams, FastDocParams, MineclusParams, ProclusParams,
                     SubcluParams, coerce_params)
from .proclus import run_proclus
from .subclu import run_subclu

# name -> (parameter record, runner)
REGISTRY: dict[str, tuple[type, Callable[[Dataset, object], Clustering]]] = {
    "clique": (CliqueParams, run_clique),
    "subclu": (SubcluParams, run_subclu),
    "proclus": (ProclusParams, run_proclus),
    "doc": (DocParams, run_doc),
    "fastdoc": (FastDocParams, run_fastdoc),
    "mineclus": (MineclusParams, run_mineclus),
}


def algorithm_names() -> list[str]:
    return sorted(REGISTRY)


def takes_seed(name: str) -> bool:
    return any(f.name == "seed" for f in dataclasses.fields(REGISTRY[name][0]))


__all__ = [
    "REGISTRY", "algorithm_names", "takes_seed", "coerce_params",
    "CliqueParams", "SubcluParams", "ProclusParams", "DocParams", "FastDocParams", "MineclusParams",
    "run_clique", "run_dbscan", "run_subclu", "run_proclus", "run_doc", "run_fastdoc", "run_mineclus",
]
