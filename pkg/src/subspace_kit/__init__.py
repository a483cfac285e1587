"""Subspace clustering toolkit.

Algorithms that find clusters in axis-parallel subspace projections, a
synthetic generator with ground truth, external measures, exchange formats
and static reports.
"""

__version__ = "0.1.0"

from .model import Clustering, Dataset, SubspaceCluster, clustering_micro_union, micro_objects

__all__ = ["Clustering", "Dataset", "SubspaceCluster", "clustering_micro_union", "micro_objects",
           "__version__"]
