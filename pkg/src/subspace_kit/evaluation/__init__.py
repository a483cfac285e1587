from .hungarian import max_weight_matching
from .measures import (MEASURES, PER_CLUSTER_MEASURES, EvaluationReport, eval_ce, eval_e4sc,
                       eval_entropy, eval_f1p, eval_f1r, eval_per_cluster, eval_rnia, evaluate)

__all__ = [
    "max_weight_matching", "MEASURES", "PER_CLUSTER_MEASURES", "EvaluationReport", "evaluate",
    "eval_ce", "eval_rnia", "eval_entropy", "eval_f1p", "eval_f1r", "eval_e4sc", "eval_per_cluster",
]
