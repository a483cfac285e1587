"""Maximum-weight one-to-one matching on a rectangular weight matrix.

Thin wrapper over scipy's linear_sum_assignment (an O(m^3) shortest
augmenting path solver). The total is summed from the caller's own values,
so integer weights give an exact integer result.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment


def max_weight_matching(weights: Sequence[Sequence]) -> tuple[int | float, list[tuple[int, int]]]:
    """Return (total weight, matched (row, col) pairs) of a maximum-weight matching.

    Pairs of weight zero are left out.
    """
    rows = len(weights)
    cols = len(weights[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0, []
    if any(len(r) != cols for r in weights):
        raise ValueError("weight matrix rows differ in length")
    r_idx, c_idx = linear_sum_assignment(np.asarray(weights, dtype=np.float64), maximize=True)
    pairs = [(int(i), int(j)) for i, j in zip(r_idx, c_idx) if weights[i][j]]
    total = sum(weights[i][j] for i, j in pairs)
    return total, pairs
