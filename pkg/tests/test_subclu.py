import math
import random

import pytest

from subspace_kit.algorithms.dbscan import run_dbscan
from subspace_kit.algorithms.params import SubcluParams
from subspace_kit.algorithms.subclu import run_subclu, subclu_search
from subspace_kit.errors import InvalidParams
from subspace_kit.model import Dataset


def ds(rows):
    return Dataset.from_rows(rows, [f"x{j}" for j in range(len(rows[0]))])


@pytest.mark.parametrize("case", range(5))
def test_one_dim_equals_dbscan(case):
    rng = random.Random(case)
    rows = [[rng.random()] for _ in range(rng.randint(1, 40))]
    p = SubcluParams(eps=rng.uniform(0.01, 0.2), min_pts=rng.randint(1, 4))
    data = ds(rows)
    assert [c.objects for c in run_subclu(data, p)] == run_dbscan(data, [0], range(data.n), p.eps, p.min_pts)


def test_infinite_eps_reaches_full_space():
    data = ds([[0.1, 0.5, 0.9], [0.3, 0.2, 0.4], [0.8, 0.8, 0.1]])
    out = run_subclu(data, SubcluParams(eps=math.inf, min_pts=1))
    assert len(out) == 7
    assert all(c.objects == {0, 1, 2} for c in out)
    assert [len(c.dims) for c in out] == [1, 1, 1, 2, 2, 2, 3]


def two_blobs(seed):
    rng = random.Random(seed)
    rows = []
    for cx, cy in ((0.2, 0.2), (0.8, 0.8)):
        for _ in range(25):
            rows.append([cx + rng.uniform(-0.03, 0.03), cy + rng.uniform(-0.03, 0.03), rng.random()])
    return ds(rows)


def test_blobs_found_in_their_subspace():
    out = run_subclu(two_blobs(0), SubcluParams(eps=0.08, min_pts=4))
    in01 = sorted(sorted(c.objects) for c in out if c.dims == {0, 1})
    assert in01 == [list(range(25)), list(range(25, 50))]


def test_every_cluster_revalidates_as_dbscan_output():
    data = two_blobs(1)
    p = SubcluParams(eps=0.08, min_pts=4)
    for rec in subclu_search(data, p):
        assert rec.objects in run_dbscan(data, rec.subspace, rec.candidates, p.eps, p.min_pts)
        assert rec.objects <= rec.candidates


def test_monotonicity_every_projection_clustered():
    data = two_blobs(2)
    out = run_subclu(data, SubcluParams(eps=0.08, min_pts=4))
    subspaces = {tuple(sorted(c.dims)) for c in out}
    for s in subspaces:
        for i in range(len(s)):
            if len(s) > 1:
                assert s[:i] + s[i + 1:] in subspaces


def test_sorted_by_level_then_subspace():
    out = run_subclu(two_blobs(3), SubcluParams(eps=0.1, min_pts=3))
    keys = [(len(c.dims), tuple(sorted(c.dims))) for c in out]
    assert keys == sorted(keys)


def test_params_validated():
    with pytest.raises(InvalidParams):
        SubcluParams(eps=0)
    with pytest.raises(InvalidParams):
        SubcluParams(min_pts=0)
