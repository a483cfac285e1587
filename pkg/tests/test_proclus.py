import numpy as np
import pytest

from subspace_kit.algorithms.params import ProclusParams
from subspace_kit.algorithms.proclus import (greedy_candidates, proclus, run_proclus, segmental_distances,
                                             select_dimensions)
from subspace_kit.errors import InsufficientData, InvalidParams
from subspace_kit.formats import read_arff
from subspace_kit.generator import GeneratorSpec, generate
from subspace_kit.model import Dataset

from _helpers import IRIS_ARFF


def gen(seed, **kw):
    spec = dict(n_clustered=270, n_noise=30, d=8, k=3, dims_min=3, dims_max=3, seed=seed)
    spec.update(kw)
    return generate(GeneratorSpec(**spec))


def test_greedy_candidates_farthest_first():
    rows = np.array([[0.0], [1.0], [10.0], [4.0], [5.0]])
    # lowest id first, then 10.0, then 5.0 (distance 5 to both chosen)
    assert greedy_candidates(rows, [4, 2, 0, 3, 1], 3) == [0, 2, 4]


def test_select_dimensions_slots_and_minimum():
    rng = np.random.default_rng(0)
    spread = rng.random((3, 6))
    dims = select_dimensions(spread, 3)
    assert sum(len(ds) for ds in dims) == 9
    assert all(len(ds) >= 2 for ds in dims)
    for i, ds in enumerate(dims):
        z = (spread[i] - spread[i].mean()) / spread[i].std(ddof=1)
        assert set(np.argsort(z)[:2]) <= set(ds)


def test_select_dimensions_prefers_low_spread():
    spread = np.array([[0.01, 0.02, 0.5, 0.5, 0.6], [0.5, 0.5, 0.5, 0.01, 0.01]])
    assert select_dimensions(spread, 2) == [(0, 1), (3, 4)]


def test_segmental_distance_by_hand():
    rows = np.array([[0.0, 0.0, 0.0], [1.0, 2.0, 3.0]])
    med = np.array([[0.0, 0.0, 0.0]])
    assert segmental_distances(rows, med, [(0, 2)])[:, 0].tolist() == [0.0, 2.0]


def test_k1_l_equals_d_keeps_everything():
    data, _ = gen(0, k=1, n_clustered=60, n_noise=0, d=4, dims_min=2, dims_max=2)
    out = run_proclus(data, ProclusParams(k=1, l=4, seed=3))
    assert len(out) == 1
    assert out[0].objects == frozenset(range(data.n)) and out[0].dims == {0, 1, 2, 3}


@pytest.mark.parametrize("seed", range(4))
def test_invariants(seed):
    data, _ = gen(seed)
    p = ProclusParams(k=3, l=3, seed=seed)
    res = proclus(data, p)
    assert sum(len(ds) for ds in res.dims) == 9
    assert all(len(ds) >= 2 for ds in res.dims)
    assert res.best_objective == min(res.history)
    assert all(res.best_objective <= a for a in res.accepted)
    assert res.accepted == sorted(res.accepted, reverse=True)
    assert set(res.medoids) <= set(res.candidates) and len(set(res.medoids)) == 3
    assert set(np.unique(res.labels)) <= {-1, 0, 1, 2}
    out = run_proclus(data, p)
    assert len(out) <= 3
    objs = [c.objects for c in out]
    assert sum(map(len, objs)) == len(frozenset().union(*objs))


def test_deterministic_under_seed():
    data, _ = gen(5)
    a = run_proclus(data, ProclusParams(k=3, l=3, seed=11))
    b = run_proclus(data, ProclusParams(k=3, l=3, seed=11))
    assert a == b


def test_iris_three_clusters():
    iris = read_arff(IRIS_ARFF)
    out = run_proclus(iris, ProclusParams(k=3, l=3, seed=0))
    assert 1 <= len(out) <= 3
    assert sum(len(c.dims) for c in out) <= 9


def test_errors():
    data = Dataset.from_rows([[0.0, 1.0], [1.0, 0.0]], ["a", "b"])
    with pytest.raises(InsufficientData):
        run_proclus(data, ProclusParams(k=3, l=2))
    with pytest.raises(InvalidParams):
        run_proclus(data, ProclusParams(k=1, l=3))
    with pytest.raises(InvalidParams):
        ProclusParams(l=1)
