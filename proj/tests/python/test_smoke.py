import math

import numpy as np
import pytest

import regionalize as rg


def test_table3_combinations():
    s = np.eye(4)
    for j, v in zip((1, 2, 3), (0.1, 0.5, 0.8)):
        s[0, j] = s[j, 0] = v
    g = rg.ConstraintGraph(4, [(0, 1), (0, 3)])
    w = rg.combine_weighted(s, g.adjacency_matrix(), 0.95)
    assert np.allclose(w[0, 1:], [0.955, 0.025, 0.990], atol=1e-12)
    h = rg.combine_hadamard(s, g.binarized_kernel(1))
    assert list(h[0, 1:]) == [0.1, 0.0, 0.8]


def test_graph_kernels():
    g = rg.ConstraintGraph(3, [(0, 1), (1, 2)])
    assert g.diameter() == 2
    assert np.array_equal(g.binarized_kernel(2), np.ones((3, 3)))
    e = rg.ConstraintGraph(2, [(0, 1)]).exponential_kernel()
    assert math.isclose(e[0, 1], math.sinh(1.0), abs_tol=1e-11)


def test_pipeline_recovers_planted_halves():
    data, truth = rg.generate_synthetic(rows=10, cols=10, blocks="1x2")
    d = data.preprocess()
    labels = rg.delineate(d, method="bssc", k=2, delta=1)
    assert rg.adjusted_rand(labels, truth) == 1.0
    levels, splits = rg.hssc(d, k_max=3)
    assert len(levels) == 3 and len(splits) == 2
    report = rg.evaluate(d, labels)
    assert report["contiguity_c"] >= 0.99
    assert report["cbalance"] == pytest.approx(1.0)


def test_agglomerative_and_metrics():
    data, truth = rg.generate_synthetic(rows=5, cols=5, blocks="1x2", noise_sigma=0.2, seed=3)
    d = data.preprocess()
    levels, merges = rg.agglomerative(d, linkage="ward")
    assert len(merges) == 24
    assert len(set(levels[1])) == 2
    assert rg.pct_ml(d.graph, [0] * 25) == 1.0
    assert rg.cbalance([0, 0, 1, 1]) == pytest.approx(1.0)


def test_spectral_primitives():
    x = np.array([[0.0], [1.0], [2.0]])
    s = rg.rbf_similarity(x, 1.0)
    assert s[0, 1] == pytest.approx(math.exp(-0.5))
    values, vectors = rg.generalized_eigs(s, 2)
    assert values[0] == pytest.approx(0.0, abs=1e-10)
    labels, centroids, inertia = rg.kmeans(np.array([[0.0], [0.1], [5.0], [5.1]]), 2)
    assert labels == [0, 0, 1, 1]


def test_errors_map_to_python_exceptions():
    with pytest.raises(rg.DataError):
        rg.ConstraintGraph(2, [(0, 0)])
    data, _ = rg.generate_synthetic(rows=4, cols=4)
    with pytest.raises(rg.InvalidArgument):
        rg.delineate(data.preprocess(), method="scm", delta=1.5)
    assert issubclass(rg.DataError, rg.Error)
