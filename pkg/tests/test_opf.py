import numpy as np
import pytest

from hyperfs import opf
from hyperfs.opf import DegenerateTrainingSet

from oracles import fmax_costs, mst_boundary, nearest_label


def test_two_samples_both_prototypes():
    assert opf.find_prototypes([[0.0], [1.0]], [1, 2]).tolist() == [0, 1]


def test_separated_clusters_boundary_prototypes(four_points):
    X, y = four_points
    assert opf.find_prototypes(X, y).tolist() == [1, 2]


def test_identical_features_prototypes():
    # node 0 is the centre of the zero-weight star, so every node whose class
    # differs from node 0's is a prototype, and so is node 0
    X = np.zeros((4, 2))
    assert opf.find_prototypes(X, [1, 2, 2, 2]).tolist() == [0, 1, 2, 3]
    assert opf.find_prototypes(X, [1, 1, 2, 2]).tolist() == [0, 2, 3]


def test_single_class_rejected():
    with pytest.raises(DegenerateTrainingSet):
        opf.find_prototypes([[0.0], [1.0]], [1, 1])
    with pytest.raises(DegenerateTrainingSet):
        opf.train([[0.0], [1.0]], [2, 2])


def test_four_point_costs(four_points):
    X, y = four_points
    model = opf.train(X, y)
    np.testing.assert_array_equal(model.costs, [1.0, 0.0, 0.0, 1.0])
    assert model.labels.tolist() == [1, 1, 2, 2]
    assert model.predecessor.tolist() == [1, -1, -1, 2]


def test_four_point_query(four_points):
    X, y = four_points
    model = opf.train(X, y)
    assert opf.classify(model, [[5.4]]).tolist() == [1]
    assert opf.classify(model, [[5.6]]).tolist() == [2]
    assert opf.classify(model, X).tolist() == y.tolist()


def test_duplicate_of_prototype_costs_zero():
    X = np.array([[0.0], [1.0], [1.0], [10.0], [11.0]])
    model = opf.train(X, [1, 1, 1, 2, 2])
    assert model.costs[1] == 0.0 and model.costs[2] == 0.0


def test_all_prototypes_is_1nn():
    rng = np.random.default_rng(0)
    X = rng.random((20, 3))
    y = rng.integers(1, 4, 20)
    model = opf.train(X, y, prototypes=np.arange(20))
    assert np.all(model.costs == 0.0)
    Q = rng.random((200, 3))
    assert opf.classify(model, Q).tolist() == [nearest_label(X, y, q) for q in Q]


def test_sample_equal_to_prototype_gets_its_label(four_points):
    X, y = four_points
    model = opf.train(X, y)
    for p in model.prototypes:
        assert opf.classify(model, X[p:p + 1])[0] == y[p]


def test_model_invariants():
    rng = np.random.default_rng(1)
    X = rng.random((40, 4))
    y = rng.integers(1, 3, 40)
    model = opf.train(X, y)
    c = model.sq_costs
    assert np.all(c[model.prototypes] == 0.0)
    assert np.all(model.predecessor[model.prototypes] == -1)
    assert np.all(np.diff(c[model.ordered_nodes]) >= 0)
    assert np.all(np.isfinite(c))
    for s in range(40):
        p = model.predecessor[s]
        if p >= 0:
            w = float(((X[s] - X[p]) ** 2).sum())
            assert c[s] == max(c[p], w)
            assert model.labels[s] == model.labels[p]


def test_costs_match_exhaustive_oracle():
    rng = np.random.default_rng(2)
    for _ in range(20):
        n = int(rng.integers(2, 8))
        X = rng.random((n, 2))
        y = np.r_[1, 2, rng.integers(1, 3, n - 2)]
        model = opf.train(X, y)
        assert set(model.prototypes.tolist()) == mst_boundary(X, y)
        np.testing.assert_allclose(model.costs, fmax_costs(X, model.prototypes), rtol=1e-12, atol=0)


def test_order_invariance():
    rng = np.random.default_rng(3)
    X = rng.random((30, 3))
    y = rng.integers(1, 3, 30)
    Q = rng.random((100, 3))
    perm = rng.permutation(30)
    a = opf.classify(opf.train(X, y), Q)
    b = opf.classify(opf.train(X[perm], y[perm]), Q)
    assert np.array_equal(a, b)


def test_unselected_feature_is_ignored():
    rng = np.random.default_rng(4)
    X = rng.random((25, 4))
    y = rng.integers(1, 3, 25)
    Q = rng.random((40, 4))
    mask = np.array([True, False, True, True])
    base = opf.classify(opf.train(X, y, mask), Q)
    X2, Q2 = X.copy(), Q.copy()
    X2[:, 1] += 7.5
    Q2[:, 1] -= 3.0
    model = opf.train(X2, y, mask)
    assert np.array_equal(opf.classify(model, Q2), base)
    assert opf.classify(model, Q2[:, mask], mask=np.ones(3, bool)).tolist() == base.tolist()


def test_feature_count_mismatch():
    model = opf.train([[0.0, 1.0], [1.0, 0.0]], [1, 2])
    with pytest.raises(ValueError):
        opf.classify(model, [[0.0, 1.0, 2.0]])


def test_balanced_accuracy_examples():
    y = np.array([1, 1, 2, 2])
    assert opf.balanced_accuracy(y, y) == 1.0
    assert opf.balanced_accuracy(y, [2, 2, 1, 1]) == 0.0
    assert opf.balanced_accuracy(y, [1, 1, 2, 1]) == 0.75
    # balanced sets: equals plain accuracy
    rng = np.random.default_rng(5)
    y = np.repeat([1, 2], 50)
    pred = rng.integers(1, 3, 100)
    assert opf.balanced_accuracy(y, pred) == pytest.approx(opf.plain_accuracy(y, pred), abs=1e-12)


def test_balanced_accuracy_weights_minority_class():
    y = np.array([1] * 9 + [2])
    pred = np.ones(10, dtype=int)
    assert opf.plain_accuracy(y, pred) == 0.9
    assert opf.balanced_accuracy(y, pred) == 0.5


def test_accuracy_empty_set():
    model = opf.train([[0.0], [1.0]], [1, 2])
    with pytest.raises(ValueError):
        opf.accuracy(model, np.zeros((0, 1)), [])
    with pytest.raises(ValueError):
        opf.balanced_accuracy([], [])


def test_accuracy_on_four_points(four_points):
    X, y = four_points
    model = opf.train(X, y)
    assert opf.accuracy(model, X, y) == 1.0
    assert opf.accuracy(model, X, y, balanced=False) == 1.0
