"""Smoke tests for the Python extension module."""

import os
import sys

import numpy as np
import pytest

MODULE_DIR = os.environ.get("ICNOPT_MODULE_DIR")
if MODULE_DIR:
    sys.path.insert(0, MODULE_DIR)

icn = pytest.importorskip("_icnopt")


def test_lhs_stratification():
    n, d = 32, 5
    pts = icn.lhs(n, d, seed=7)
    assert pts.shape == (n, d)
    for j in range(d):
        strata = np.floor(pts[:, j] * n).astype(int)
        assert sorted(strata) == list(range(n))


def test_lhs_deterministic():
    a = icn.lhs(16, 3, seed=5)
    b = icn.lhs(16, 3, seed=5)
    c = icn.lhs(16, 3, seed=6)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_benchmark_values():
    assert icn.evaluate("Ellipsoid", np.array([0.5, 0.5, 0.5])) == pytest.approx(1.5)
    assert icn.evaluate("Rastrigin", np.array([0.5, 0.5])) == pytest.approx(40.5)
    assert icn.evaluate("Rosenbrock", np.ones(4)) == pytest.approx(0.0)
    batch = icn.evaluate("Ellipsoid", np.array([[0.0, 0.0], [0.5, 0.5]]))
    assert batch == pytest.approx([0.0, 0.75])
    assert set(icn.problem_names()) == {
        "Ellipsoid", "Rosenbrock", "Ackley", "Griewank", "Rastrigin",
    }
    with pytest.raises(ValueError):
        icn.evaluate("Ellipsoid", np.array([1.5, 0.0]))


def test_icn_train_predict_roundtrip():
    rng = np.random.default_rng(3)
    x = rng.random((30, 3))
    y = (x ** 2).sum(axis=1)
    cfg = icn.IcnConfig(channels=6, n_layers=2, image_side=6, iterations=40, seed=9)
    model, curve = icn.train_icn(x, y, cfg)
    assert len(curve) == 40
    assert curve[-1] < curve[0]

    pred = model.predict(x)
    assert len(pred) == 30

    again, curve2 = icn.train_icn(x, y, cfg)
    assert curve == curve2
    assert model.predict(x) == again.predict(x)

    back = icn.IcnModel.from_json(model.to_json())
    assert back.predict(x) == pred


def test_knowledge_terms_exact():
    terms = icn.strong_rosenbrock_terms(4)
    assert len(terms) == 3
    assert terms[0][0] == [-1.0, 1.0, 0.0, 0.0]

    rng = np.random.default_rng(5)
    x = rng.random((20, 4))
    y = ((x[:, 1:] - x[:, :-1]) ** 2).sum(axis=1)
    cfg = icn.IcnConfig(channels=4, n_layers=2, image_side=5, iterations=400,
                        learn_rate=0.003, target_standardize=False, seed=2)
    model, curve = icn.train_icn(x, y, cfg, knowledge=terms)
    assert curve[-1] < 1e-3
    coeffs = model.term_coefficients()
    assert len(coeffs) == 3
    assert all(abs(c - 1.0) < 0.05 for c in coeffs)


def test_rbfn_and_ensemble():
    rng = np.random.default_rng(11)
    x = rng.random((40, 2))
    y = ((x - 0.3) ** 2).sum(axis=1)
    model = icn.train_rbfn(x, y, seed=4)
    assert model.n_centers == int(np.ceil(np.sqrt(40)))
    pred = model.predict(x)
    assert np.isfinite(pred).all()

    ens = icn.train_rbfn_ensemble(x, y, members=5, seed=4)
    assert ens.size == 5
    agg = np.asarray(ens.predict(x))
    assert np.isfinite(agg).all()


def test_wilcoxon_exact_case():
    res = icn.wilcoxon_signed_rank(
        np.array([1.0, 2.0, 3.0, 4.0, 5.0]), np.zeros(5))
    assert res["exact"]
    assert res["w_plus"] == pytest.approx(15.0)
    assert res["p_value"] == pytest.approx(2.0 / 32.0)

    same = icn.wilcoxon_signed_rank(np.ones(6), np.ones(6))
    assert same["degenerate"]


def test_run_offline_purity_and_determinism():
    kwargs = dict(
        problem="Ellipsoid", dim=2, algorithm="icn", seed=3,
        icn=icn.IcnConfig(channels=6, n_layers=2, image_side=4, iterations=30),
        pop_size=22, generations=20, n_offline=22,
    )
    a = icn.run_offline(**kwargs)
    b = icn.run_offline(**kwargs)
    assert not a["failed"]
    assert a["true_evals"] == a["n_offline"] + 1
    assert a["best_genome"] == b["best_genome"]
    assert a["true_fitness"] == b["true_fitness"]
