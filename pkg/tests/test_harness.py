import json
import math

import numpy as np
import pytest

from summa import harness
from summa import theta as T
from summa.kernels import KernelSpec, dirichlet_kernel
from summa.maximal import IndexSet
from summa.spectral import GridFunction

INF = math.inf


def test_identity_default_passes():
    rep = harness.run_identity_suite(points=200)
    assert rep.passed
    assert all(m.value <= 1e-8 for m in rep.metrics)


def test_identity_detects_corruption():
    def corrupt(spec, pts):
        out = dirichlet_kernel(spec, pts)
        out[7] += 0.5
        return out
    rep = harness.run_identity_suite([(2, 1, 8, 256)], points=50, closed_form=corrupt)
    assert not rep.passed
    failure = rep.diagnostics["failures"][0]
    assert failure["n"] == 8 and len(failure["point"]) == 2


def test_identity_empty_config():
    rep = harness.run_identity_suite([])
    assert rep.passed and rep.diagnostics["metric_count"] == 0


def test_report_json_shape_and_determinism():
    a = harness.run_identity_suite([(1, INF, 4, 64)], points=20).to_json(include_timing=False)
    b = harness.run_identity_suite([(1, INF, 4, 64)], points=20).to_json(include_timing=False)
    assert a == b
    doc = json.loads(a)
    assert set(doc) >= {"suite_id", "parameters", "pass", "metrics", "runtime_seconds"}
    assert set(doc["metrics"][0]) == {"name", "value", "tolerance", "relation"}


def test_metric_nan_never_passes():
    assert not harness.Metric("x", math.nan, 1.0).ok
    doc = harness.ExperimentReport("s", {}, [harness.Metric("x", math.inf)]).to_json()
    assert '"inf"' in doc


def test_bound_sweep_examples():
    rep = harness.run_bound_sweep([
        {"d": 1, "q": INF, "method": "fejer", "ladder": [8, 16, 32], "expect": "constant"},
        {"d": 2, "q": INF, "method": "fejer", "ladder": [8, 16, 32, 64, 128], "expect": "bounded"},
        {"d": 1, "q": INF, "method": "dirichlet", "ladder": [2**k for k in range(2, 10)], "expect": "log"},
    ])
    assert rep.passed, rep.to_json()
    assert rep.metric("dirichlet[d=1,q=inf].slope").value > 0


def test_convergence_trig_fejer_rate():
    rep = harness.run_convergence_experiment("trig", KernelSpec(1, "fejer", 8), "sup", (8, 16, 24), 64, tol=0.2)
    # ||sigma_n f - f||_inf = sum_{k != 0} |c_k| |k| / n = 3.25 / n
    for n, err in rep.diagnostics["errors"].items():
        assert err == pytest.approx(3.25 / int(n), rel=1e-12)
    assert rep.passed


def test_convergence_bump_bochner_riesz_l2():
    spec = KernelSpec(2, "riesz", 8, q=2, alpha=1, gamma_exp=2)
    rep = harness.run_convergence_experiment("bump", spec, "L2", (16, 32, 64, 127), 256, tol=1e-3)
    assert rep.passed


def test_convergence_jump_dirichlet_does_not_converge():
    rep = harness.run_convergence_experiment("jump", KernelSpec(1, "dirichlet", 8), "sup", (16, 32, 64, 128), 512,
                                             tol=0.05, expect="diverge")
    assert rep.passed
    assert rep.metric("overshoot").value > 0.08


def test_convergence_unknown_function():
    rep = harness.run_convergence_experiment("nope", KernelSpec(1, "fejer", 8))
    assert not rep.passed and "unknown test function" in rep.error


def test_lebesgue_examples():
    jump = harness.run_jump_suite()
    assert jump.passed
    const = harness.run_lebesgue_experiment("constant", T.fejer(), IndexSet("cone", (16, 16), tau=2.0), 64)
    assert const.metric("continuity_max_error").value <= 1e-14


def test_domination_constant_ratio_is_one():
    rep = harness.run_domination_experiment(grids=(32,), ladder=(2, 4),
                                            batch=lambda G: [GridFunction(np.ones((G, G)))])
    assert rep.metric("ratio[G=32]").value == pytest.approx(1.0, abs=1e-12)


@pytest.mark.slow
def test_domination_weierstrass():
    rep = harness.run_domination_experiment(T.weierstrass(1.0), grids=(64, 128), ladder=(2, 4, 8))
    assert rep.passed


def test_rotation_structure():
    rep = harness.run_rotation_check(n_max=4, trials=5)
    assert rep.diagnostics["l1_ball_sizes"]["4"] == 41
    assert rep.metric("support_map_violations").value == 0
    assert rep.metric("factor_variance").value <= 1e-10


def test_rotation_single_mode():
    # f = e^{ix}: g(u, v) = f(u - v, u + v) = e^{i(u - v)}, coefficient at (1, -1)
    u, v = np.random.default_rng(0).uniform(-math.pi, math.pi, (2, 10))
    f_val = np.exp(1j * (u - v))
    g_val = np.exp(1j * (1 * u + -1 * v))
    assert np.allclose(f_val, g_val)


def test_registry_complete():
    assert set(harness.SUITES) == {"identity", "bound_sweep", "bessel", "radial", "periodization", "cesaro", "jump",
                                   "restricted", "maximal_oracle", "weak11", "domination", "herz", "rotation",
                                   "conjugate"}
    with pytest.raises(Exception):
        harness.run_suite("missing")
