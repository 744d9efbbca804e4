import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from summa import norms
from summa import theta as T
from summa.errors import DomainError, ResolutionError, TruncationError
from summa.spectral import GridFunction, grid_points


def _random(seed, shape=(64, 64)):
    rng = np.random.default_rng(seed)
    return GridFunction(rng.standard_normal(shape) * rng.uniform(0, 2, shape) ** 2)


def test_indicator_strong_equals_weak():
    f = np.zeros((32, 32))
    f[3:9, 10:20] = 1.0
    g = GridFunction(f)
    m = 60 * g.cell_measure
    for p in (0.5, 1.0, 2.0, 3.0):
        assert norms.lp_norm(g, p) == pytest.approx(m ** (1 / p), rel=1e-12)
        assert norms.lp_norm(g, p, "weak") == pytest.approx(m ** (1 / p), rel=1e-12)


def test_sup_norm_of_constant():
    assert norms.lp_norm(GridFunction(np.ones(16)), math.inf) == 1.0


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.floats(0.5, 4.0))
def test_weak_below_strong(seed, p):
    g = _random(seed, (32,))
    assert norms.lp_norm(g, p, "weak") <= norms.lp_norm(g, p) * (1 + 1e-12)


def test_weak_attained_at_sample_value():
    g = GridFunction(np.array([3.0, 1.0, 1.0, 0.5, 0.0, 0.0, 2.0, 2.0]))
    h = g.cell_measure
    candidates = [v * (np.sum(np.abs(g.samples) >= v) * h) for v in (3.0, 2.0, 1.0, 0.5)]
    assert norms.lp_norm(g, 1.0, "weak") == pytest.approx(max(candidates))
    with pytest.raises(DomainError):
        norms.lp_norm(g, 0.0)


def test_llogl():
    assert norms.llogl_norm(GridFunction(np.ones(16)), 1) == 0.0
    g = _random(1, (32,))
    assert norms.llogl_norm(g, 0) == pytest.approx(norms.lp_norm(g, 1.0))
    assert norms.llogl_norm(GridFunction(np.full(16, math.e)), 1) == pytest.approx(2 * math.pi * math.e)


def test_herz_constant_and_l1():
    assert norms.herz_norm(GridFunction(np.ones(256)), math.inf) == pytest.approx(2.0)
    for seed in range(5):
        g = _random(seed)
        assert abs(norms.herz_norm(g, 1.0) - norms.lp_norm(g, 1.0)) <= 1e-10


def test_herz_single_shell():
    G = 64
    M = np.max(np.abs(grid_points(G, 2)), axis=-1)
    # P_-2: pi/8 <= |x|_inf < pi/4
    f = np.where((M >= math.pi / 8) & (M < math.pi / 4), 3.0, 0.0)
    assert norms.herz_norm(GridFunction(f), math.inf) == pytest.approx(2.0 ** (-4) * 3.0)


def test_herz_resolution_error():
    with pytest.raises(ResolutionError):
        norms.herz_norm(GridFunction(np.ones(16)), 2.0, k_min=-5)


def test_herz_callable_constant():
    assert norms.herz_norm(lambda p: np.ones(p.shape[:-1]), math.inf, d=1) == pytest.approx(2.0, rel=1e-6)


def test_herz_monotone_chain_and_eprime():
    ratios = []
    for seed in range(20):
        g = _random(seed, (32, 32))
        e1, e2, einf = (norms.herz_norm(g, q) for q in (1.0, 2.0, math.inf))
        ratios.append((e1 / e2, e2 / einf))
        assert norms.herz_norm(g, 2.0, "Eprime") <= 10 * e2
    assert max(r[0] for r in ratios) < 10 and max(r[1] for r in ratios) < 10


def test_dp_examples():
    assert norms.dp_norm(GridFunction(np.ones(256)), 1.0) == pytest.approx(2.0)
    lo, hi = norms.dp_equivalence_bounds(2, 2.0)
    for seed in range(20):
        g = _random(seed)
        r = norms.dp_norm(g, 2.0) / norms.dp_norm(g, 2.0, "shell")
        assert lo * (1 - 1e-12) <= r <= hi * (1 + 1e-12)


def test_dp_shell_supported_function():
    G = 64
    M = np.max(np.abs(grid_points(G, 1)), axis=-1)
    f = np.where(M >= math.pi / 2, 2.0, 0.0)
    g = GridFunction(f)
    shell = norms.dp_norm(g, 1.0, "shell")
    assert shell == pytest.approx(norms.lp_norm(g, 1.0))
    assert norms.dp_norm(g, 1.0) == pytest.approx(norms.lp_norm(g, 1.0) / math.pi)


def test_wiener_norms():
    fejer = norms.wiener_amalgam_norm(T.fejer(), 4)
    assert fejer.value == pytest.approx(2.0)
    w = norms.wiener_amalgam_norm(T.weierstrass(1.0), 60)
    # cells [k, k+1]: sup e^{-k} for k >= 0, and e^{-(|k|-1)} for k < 0
    exact = sum(math.exp(-k) for k in range(61)) + sum(math.exp(-(k - 1)) for k in range(1, 61))
    assert w.value == pytest.approx(exact, rel=1e-12)
    assert w.value == pytest.approx(2 / (1 - math.exp(-1)), rel=1e-9)
    for name in ("fejer", "riesz", "de-la-vallee-poussin", "picard-bessel"):
        try:
            rep = norms.wiener_amalgam_norm(T.from_catalog(name), 40)
        except TruncationError:
            continue
        assert rep.value >= 1.0
    with pytest.raises(TruncationError):
        norms.wiener_amalgam_norm(T.picard_bessel(1.0, 2.0), 3)


def test_majorant():
    G = 64
    x = grid_points(G, 1)[..., 0]
    f = GridFunction(np.exp(-np.abs(x)))
    assert norms.nonincreasing_majorant_l1(f) == pytest.approx(norms.lp_norm(f, 1.0))
    assert norms.nonincreasing_majorant_l1(GridFunction(np.zeros(G))) == 0.0
    osc = GridFunction(np.abs(np.cos(5 * x)) / (1 + x * x))
    ratio = norms.nonincreasing_majorant_l1(osc) / norms.herz_norm(osc, math.inf)
    assert 0.1 < ratio < 10
