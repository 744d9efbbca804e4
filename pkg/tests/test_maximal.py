import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from summa.errors import SpecError, TruncationError
from summa.harness import maximal_bruteforce
from summa.kernels import KernelSpec, grid_axis
from summa.maximal import (IndexSet, admissibility, length_ladder, maximal_function, maximal_mean, poisson_kernel,
                           poisson_maximal, power_gamma, weak_type_ratio)
from summa.spectral import GridFunction, random_trig_polynomial, summability_mean


def test_constant_is_fixed():
    for variant in ("cube", "cone", "strong"):
        out = maximal_function(GridFunction(np.full((16, 16), 2.5)), variant).samples
        assert np.allclose(out, 2.5, atol=1e-12)
    assert np.allclose(poisson_maximal(GridFunction(np.ones(32))).samples, 1.0, atol=1e-12)


def _brute_1d(f, lengths):
    G = len(f)
    out = np.zeros(G)
    a = np.abs(f)
    for L in lengths:
        for s in range(G):
            idx = np.arange(s, s + L) % G
            out[idx] = np.maximum(out[idx], a[idx].sum() / L)
    return out


def test_indicator_matches_brute_force():
    f = np.zeros(32)
    f[5:13] = 1.0
    for mode in ("dyadic", "all"):
        fast = maximal_function(GridFunction(f), "cube", lengths=mode).samples
        assert np.max(np.abs(fast - _brute_1d(f, length_ladder(32, mode)))) <= 1e-12


def test_strong_matches_brute_force_2d():
    f = np.random.default_rng(0).standard_normal((16, 16))
    fast = maximal_function(GridFunction(f), "strong").samples
    assert np.max(np.abs(fast - maximal_bruteforce(f, length_ladder(16)))) <= 1e-12


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_nesting_and_lower_bound(seed):
    f = GridFunction(np.random.default_rng(seed).standard_normal((16, 16)))
    cube = maximal_function(f, "cube").samples
    cone = maximal_function(f, "cone", 2.0).samples
    strong = maximal_function(f, "strong").samples
    assert np.all(strong >= cone - 1e-12) and np.all(cone >= cube - 1e-12)
    assert np.all(cube >= np.abs(f.samples))


def test_sublinearity():
    rng = np.random.default_rng(1)
    f, g = rng.standard_normal((2, 16, 16))
    lhs = maximal_function(GridFunction(f + g), "strong").samples
    rhs = maximal_function(GridFunction(f), "strong").samples + maximal_function(GridFunction(g), "strong").samples
    assert np.all(lhs <= rhs + 1e-12)


def test_index_sets():
    cone = IndexSet("cone", (8, 8), tau=1.0)
    assert all(a == b for a, b in cone.enumerate())
    wide = IndexSet("cone", (16, 16), tau=2.0, values=(2, 4, 8, 16))
    assert all(max(n) <= 2 * min(n) for n in wide.enumerate())
    like = IndexSet("conelike", (64, 64), gammas=(power_gamma(0.5),), taus=(2.0,))
    for n1, n2 in like.enumerate():
        assert math.sqrt(n1) / 2 - 1e-12 <= n2 <= 2 * math.sqrt(n1) + 1e-12
    with pytest.raises(SpecError):
        IndexSet("cone", (4, 4), tau=0.5)
    with pytest.raises(SpecError):
        IndexSet("conelike", (8, 8), gammas=(lambda x: -np.asarray(x, dtype=float),), taus=(2.0,))


def test_admissibility_of_power():
    adm = admissibility(power_gamma(1.5), xi=2.0)
    assert adm.c1 == pytest.approx(2**1.5) and adm.c2 == pytest.approx(2**1.5)
    assert adm.omega1 == pytest.approx(1.5) and adm.increasing


def test_maximal_mean_single_index_and_subset():
    c = random_trig_polynomial(32, 2, 10, seed=2)
    spec = KernelSpec(2, "fejer", (4, 6), region="rectangular")
    single = maximal_mean(c, spec, IndexSet("explicit", members=((4, 6),))).samples
    assert np.array_equal(single, np.abs(summability_mean(c, spec).samples))
    cone = maximal_mean(c, spec, IndexSet("cone", (12, 12), tau=2.0)).samples
    box = maximal_mean(c, spec, IndexSet("box", (12, 12))).samples
    assert np.all(cone <= box + 1e-15)
    with pytest.raises(SpecError):
        maximal_mean(c, spec, IndexSet("explicit", members=()))


def test_absolute_maximal_mean_dominates():
    c = random_trig_polynomial(64, 1, 10, seed=3)
    spec = KernelSpec(1, "riesz", 8, alpha=0.5, gamma_exp=1.0)
    idx = IndexSet("box", (16,), values=(4, 8, 16))
    plain = maximal_mean(c, spec, idx).samples
    absolute = maximal_mean(c, spec, idx, absolute=True).samples
    assert np.all(absolute >= plain - 1e-10)


def test_poisson_kernel_closed_form():
    t = 1.0
    r = math.exp(-t)
    assert poisson_kernel(t, np.array([0.0]))[0] == pytest.approx((1 + r) / (1 - r), abs=1e-10)
    x = grid_axis(64)
    closed = (1 - r * r) / (1 - 2 * r * np.cos(x) + r * r)
    assert np.max(np.abs(poisson_kernel(t, x) - closed)) <= 1e-10
    with pytest.raises(TruncationError):
        poisson_kernel(1e-5, x)


def test_poisson_monotone_in_t_grid():
    f = GridFunction(np.random.default_rng(4).standard_normal((32, 32)))
    small = poisson_maximal(f, [0.1, 1.0]).samples
    big = poisson_maximal(f, [0.05, 0.1, 0.5, 1.0]).samples
    assert np.all(big >= small)


def test_weak_type_delta():
    f = np.zeros((32, 32))
    f[7, 11] = 1.0
    assert weak_type_ratio(GridFunction(f)) <= 8
