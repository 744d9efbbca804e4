import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from summa import theta as T
from summa.errors import CollisionError, DomainError, ResolutionError, SpecError, TruncationError
from summa.kernels import (KernelSpec, cesaro_coefficient, dirichlet_kernel, divided_difference, grid_axis,
                           kernel_l1_norm, lattice_sum, multiplier, second_difference_sum, summability_kernel,
                           theta_kernel_periodized, triangular_d2_closed_form, trig_identity_sides)
from summa.theta import ThetaFunction

INF = math.inf


@pytest.mark.parametrize("d,q,n,x,expected", [
    (1, INF, 5, (0.0,), 11),
    (2, INF, 1, (0.0, 0.0), 9),
    (2, 1, 4, (0.0, 0.0), 41),
    (2, 2, 1, (0.0, 0.0), 5),
])
def test_dirichlet_at_origin(d, q, n, x, expected):
    spec = KernelSpec(d, "dirichlet", n, q=q)
    assert lattice_sum(spec, np.array(x)) == pytest.approx(expected, abs=1e-12)
    if q != 2:
        assert dirichlet_kernel(spec, np.array(x)) == pytest.approx(expected, abs=1e-9)


def test_circular_closed_form_unavailable():
    with pytest.raises(SpecError):
        dirichlet_kernel(KernelSpec(2, "dirichlet", 3, q=2), np.zeros(2))


def _random_points(rng, d, count=200):
    pts = rng.uniform(-math.pi, math.pi, size=(count, d))
    c = np.cos(pts)
    ok = np.ones(count, dtype=bool)
    for i, j in itertools.combinations(range(d), 2):
        ok &= np.abs(c[:, i] - c[:, j]) > 1e-3
    return pts[ok]


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("q", [1, INF])
@pytest.mark.parametrize("n", [1, 3, 8, 16])
def test_closed_form_vs_lattice(d, q, n):
    rng = np.random.default_rng(10 * d + n)
    pts = _random_points(rng, d)
    spec = KernelSpec(d, "dirichlet", n, q=q)
    ref = lattice_sum(spec, pts)
    cf = dirichlet_kernel(spec, pts)
    assert np.max(np.abs(cf - ref) / np.maximum(np.abs(ref), 1.0)) <= 1e-8


def test_imaginary_part_vanishes():
    spec = KernelSpec(2, "dirichlet", 5, q=2)
    pts = _random_points(np.random.default_rng(1), 2)
    _, imag = lattice_sum(spec, pts, return_imag=True)
    assert np.max(np.abs(imag)) <= 1e-10


def test_collision_fallback_matches_lattice():
    spec = KernelSpec(3, "dirichlet", 6, q=1)
    pts = np.array([[0.7, 0.7 + 1e-9, -1.1], [0.3, -0.3, 2.0], [0.0, 0.0, 0.0]])
    assert np.allclose(dirichlet_kernel(spec, pts), lattice_sum(spec, pts), atol=1e-9)


def test_triangular_symmetry():
    spec = KernelSpec(2, "dirichlet", 7, q=1)
    pts = _random_points(np.random.default_rng(2), 2, 50)
    base = lattice_sum(spec, pts)
    for perm in ([1, 0],):
        assert np.max(np.abs(lattice_sum(spec, pts[:, perm]) - base)) <= 1e-10
    for signs in ([-1, 1], [1, -1], [-1, -1]):
        assert np.max(np.abs(lattice_sum(spec, pts * signs) - base)) <= 1e-10


def test_explicit_d2_form_matches_generic():
    pts = _random_points(np.random.default_rng(3), 2)
    for n in (2, 5, 11):
        spec = KernelSpec(2, "dirichlet", n, q=1)
        assert np.allclose(triangular_d2_closed_form(pts, n), dirichlet_kernel(spec, pts), atol=1e-9)


def test_divided_difference_examples():
    assert divided_difference([2.0], math.sin) == math.sin(2.0)
    assert divided_difference([0.0, 1.0], lambda x: x * x) == pytest.approx(1.0)
    cubic = lambda x: 3 * x**3 - x + 2
    for method in ("explicit", "recursive"):
        assert divided_difference([0, 0.5, 1, 2], cubic, method) == pytest.approx(3.0, rel=1e-9)
    with pytest.raises(CollisionError):
        divided_difference([0.0, 1e-12], math.sin)


@settings(max_examples=40)
@given(st.lists(st.floats(-3, 3), min_size=2, max_size=6, unique=True))
def test_divided_difference_methods_agree(nodes):
    nodes = sorted(nodes)
    if min(np.diff(nodes)) < 1e-2:
        return
    a = divided_difference(nodes, np.cos, "explicit")
    b = divided_difference(nodes, np.cos, "recursive")
    assert a == pytest.approx(b, rel=1e-9, abs=1e-9)


def test_trig_identities():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(0, 30))
        x, y = rng.uniform(0, math.pi, 2)
        if abs(math.cos(x) - math.cos(y)) < 1e-3:
            continue
        a, b, c, e = trig_identity_sides(n, x, y)
        assert a == pytest.approx(b, abs=1e-9)
        assert c == pytest.approx(e, abs=1e-9)


def test_fejer_at_origin_and_riesz_equals_fejer():
    assert summability_kernel(KernelSpec(1, "fejer", 5), np.array([0.0])) == pytest.approx(5.0)
    x = grid_axis(256)
    a = summability_kernel(KernelSpec(1, "riesz", 8, alpha=1, gamma_exp=1), x)
    b = summability_kernel(KernelSpec(1, "fejer", 8), x)
    assert np.max(np.abs(a - b)) == 0.0


def test_fejer_closed_form_uses_half_angle_sine():
    x = grid_axis(256)
    n = 7
    with np.errstate(divide="ignore", invalid="ignore"):
        formula = np.where(x == 0, n, (np.sin(n * x / 2) / np.sin(x / 2)) ** 2 / n)
    assert np.allclose(summability_kernel(KernelSpec(1, "fejer", n), x), formula, atol=1e-12)


def test_weierstrass_kernel_is_poisson():
    n = 6
    spec = KernelSpec(1, "theta", (n,), region="rectangular", theta=T.weierstrass(1.0))
    x = grid_axis(256)
    r = math.exp(-1.0 / n)
    poisson = (1 - r * r) / (1 - 2 * r * np.cos(x) + r * r)
    assert np.max(np.abs(summability_kernel(spec, x) - poisson)) <= 1e-8


def test_cesaro_coefficients():
    assert cesaro_coefficient(3, 1.0) == pytest.approx(4.0)
    assert cesaro_coefficient(2, 0.5) == pytest.approx(15 / 8)
    resid = cesaro_coefficient(5, 0.7) - cesaro_coefficient(4, 0.7) - cesaro_coefficient(5, -0.3)
    assert abs(resid) <= 1e-12
    with pytest.raises(DomainError):
        cesaro_coefficient(3, -2.0)


def test_spec_validation():
    with pytest.raises(SpecError):
        KernelSpec(2, "riesz", 4, q=2, alpha=1, gamma_exp=1.5)
    with pytest.raises(SpecError):
        KernelSpec(2, "riesz", 4, q=3)
    with pytest.raises(SpecError):
        KernelSpec(2, "dirichlet", 0)
    with pytest.raises(SpecError):
        KernelSpec(2, "dirichlet", (3, 4, 5), region="rectangular")


def test_fejer_multiplier_range():
    for q in (1, 2, INF):
        spec = KernelSpec(2, "fejer", 9, q=q)
        k = np.stack(np.meshgrid(np.arange(-12, 13), np.arange(-12, 13), indexing="ij"), axis=-1)
        m = multiplier(spec, k)
        assert m.min() >= 0 and m.max() <= 1
        assert multiplier(spec, np.zeros((1, 2), dtype=int))[0] == 1


def test_periodized_fejer_and_gaussian():
    x = grid_axis(256)
    lat = lattice_sum(KernelSpec(1, "fejer", 8), x)
    per, tail = theta_kernel_periodized(T.fejer(), 8, x)
    assert np.max(np.abs(per - lat)) <= 1e-6
    g = T.gaussian()
    spec = KernelSpec(1, "theta", (4,), region="rectangular", theta=g)
    per, _ = theta_kernel_periodized(g, 4, x, truncation_radius=50)
    assert np.max(np.abs(per - summability_kernel(spec, x))) <= 1e-8


def test_periodized_zero_transform():
    zero = ThetaFunction(lambda s: np.zeros_like(s), "custom", (), "tensor", 2.0, 1.0,
                         lambda s: np.zeros_like(s), lambda x: np.zeros(np.shape(x)[:-1]))
    per, tail = theta_kernel_periodized(zero, 4, grid_axis(16), truncation_radius=10)
    assert np.all(per == 0)


def test_periodized_tail_guard():
    slow = T.picard_bessel(0.6, 1.0)
    slow = ThetaFunction(slow.profile, "custom", (), "tensor", 1.0, math.inf, slow.envelope,
                         lambda x: 1.0 / (1.0 + np.abs(x[..., 0])) ** 1.01)
    with pytest.raises(TruncationError):
        theta_kernel_periodized(slow, 4, grid_axis(16), truncation_radius=2)


def test_l1_norms():
    assert kernel_l1_norm(KernelSpec(1, "fejer", 16), 1024) == pytest.approx(2 * math.pi, abs=1e-6)
    with pytest.raises(ResolutionError):
        kernel_l1_norm(KernelSpec(1, "fejer", 16), 64)
    vals = [kernel_l1_norm(KernelSpec(1, "dirichlet", n), 8 * n) for n in (4, 8, 16, 32, 64, 128, 256, 512)]
    x = np.log([4, 8, 16, 32, 64, 128, 256, 512])
    r = np.corrcoef(x, vals)[0, 1]
    assert r * r >= 0.99


def test_riesz_l1_bounded_q1():
    vals = [kernel_l1_norm(KernelSpec(2, "fejer", n, q=1), 8 * n) for n in (8, 16, 32, 64)]
    assert vals[-1] / vals[-2] - 1 <= 0.05


def test_pointwise_bound_constant_finite():
    worst = 0.0
    for n in (4, 8, 16, 32, 64):
        spec = KernelSpec(2, "riesz", n, q=1, alpha=1, gamma_exp=1)
        pts = _random_points(np.random.default_rng(n), 2, 100)
        worst = max(worst, float(np.max(np.abs(lattice_sum(spec, pts))) / n**2))
    assert worst < 10


def test_second_difference_sums_finite():
    for name in ("fejer", "de-la-vallee-poussin", "jackson-dlvp", "riesz"):
        th = T.from_catalog(name)
        vals = [second_difference_sum(th, n) for n in (16, 64, 256, 512)]
        assert max(vals) < 10
