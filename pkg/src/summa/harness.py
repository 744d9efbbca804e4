"""Verification experiments with JSON-serialisable reports.

Each ``run_*`` function returns an :class:`ExperimentReport`; a report
passes exactly when every metric with a tolerance satisfies it.  All
randomness is drawn from ``numpy.random.default_rng(seed)``.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import norms, special
from . import theta as theta_mod
from .errors import SpecError, SummaError
from .kernels import (KernelSpec, dirichlet_kernel, grid_axis, kernel_l1_norm,
                      lattice_sum, summability_kernel, theta_kernel_periodized, triangular_d2_closed_form)
from .maximal import IndexSet, length_ladder, maximal_function, maximal_mean, weak_type_ratio
from .spectral import (GridFunction, Spectrum, analyze, conjugate_transform, grid_points,
                       random_trig_polynomial, summability_mean, synthesize)
from .testfuncs import test_function
from .theta import ThetaFunction

INF = math.inf


@dataclass
class Metric:
    name: str
    value: float
    tolerance: Optional[float] = None
    relation: str = "<="

    @property
    def ok(self) -> bool:
        if self.tolerance is None:
            return True
        if not math.isfinite(self.value):
            return False
        if self.relation == "<=":
            return self.value <= self.tolerance
        if self.relation == ">=":
            return self.value >= self.tolerance
        raise SpecError(f"unknown relation {self.relation!r}")


def _clean(v):
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


@dataclass
class ExperimentReport:
    suite_id: str
    parameters: dict
    metrics: list
    runtime_seconds: float = 0.0
    diagnostics: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(m.ok for m in self.metrics)

    def metric(self, name: str) -> Metric:
        for m in self.metrics:
            if m.name == name:
                return m
        raise KeyError(name)

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "suite_id": self.suite_id,
            "parameters": _clean(self.parameters),
            "pass": self.passed,
            "metrics": [
                {"name": m.name, "value": _clean(m.value), "tolerance": _clean(m.tolerance), "relation": m.relation}
                for m in self.metrics],
            "runtime_seconds": round(self.runtime_seconds, 6) if include_timing else None,
        }
        if self.diagnostics:
            out["diagnostics"] = _clean(self.diagnostics)
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, allow_nan=False) + "\n"

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        bits = ", ".join(f"{m.name}={m.value:.4g}" for m in self.metrics[:4] if isinstance(m.value, (int, float)))
        return f"{status} {self.suite_id}: {bits}"


def _timed(suite_id: str, parameters: dict, body: Callable[[list, dict], None]) -> ExperimentReport:
    metrics: list = []
    diag: dict = {}
    start = time.perf_counter()
    err = None
    try:
        body(metrics, diag)
    except SummaError as exc:
        err = f"{type(exc).__name__}: {exc}"
    return ExperimentReport(suite_id, parameters, metrics, time.perf_counter() - start, diag, err)


# ------------------------------------------------------------------ identities

DEFAULT_IDENTITY_CONFIG = [(d, q, n, 4096) for d in (1, 2) for q in (1, INF) for n in (2, 4, 8, 16)]


def _off_collision_points(G: int, d: int, count: int, rng) -> np.ndarray:
    x = grid_axis(G)
    pts = []
    while len(pts) < count:
        cand = x[rng.integers(0, G, size=(4 * count, d))]
        c = np.cos(cand)
        ok = np.ones(len(cand), dtype=bool)
        for i, j in itertools.combinations(range(d), 2):
            ok &= np.abs(c[:, i] - c[:, j]) >= 1e-6
        pts.extend(cand[ok][: count - len(pts)])
    return np.array(pts)


def run_identity_suite(config: Optional[Sequence[tuple]] = None, points: int = 1000, seed: int = 0,
                       closed_form: Optional[Callable] = None, tol: float = 1e-8) -> ExperimentReport:
    """Closed forms against lattice sums at random off-collision grid points.

    ``config`` lists (d, q, n, G) tuples.  ``closed_form(spec, pts)``
    replaces the library closed form (used to check that corruption is
    caught).
    """
    config = DEFAULT_IDENTITY_CONFIG if config is None else list(config)
    params = {"config": [list(c) for c in config], "points": points, "seed": seed, "tolerance": tol}

    def body(metrics, diag):
        rng = np.random.default_rng(seed)
        worst = 0.0
        for d, q, n, G in config:
            spec = KernelSpec(int(d), "dirichlet", int(n), q=q)
            pts = _off_collision_points(int(G), int(d), points, rng)
            ref = lattice_sum(spec, pts)
            cf = closed_form(spec, pts) if closed_form is not None else dirichlet_kernel(spec, pts)
            rel = np.abs(cf - ref) / np.maximum(np.abs(ref), 1.0)
            i = int(np.argmax(rel))
            name = f"relerr[d={d},q={'inf' if q == INF else int(q)},n={n}]"
            metrics.append(Metric(name, float(rel[i]), tol))
            if rel[i] > tol:
                diag.setdefault("failures", []).append(
                    {"d": d, "q": q, "n": n, "G": G, "point": pts[i].tolist(),
                     "closed_form": float(cf[i]), "lattice_sum": float(ref[i])})
            if d == 2 and q == 1:
                alt = triangular_d2_closed_form(pts, int(n))
                metrics.append(Metric(f"explicit_vs_generic[n={n}]",
                                      float(np.max(np.abs(alt - ref) / np.maximum(np.abs(ref), 1.0))), tol))
            worst = max(worst, float(rel[i]))
        diag["metric_count"] = len(metrics)
    return _timed("identity", params, body)


# ------------------------------------------------------------------ L1 bounds

DEFAULT_SWEEP = [
    {"d": 1, "q": INF, "method": "dirichlet", "ladder": [2**k for k in range(2, 10)], "expect": "log"},
    {"d": 1, "q": INF, "method": "fejer", "ladder": [8, 16, 32, 64, 128], "expect": "constant"},
    {"d": 2, "q": 1, "method": "riesz", "alpha": 1, "gamma": 1, "ladder": [8, 16, 32, 64, 128], "expect": "bounded"},
    {"d": 2, "q": INF, "method": "riesz", "alpha": 1, "gamma": 1, "ladder": [8, 16, 32, 64, 128], "expect": "bounded"},
    {"d": 2, "q": 2, "method": "riesz", "alpha": 1, "gamma": 2, "ladder": [8, 16, 32, 64, 128], "expect": "bounded"},
]


def _entry_label(e: dict) -> str:
    q = e.get("q", INF)
    qs = "inf" if q == INF else str(int(q))
    s = f"{e['method']}[d={e['d']},q={qs}"
    if e["method"] in ("riesz", "cesaro"):
        s += f",a={e.get('alpha', 1):g}"
    if e["method"] == "riesz":
        s += f",g={e.get('gamma', 1):g}"
    return s + "]"


def run_bound_sweep(config: Optional[Sequence[dict]] = None, oversample: int = 8) -> ExperimentReport:
    """Kernel L1 norms along n-ladders: bounded, constant or log-affine growth."""
    config = DEFAULT_SWEEP if config is None else list(config)
    params = {"config": [dict(e) for e in config], "oversample": oversample}

    def body(metrics, diag):
        tables = {}
        for e in config:
            label = _entry_label(e)
            vals = []
            for n in e["ladder"]:
                spec = KernelSpec(e["d"], e["method"], n, q=e.get("q", INF),
                                  alpha=e.get("alpha", 0.0), gamma_exp=e.get("gamma", 1.0))
                G = 1 << int(math.ceil(math.log2(oversample * n)))
                vals.append(kernel_l1_norm(spec, G))
            tables[label] = dict(zip([str(n) for n in e["ladder"]], vals))
            expect = e.get("expect", "bounded")
            if expect == "log":
                x = np.log(np.asarray(e["ladder"], dtype=float))
                y = np.asarray(vals)
                slope, icpt = np.polyfit(x, y, 1)
                resid = y - (slope * x + icpt)
                r2 = 1.0 - float(np.sum(resid**2) / np.sum((y - y.mean()) ** 2))
                metrics.append(Metric(f"{label}.r2", r2, 0.99, ">="))
                metrics.append(Metric(f"{label}.slope", float(slope), 0.0, ">="))
            elif expect == "constant":
                metrics.append(Metric(f"{label}.max_dev_from_2pi",
                                      float(np.max(np.abs(np.asarray(vals) - 2 * math.pi))), 1e-6))
            else:
                growth = vals[-1] / vals[-2] - 1.0
                metrics.append(Metric(f"{label}.top_octave_growth", growth, 0.05))
                metrics.append(Metric(f"{label}.max", float(max(vals))))
        diag["l1_norms"] = tables
    return _timed("bound_sweep", params, body)


# ------------------------------------------------------------------ convergence

def _error_norm(diff: np.ndarray, norm_id: str) -> float:
    g = GridFunction(diff)
    if norm_id == "sup":
        return norms.lp_norm(g, INF)
    if norm_id == "L1":
        return norms.lp_norm(g, 1.0)
    if norm_id == "L2":
        return norms.lp_norm(g, 2.0)
    raise SpecError(f"unknown norm id {norm_id!r}")


def run_convergence_experiment(f_spec: str, spec: KernelSpec, norm_id: str = "sup",
                               n_ladder: Sequence[int] = (8, 16, 32, 64), G: int = 256,
                               tol: float = 1e-2, expect: str = "converge") -> ExperimentReport:
    """Error curve ||sigma_n f - f|| along n_ladder.

    ``expect="converge"`` passes when the last three errors do not increase
    and the final error is at most ``tol``; ``expect="diverge"`` passes
    when the final error stays at least ``tol``.
    """
    params = {"f": f_spec, "method": spec.label(), "norm": norm_id, "n_ladder": list(n_ladder), "G": G,
              "tolerance": tol, "expect": expect}

    def body(metrics, diag):
        f = test_function(f_spec, spec.d)
        c = f.spectrum(G)
        exact = f.grid_values(G)
        errs = []
        for n in n_ladder:
            s = KernelSpec(spec.d, spec.method, n if spec.region == "ellq" else (n,) * spec.d,
                           spec.region, spec.q, spec.alpha, spec.gamma_exp, spec.theta)
            approx = summability_mean(c, s).samples
            errs.append(_error_norm(approx - exact, norm_id))
        diag["errors"] = dict(zip([str(n) for n in n_ladder], errs))
        tail = errs[-3:]
        increases = sum(1 for a, b in zip(tail, tail[1:]) if b > a * (1 + 1e-12))
        if expect == "converge":
            metrics.append(Metric("final_error", errs[-1], tol))
            metrics.append(Metric("late_increases", float(increases), 0.0))
        elif expect == "diverge":
            metrics.append(Metric("final_error", errs[-1], tol, ">="))
        else:
            raise SpecError(f"unknown expectation {expect!r}")
        if f_spec == "jump" and spec.d == 1:
            metrics.append(Metric("overshoot", float(np.max(approx.real)) - 1.0))
    return _timed("convergence", params, body)


# ------------------------------------------------------------------ Lebesgue points

def run_lebesgue_experiment(f_spec: str, theta: ThetaFunction, cone: IndexSet, G: int,
                            tol: float = 0.01, sample: int = 100, seed: int = 0,
                            min_distance: float = math.pi / 4) -> ExperimentReport:
    """theta-means at continuity points and (1-D) jump points.

    Uses the members of ``cone`` whose first index is largest.  In 1-D
    the jump points of the test function are checked against the
    midpoint of the one-sided limits; continuity points are grid points
    at distance >= ``min_distance`` from every singular point.
    """
    members = cone.enumerate()
    top = max(n[0] for n in members)
    params = {"f": f_spec, "theta": theta.label, "cone": _cone_params(cone), "G": G, "tolerance": tol,
              "sample": sample, "seed": seed}

    def body(metrics, diag):
        d = cone.d
        f = test_function(f_spec, d)
        c = f.spectrum(G)
        pts = grid_points(G, d).reshape(-1, d)
        exact = f.values(pts)
        far = f.distance_to_singular(pts) >= min_distance
        idx = np.flatnonzero(far)
        rng = np.random.default_rng(seed)
        if sample and sample < len(idx):
            idx = np.sort(rng.choice(idx, size=sample, replace=False))
        worst = 0.0
        jump_err = 0.0
        used = [n for n in members if n[0] == top]
        for n in used:
            spec = KernelSpec(d, "theta", n, region="rectangular", theta=theta)
            vals = summability_mean(c, spec).samples.real.reshape(-1)
            err = np.abs(vals[idx] - exact[idx])
            if err.size and float(np.max(err)) > worst:
                worst = float(np.max(err))
                diag["worst_point"] = pts[idx[int(np.argmax(err))]].tolist()
                diag["worst_index"] = list(n)
            if d == 1 and f.singular_1d and f.midpoint_1d is not None:
                for s in f.singular_1d:
                    j = int(np.argmin(np.abs(np.angle(np.exp(1j * (pts[:, 0] - s))))))
                    jump_err = max(jump_err, abs(vals[j] - float(f.midpoint_1d(np.array([s]))[0])))
        diag["members_used"] = [list(n) for n in used]
        metrics.append(Metric("continuity_max_error", worst, tol))
        if d == 1 and f.singular_1d and f.midpoint_1d is not None:
            metrics.append(Metric("jump_midpoint_error", jump_err, tol))
    return _timed("lebesgue", params, body)


def _cone_params(cone: IndexSet) -> dict:
    out = {"kind": cone.kind, "N": list(cone.N), "tau": cone.tau}
    if cone.values is not None:
        out["values"] = list(cone.values)
    if cone.kind == "explicit":
        out["members"] = [list(m) for m in cone.members]
    return out


# ------------------------------------------------------------------ domination

def kernel_herz_sup(theta: ThetaFunction, members: Sequence[tuple], shell_samples: int = 64) -> tuple[float, dict]:
    """sup over members of ||K_n^theta||_{E_inf} with shell-refined sampling."""
    table = {}
    for n in members:
        spec = KernelSpec(len(n), "theta", tuple(n), region="rectangular", theta=theta)
        fn = _kernel_callable(spec)
        table["x".join(map(str, n))] = norms.herz_norm(fn, INF, d=len(n), shell_samples=shell_samples)
    return max(table.values()), table


def _kernel_callable(spec: KernelSpec) -> Callable:
    if spec.method == "theta" and spec.theta.catalog_id == "fejer":
        fejer = KernelSpec(spec.d, "fejer", spec.n, region="rectangular")
        return lambda p: summability_kernel(fejer, p)
    return lambda p: summability_kernel(spec, p)


def default_batch(G: int, d: int = 2, count: int = 5, seed: int = 0) -> list:
    """Seeded real trig polynomials of degree 8; the same functions on every grid."""
    return [synthesize(random_trig_polynomial(G, d, 8, seed + i)).real() for i in range(count)]


def run_domination_experiment(theta: Optional[ThetaFunction] = None, tau: float = 2.0,
                              grids: Sequence[int] = (64, 128, 256), ladder: Sequence[int] = (2, 4, 8, 16),
                              batch: Optional[Callable[[int], list]] = None, safety: float = 4.0,
                              stability: float = 0.10) -> ExperimentReport:
    """sigma_box f / M_box f against sup_n ||K_n||_{E_inf} on a cone, for several grids."""
    theta = theta_mod.fejer() if theta is None else theta
    cone = IndexSet("cone", (max(ladder),) * 2, tau=tau, values=tuple(ladder))
    params = {"theta": theta.label, "tau": tau, "grids": list(grids), "ladder": list(ladder), "safety": safety}

    def body(metrics, diag):
        members = cone.enumerate()
        supk, table = kernel_herz_sup(theta, members)
        diag["kernel_E_inf"] = table
        metrics.append(Metric("sup_kernel_E_inf", supk))
        template = KernelSpec(2, "theta", members[0], region="rectangular", theta=theta)
        per_grid = []
        for G in grids:
            fs = batch(G) if batch is not None else default_batch(G)
            worst = 0.0
            for i, f in enumerate(fs):
                sig = maximal_mean(analyze(f), template, cone).samples
                mf = maximal_function(f, "cone", tau).samples
                ratio = float(np.max(sig / mf))
                if ratio > worst:
                    worst = ratio
                    diag[f"worst_f[G={G}]"] = i
            per_grid.append(worst)
            metrics.append(Metric(f"ratio[G={G}]", worst, safety * supk))
        spread = (max(per_grid) - min(per_grid)) / min(per_grid)
        metrics.append(Metric("ratio_spread_across_G", spread, stability))
    return _timed("domination", params, body)


# ------------------------------------------------------------------ rotation

def run_rotation_check(n_max: int = 16, trials: int = 20, n: int = 8, seed: int = 0,
                       points: int = 64) -> ExperimentReport:
    """l1 partial sums of f against l_inf partial sums of g(u, v) = f(u - v, u + v)."""
    params = {"n_max": n_max, "trials": trials, "n": n, "seed": seed, "points": points}

    def body(metrics, diag):
        bad = 0
        counts = {}
        for m in range(1, n_max + 1):
            ks = [(k, l) for k in range(-m, m + 1) for l in range(-m, m + 1) if abs(k) + abs(l) <= m]
            imgs = {(k + l, l - k) for k, l in ks}
            counts[str(m)] = len(ks)
            bad += sum(1 for a, b in imgs if max(abs(a), abs(b)) > m)
            bad += len(ks) - len(imgs)
            # the image is exactly the parity-matched part of the l_inf ball
            target = {(a, b) for a in range(-m, m + 1) for b in range(-m, m + 1) if (a + b) % 2 == 0}
            bad += len(imgs ^ target)
        diag["l1_ball_sizes"] = counts
        metrics.append(Metric("support_map_violations", float(bad), 0.0))
        rng = np.random.default_rng(seed)
        deg = n + 3
        factors = []
        for _ in range(trials):
            ks = np.array([(k, l) for k in range(-deg, deg + 1) for l in range(-deg, deg + 1)])
            coef = rng.standard_normal(len(ks)) + 1j * rng.standard_normal(len(ks))
            xy = rng.uniform(-math.pi, math.pi, size=(points, 2))
            in1 = np.abs(ks).sum(axis=1) <= n
            s1 = np.exp(1j * xy @ ks[in1].T) @ coef[in1]
            gk = np.stack([ks[:, 0] + ks[:, 1], ks[:, 1] - ks[:, 0]], axis=1)
            uv = np.stack([(xy[:, 0] + xy[:, 1]) / 2, (xy[:, 1] - xy[:, 0]) / 2], axis=1)
            inf_ = np.max(np.abs(gk), axis=1) <= n
            sinf = np.exp(1j * uv @ gk[inf_].T) @ coef[inf_]
            factors.append(float(np.real(np.vdot(sinf, s1) / np.vdot(sinf, sinf))))
        f = np.asarray(factors)
        metrics.append(Metric("factor_mean", float(f.mean())))
        metrics.append(Metric("factor_variance", float(f.var()), 1e-10))
    return _timed("rotation", params, body)


# ------------------------------------------------------------------ smaller suites

def run_bessel_suite() -> ExperimentReport:
    """Derivative identity, Sonine integral and the scaled-sup constants."""
    def body(metrics, diag):
        h = 1e-5
        worst = 0.0
        for k in (0.0, 0.5, 1.0, 1.5):
            for t in (0.5, 1.0, 5.0, 20.0):
                fd = (special.bessel_j(k, t + h) - special.bessel_j(k, t - h)) / (2 * h)
                rhs = k / t * special.bessel_j(k, t) - special.bessel_j(k + 1, t)
                worst = max(worst, abs(fd - rhs))
        metrics.append(Metric("derivative_identity_residual", worst, 1e-6))
        worst = 0.0
        for k in (0, 1):
            for l in (0, 1):
                for t in (1.0, 5.0):
                    worst = max(worst, abs(special.sonine_integral(k, l, t) - special.bessel_j(k + l + 1, t)))
        metrics.append(Metric("sonine_residual", worst, 1e-7))
        for k in (0.0, 0.5, 1.0, 2.0):
            metrics.append(Metric(f"C_k[k={k:g}]", special.bessel_bound_constant(k, samples=1000), 1e6))
    return _timed("bessel", {}, body)


def run_radial_suite(rs: Sequence[float] = (0.5, 1.0, 2.0, 5.0), alpha: float = 1.0, d: int = 2) -> ExperimentReport:
    params = {"r": list(rs), "alpha": alpha, "d": d}

    def body(metrics, diag):
        prof = special.bochner_riesz_profile(alpha)
        worst = 0.0
        for r in rs:
            worst = max(worst, abs(special.radial_fourier_transform(prof, r, d) - special.bochner_riesz_ft(alpha, d, r)))
        metrics.append(Metric("closed_form_vs_quadrature", worst, 1e-6))
    return _timed("radial", params, body)


def run_periodization_suite(n: int = 8, G: int = 256) -> ExperimentReport:
    params = {"theta": "fejer", "n": n, "G": G}

    def body(metrics, diag):
        x = grid_axis(G)
        lat = lattice_sum(KernelSpec(1, "fejer", n), x)
        per, tail = theta_kernel_periodized(theta_mod.fejer(), n, x)
        metrics.append(Metric("max_diff", float(np.max(np.abs(per - lat))), 1e-6))
        metrics.append(Metric("tail_estimate", tail))
    return _timed("periodization", params, body)


def run_cesaro_suite(G: int = 64, trials: int = 10, seed: int = 0) -> ExperimentReport:
    params = {"G": G, "trials": trials, "seed": seed}

    def body(metrics, diag):
        worst = 0.0
        for i in range(trials):
            c = random_trig_polynomial(G, 2, G // 2 - 1, seed + i, real=False)
            for spec_args in ((2, 1), (2, INF)):
                d, q = spec_args
                for n in (5, 17):
                    a = summability_mean(c, KernelSpec(d, "cesaro", n, q=q, alpha=1.0)).samples
                    b = summability_mean(c, KernelSpec(d, "fejer", n, q=q)).samples
                    worst = max(worst, float(np.max(np.abs(a - b))))
        metrics.append(Metric("cesaro1_vs_fejer", worst, 1e-12))
    return _timed("cesaro", params, body)


def maximal_bruteforce(f: np.ndarray, lengths: Sequence[int]) -> np.ndarray:
    """Strong maximal function by explicit enumeration of rectangles (d = 2)."""
    a = np.abs(f)
    G = a.shape[0]
    out = np.zeros_like(a)
    for L1 in lengths:
        for L2 in lengths:
            r1 = [np.arange(s, s + L1) % G for s in range(G)]
            r2 = [np.arange(s, s + L2) % G for s in range(G)]
            for s1 in range(G):
                rows = a[r1[s1]]
                for s2 in range(G):
                    block = np.ix_(r1[s1], r2[s2])
                    avg = rows[:, r2[s2]].sum() / (L1 * L2)
                    np.maximum.at(out, block, avg)
    return out


def run_maximal_oracle_suite(G: int = 32, seed: int = 0) -> ExperimentReport:
    params = {"G": G, "seed": seed}

    def body(metrics, diag):
        rng = np.random.default_rng(seed)
        f = rng.standard_normal((G, G))
        ladder = length_ladder(G)
        fast = maximal_function(GridFunction(f), "strong").samples
        slow = maximal_bruteforce(f, ladder)
        metrics.append(Metric("prefix_vs_bruteforce", float(np.max(np.abs(fast - slow))), 1e-12))
    return _timed("maximal_oracle", params, body)


def weak_battery(G: int, d: int = 2, seed: int = 0) -> list:
    """Ten test functions for the weak (1,1) check."""
    rng = np.random.default_rng(seed)
    shape = (G,) * d
    out = []
    delta = np.zeros(shape)
    delta[(G // 3,) * d] = 1.0
    out.append(delta)
    two = np.zeros(shape)
    two[(1,) * d] = 1.0
    two[(G // 2,) * d] = 3.0
    out.append(two)
    out.append(np.ones(shape))
    x = grid_points(G, d)
    out.append(np.where(np.max(np.abs(x), axis=-1) < 0.5, 1.0, 0.0))
    r = np.sqrt(np.sum(x * x, axis=-1))
    out.append(np.divide(1.0, r ** 1.5, out=np.zeros_like(r), where=r > 0))
    out.append(np.abs(rng.standard_normal(shape)))
    out.append(rng.exponential(size=shape) ** 3)
    sparse = np.zeros(shape).ravel()
    sparse[rng.choice(sparse.size, size=10, replace=False)] = rng.uniform(1, 10, size=10)
    out.append(sparse.reshape(shape))
    out.append(test_function("jump", d).grid_values(G))
    out.append(np.abs(np.cos(3 * x[..., 0])) * np.exp(-np.sum(x * x, axis=-1)))
    return [GridFunction(v) for v in out]


def run_weak11_suite(G: int = 64, d: int = 2, seed: int = 0) -> ExperimentReport:
    params = {"G": G, "d": d, "seed": seed, "variant": "cube"}

    def body(metrics, diag):
        vals = [weak_type_ratio(f, "cube") for f in weak_battery(G, d, seed)]
        diag["ratios"] = vals
        metrics.append(Metric("max_weak_ratio", max(vals), 2.0 ** (d + 1)))
    return _timed("weak11", params, body)


def run_herz_suite(G: int = 64, trials: int = 100, seed: int = 0) -> ExperimentReport:
    params = {"G": G, "trials": trials, "seed": seed}

    def body(metrics, diag):
        rng = np.random.default_rng(seed)
        e1 = 0.0
        ratios = []
        for i in range(trials):
            f = GridFunction(rng.standard_normal((G, G)) * rng.uniform(0, 2, (G, G)) ** (1 + i % 4))
            e1 = max(e1, abs(norms.herz_norm(f, 1.0) - norms.lp_norm(f, 1.0)))
            ratios.append(norms.dp_norm(f, 2.0) / norms.dp_norm(f, 2.0, "shell"))
        lo, hi = norms.dp_equivalence_bounds(2, 2.0)
        metrics.append(Metric("E1_minus_L1", e1, 1e-10))
        # the upper bound is attained by functions concentrated off the inner cube
        metrics.append(Metric("dp_ratio_min", min(ratios), lo * (1 - 1e-12), ">="))
        metrics.append(Metric("dp_ratio_max", max(ratios), hi * (1 + 1e-12)))
    return _timed("herz", params, body)


def run_conjugate_suite(G: int = 64, seed: int = 0) -> ExperimentReport:
    params = {"G": G, "seed": seed}

    def body(metrics, diag):
        x = grid_axis(G)
        h = synthesize(conjugate_transform(analyze(GridFunction(np.cos(x))), ("product", (1,)))).samples
        metrics.append(Metric("hilbert_cos_minus_sin", float(np.max(np.abs(h - np.sin(x)))), 1e-12))
        worst = 0.0
        for d in (1, 2):
            c = random_trig_polynomial(G, d, 10, seed + d)
            f = synthesize(c).samples
            j = (1,) * d
            twice = synthesize(conjugate_transform(conjugate_transform(c, ("product", j)), ("product", j))).samples
            # (-i sign k)^2 = -1 off the coordinate hyperplanes; in 1-D that is -(f - mean)
            if d == 1:
                expect = -(f - c[(0,)])
            else:
                k = c.frequencies()
                mask = np.all(k != 0, axis=-1)
                expect = synthesize(Spectrum(np.where(mask, c.coefficients, 0.0))).samples
            worst = max(worst, float(np.max(np.abs(twice - expect))))
        metrics.append(Metric("double_hilbert_residual", worst, 1e-12))
    return _timed("conjugate", params, body)


def run_jump_suite() -> ExperimentReport:
    return run_lebesgue_experiment("jump", theta_mod.fejer(), IndexSet("explicit", members=((512,),)),
                                   G=2048, tol=0.01, sample=0)


def run_restricted_suite() -> ExperimentReport:
    cone = IndexSet("cone", (256, 256), tau=2.0, values=(128, 181, 256))
    return run_lebesgue_experiment("bump", theta_mod.fejer(), cone, G=512, tol=0.01, sample=100)


SUITES: dict[str, Callable[[], ExperimentReport]] = {
    "identity": run_identity_suite,
    "bound_sweep": run_bound_sweep,
    "bessel": run_bessel_suite,
    "radial": run_radial_suite,
    "periodization": run_periodization_suite,
    "cesaro": run_cesaro_suite,
    "jump": run_jump_suite,
    "restricted": run_restricted_suite,
    "maximal_oracle": run_maximal_oracle_suite,
    "weak11": run_weak11_suite,
    "domination": run_domination_experiment,
    "herz": run_herz_suite,
    "rotation": run_rotation_check,
    "conjugate": run_conjugate_suite,
}


def run_suite(name: str) -> ExperimentReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise SpecError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn()
