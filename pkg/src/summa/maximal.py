"""Discrete maximal operators on the torus grid.

Rectangle averages come from periodic prefix sums; the supremum over
rectangles containing a point is a sliding maximum over start positions.
Only grid-aligned rectangles whose side lengths lie on a length ladder are
used, so every value is a lower bound for the continuum operator.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, SpecError, TruncationError
from .kernels import KernelSpec, kernel_on_grid
from .spectral import GridFunction, Spectrum, analyze, apply_multiplier, synthesize

Array = np.ndarray

POISSON_T_MIN = 1e-4
POISSON_T_MAX = 10.0
POISSON_TAIL_TOL = 1e-10


def default_t_grid(count: int = 32, lo: float = 1e-3, hi: float = 4.0) -> Array:
    return np.geomspace(lo, hi, count)


def length_ladder(G: int, mode: str = "dyadic") -> list[int]:
    """Admissible side lengths in grid cells.

    ``"dyadic"`` gives {2^j} together with {2^j + 1} (odd lengths allow
    rectangles centred on a grid point) up to the full period G;
    ``"all"`` gives every length 1..G.
    """
    if mode == "all":
        return list(range(1, G + 1))
    if mode != "dyadic":
        raise SpecError(f"unknown length ladder {mode!r}")
    out = set()
    p = 1
    while p <= G:
        out.add(p)
        if p + 1 <= G:
            out.add(p + 1)
        p *= 2
    return sorted(out)


def power_gamma(p: float) -> Callable[[float], float]:
    """gamma(x) = x^p, the default cone-like boundary function."""
    def g(x):
        return np.asarray(x, dtype=float) ** p
    g.exponent = p
    return g


@dataclass(frozen=True)
class Admissibility:
    c1: float
    c2: float
    omega1: float
    omega2: float
    increasing: bool


def admissibility(gamma: Callable, xi: float = 2.0, sample: Optional[Sequence[float]] = None) -> Admissibility:
    """Constants c1 <= gamma(xi x)/gamma(x) <= c2 on a sample, and omega = log_xi c."""
    if xi <= 1:
        raise DomainError("xi must exceed 1")
    x = np.geomspace(1.0, 1e6, 400) if sample is None else np.asarray(sample, dtype=float)
    gx = np.asarray(gamma(x), dtype=float)
    ratio = np.asarray(gamma(xi * x), dtype=float) / gx
    c1, c2 = float(np.min(ratio)), float(np.max(ratio))
    inc = bool(np.all(np.diff(gx[np.argsort(x)]) > 0))
    return Admissibility(c1, c2, math.log(c1) / math.log(xi), math.log(c2) / math.log(xi), inc)


@dataclass(frozen=True)
class IndexSet:
    """A finite family of mean indices n.

    kind is ``"box"`` (n <= N), ``"cone"`` (1/tau <= n_i/n_j <= tau),
    ``"conelike"`` (gamma_j(n_1)/tau_j <= n_j <= tau_j gamma_j(n_1)) or
    ``"explicit"`` (the given members).  ``values`` optionally restricts
    every coordinate to a ladder of integers to keep enumerations small.
    """

    kind: str
    N: tuple = ()
    tau: float = 1.0
    gammas: tuple = ()
    taus: tuple = ()
    values: Optional[tuple] = None
    members: tuple = ()

    def __post_init__(self):
        if self.kind not in ("box", "cone", "conelike", "explicit"):
            raise SpecError(f"unknown index-set kind {self.kind!r}")
        if self.kind == "explicit":
            object.__setattr__(self, "members", tuple(tuple(int(v) for v in np.atleast_1d(m)) for m in self.members))
            return
        object.__setattr__(self, "N", tuple(int(v) for v in np.atleast_1d(self.N)))
        if not self.N or min(self.N) < 1:
            raise SpecError("N must be a nonempty multi-index of positive integers")
        if self.kind == "cone" and self.tau < 1:
            raise SpecError("cone needs tau >= 1")
        if self.kind == "conelike":
            if len(self.gammas) != len(self.N) - 1 or len(self.taus) != len(self.N) - 1:
                raise SpecError("conelike sets need d-1 gamma functions and d-1 taus")
            if min(self.taus) < 1:
                raise SpecError("conelike taus must be >= 1")
            for g in self.gammas:
                if not admissibility(g).increasing:
                    raise SpecError("conelike gamma functions must be strictly increasing")

    @property
    def d(self) -> int:
        return len(self.members[0]) if self.kind == "explicit" else len(self.N)

    def _axis(self, j: int) -> list[int]:
        if self.values is None:
            return list(range(1, self.N[j] + 1))
        return [v for v in self.values if 1 <= v <= self.N[j]]

    def enumerate(self) -> list[tuple]:
        if self.kind == "explicit":
            return list(self.members)
        axes = [self._axis(j) for j in range(self.d)]
        if self.kind == "box":
            return [tuple(n) for n in itertools.product(*axes)]
        if self.kind == "cone":
            tol = 1e-12
            return [tuple(n) for n in itertools.product(*axes)
                    if max(n) <= self.tau * min(n) * (1 + tol)]
        out = []
        for n1 in axes[0]:
            choices = []
            for j in range(1, self.d):
                g = float(self.gammas[j - 1](n1))
                lo, hi = g / self.taus[j - 1], g * self.taus[j - 1]
                choices.append([v for v in axes[j] if lo - 1e-12 <= v <= hi + 1e-12])
            for rest in itertools.product(*choices):
                out.append((n1,) + tuple(rest))
        return out


def _window_sums(a: Array, L: int, axis: int) -> Array:
    """Periodic sums of L consecutive entries starting at each index."""
    G = a.shape[axis]
    doubled = np.concatenate([a, a], axis=axis)
    zero_shape = list(a.shape)
    zero_shape[axis] = 1
    csum = np.concatenate([np.zeros(zero_shape), np.cumsum(doubled, axis=axis)], axis=axis)
    hi = np.take(csum, np.arange(L, L + G), axis=axis)
    lo = np.take(csum, np.arange(G), axis=axis)
    return hi - lo


def _backward_max(a: Array, L: int, axis: int) -> Array:
    """out[x] = max_{0 <= t < L} a[x - t] with periodic indexing."""
    out = a
    covered = 1
    while covered < L:
        step = min(covered, L - covered)
        out = np.maximum(out, np.roll(out, step, axis=axis))
        covered += step
    return out


def _length_vectors(d: int, ladder: list[int], variant: str, tau: float) -> list[tuple]:
    if variant == "cube":
        return [(L,) * d for L in ladder]
    if variant == "strong":
        return list(itertools.product(ladder, repeat=d))
    if variant == "cone":
        return [v for v in itertools.product(ladder, repeat=d) if max(v) <= tau * min(v) * (1 + 1e-12)]
    raise SpecError(f"unknown maximal variant {variant!r}")


def maximal_function(f: GridFunction, variant: str = "cube", tau: float = 2.0,
                     lengths="dyadic") -> GridFunction:
    """Sup of averages of |f| over admissible grid rectangles containing each point.

    ``variant`` is ``"cube"``, ``"cone"`` (side ratios within [1/tau, tau])
    or ``"strong"``.  ``lengths`` is a ladder name or an explicit list.
    """
    if not isinstance(f, GridFunction):
        f = GridFunction(np.asarray(f))
    if np.iscomplexobj(f.samples) and np.any(np.abs(f.samples.imag) > 1e-12):
        raise DomainError("maximal_function expects real samples")
    if variant == "cone" and tau < 1:
        raise DomainError("cone variant needs tau >= 1")
    a = np.abs(np.real(f.samples)).astype(float)
    G, d = f.G, f.d
    ladder = length_ladder(G, lengths) if isinstance(lengths, str) else sorted(set(int(v) for v in lengths))
    if not ladder or ladder[0] < 1 or ladder[-1] > G:
        raise SpecError("lengths must lie in 1..G")
    vectors = _length_vectors(d, ladder, variant, tau)
    result = np.zeros_like(a)
    # group by leading lengths so partial window sums are shared
    partial_cache: dict = {(): a}

    def window(prefix: tuple) -> Array:
        if prefix not in partial_cache:
            parent = window(prefix[:-1])
            partial_cache[prefix] = _window_sums(parent, prefix[-1], len(prefix) - 1)
        return partial_cache[prefix]

    for vec in vectors:
        avg = window(vec) / float(np.prod(vec))
        for axis, L in enumerate(vec):
            avg = _backward_max(avg, L, axis)
        np.maximum(result, avg, out=result)
        if len(partial_cache) > 4 * len(ladder) + 8:
            # keep the first-axis sums, drop deeper ones
            for key in [k for k in partial_cache if len(k) > 1 and k[0] != vec[0]]:
                del partial_cache[key]
    # the single-cell average is |f| itself; guard against prefix-sum rounding
    np.maximum(result, a, out=result)
    return GridFunction(result)


def _spec_for(template: KernelSpec, n: tuple) -> KernelSpec:
    if template.region == "rectangular":
        return replace(template, n=tuple(n))
    if len(set(n)) != 1:
        raise SpecError("l_q means take a scalar index")
    return replace(template, n=int(n[0]))


def maximal_mean(c: Spectrum, template: KernelSpec, indices: IndexSet, absolute: bool = False) -> GridFunction:
    """sup_{n in indices} |sigma_n f|, or sup_n |f| * |K_n| when ``absolute``."""
    members = indices.enumerate()
    if not members:
        raise SpecError("empty index set")
    if not isinstance(c, Spectrum):
        c = analyze(c)
    if absolute:
        if c.d != 1:
            raise SpecError("absolute maximal means are one-dimensional")
        fabs = analyze(GridFunction(np.abs(synthesize(c).samples)))
    out = np.zeros((c.G,) * c.d)
    for n in members:
        spec = _spec_for(template, n)
        if absolute:
            kabs = analyze(GridFunction(np.abs(kernel_on_grid(spec, c.G))))
            vals = synthesize(Spectrum(fabs.coefficients * kabs.coefficients)).samples.real
        else:
            vals = np.abs(synthesize(apply_multiplier(c, spec)).samples)
        np.maximum(out, vals, out=out)
    return GridFunction(out)


def _check_t(t: float):
    if not (POISSON_T_MIN < t <= POISSON_T_MAX):
        raise TruncationError(f"Poisson parameter {t} outside ({POISSON_T_MIN:g}, {POISSON_T_MAX:g}]")


def poisson_truncation(t: float, d: int, tol: float = POISSON_TAIL_TOL) -> int:
    """Radius K with sum_{||k||_inf > K} exp(-t ||k||_2) below tol."""
    _check_t(t)
    K = 1
    while True:
        m = np.arange(K + 1, K + 1 + 200_000, dtype=float)
        counts = (2 * m + 1) ** d - (2 * m - 1) ** d
        tail = float(np.sum(counts * np.exp(-t * m)))
        if tail < tol:
            return K
        K = int(K * 1.5) + 1
        if (2 * K + 1) ** d > 5e7:
            raise TruncationError(f"Poisson lattice for t = {t} is too large")


def poisson_kernel(t: float, x, d: int = 1) -> Array:
    """Periodic Poisson kernel sum_k exp(-t ||k||_2) exp(i k.x) by lattice summation."""
    K = poisson_truncation(t, d)
    x = np.asarray(x, dtype=float)
    pts = x.reshape(-1, 1) if d == 1 else x.reshape(-1, d)
    axes = [np.arange(-K, K + 1)] * d
    ks = np.stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")], axis=-1).astype(float)
    w = np.exp(-t * np.sqrt(np.sum(ks * ks, axis=-1)))
    out = np.empty(len(pts))
    step = max(1, (1 << 22) // len(ks))
    for s in range(0, len(pts), step):
        out[s:s + step] = np.cos(pts[s:s + step] @ ks.T) @ w
    return out.reshape(x.shape if d == 1 else x.shape[:-1])


def poisson_maximal(f: GridFunction, t_grid: Optional[Sequence[float]] = None) -> GridFunction:
    """max over t of |f * P_t|, applied as the multiplier exp(-t ||k||_2)."""
    if t_grid is None:
        t_grid = default_t_grid()
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise SpecError("t_grid must be nonempty")
    for t in t_grid:
        _check_t(t)
    if not isinstance(f, GridFunction):
        f = GridFunction(np.asarray(f))
    c = analyze(f)
    k = c.frequencies().astype(float)
    norm = np.sqrt(np.sum(k * k, axis=-1))
    out = np.zeros((c.G,) * c.d)
    for t in t_grid:
        vals = np.abs(synthesize(Spectrum(c.coefficients * np.exp(-t * norm))).samples)
        np.maximum(out, vals, out=out)
    return GridFunction(out)


def weak_type_ratio(f: GridFunction, variant: str = "cube", tau: float = 2.0, lengths="dyadic") -> float:
    """sup_rho rho * lambda(Mf > rho) / ||f||_1 on the grid."""
    from .norms import lp_norm

    mf = maximal_function(f, variant, tau, lengths)
    l1 = lp_norm(f, 1.0)
    if l1 == 0:
        raise DomainError("f must not vanish identically")
    return lp_norm(mf, 1.0, "weak") / l1
