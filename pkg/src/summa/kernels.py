"""Dirichlet, Fejer, Riesz, Cesaro and theta kernels on the torus T^d.

Every kernel is ``K(x) = sum_k m(k) exp(i k.x)`` for a multiplier ``m``
(see :func:`multiplier`).  Lattice sums are always available; closed
forms are used where they exist.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import CollisionError, DomainError, ResolutionError, SpecError, TruncationError
from .theta import ThetaFunction

Array = np.ndarray

COLLISION_THRESHOLD = 1e-6
SINGULAR_THRESHOLD = 1e-9
THETA_TAIL_TOL = 1e-8
PERIODIZED_TAIL_MAX = 1e-6
_MAX_LATTICE_POINTS = 20_000_000
_CHUNK = 1 << 22

METHODS = ("dirichlet", "fejer", "riesz", "cesaro", "theta")
REGIONS = ("ellq", "rectangular")


@dataclass(frozen=True)
class KernelSpec:
    """Description of a summability kernel.

    ``n`` is an integer for l_q regions and a tuple of length ``d`` for
    rectangular ones.  ``q`` may be 1, 2 or ``math.inf``.
    """

    d: int
    method: str = "dirichlet"
    n: int | tuple = 1
    region: str = "ellq"
    q: float = math.inf
    alpha: float = 0.0
    gamma_exp: float = 1.0
    theta: Optional[ThetaFunction] = field(default=None, compare=False)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise SpecError(f"dimension must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        if self.method not in METHODS:
            raise SpecError(f"unknown method {self.method!r}")
        if self.region not in REGIONS:
            raise SpecError(f"unknown region {self.region!r}")
        if self.region == "ellq":
            if self.q not in (1, 2, math.inf):
                raise SpecError(f"q must be 1, 2 or inf, got {self.q}")
            if isinstance(self.n, (tuple, list, np.ndarray)):
                raise SpecError("l_q regions take a scalar n")
            if int(self.n) != self.n or self.n < 1:
                raise SpecError(f"n must be a positive integer, got {self.n}")
            object.__setattr__(self, "n", int(self.n))
        else:
            raw = np.atleast_1d(np.asarray(self.n))
            if raw.size == 1 and self.d > 1:
                raw = np.repeat(raw, self.d)
            if raw.size != self.d or np.any(raw < 1) or np.any(raw != np.round(raw)):
                raise SpecError(f"rectangular n must be {self.d} positive integers, got {self.n}")
            n = tuple(int(v) for v in raw)
            object.__setattr__(self, "n", n)
        if self.method == "fejer":
            object.__setattr__(self, "alpha", 1.0)
            object.__setattr__(self, "gamma_exp", 1.0)
        elif self.method == "dirichlet":
            object.__setattr__(self, "alpha", 0.0)
        elif self.method == "riesz":
            if not self.alpha > 0 or not self.gamma_exp >= 1:
                raise SpecError("riesz means need alpha > 0 and gamma >= 1")
        elif self.method == "cesaro":
            if self.alpha < 0:
                raise SpecError("cesaro means need alpha >= 0")
            if self.region == "ellq" and self.q == 2:
                raise SpecError("cesaro means are defined for q in {1, inf} and rectangles")
        elif self.method == "theta" and self.theta is None:
            raise SpecError("theta method needs a ThetaFunction")
        if self.region == "ellq" and self.q == 2 and self.method == "riesz" \
                and float(self.gamma_exp) != int(self.gamma_exp):
            raise SpecError("q = 2 requires an integer gamma")

    @property
    def n_vector(self) -> tuple:
        return self.n if self.region == "rectangular" else (self.n,) * self.d

    @property
    def separable(self) -> bool:
        """True when the multiplier is a product of one-dimensional ones."""
        if self.d == 1:
            return True
        if self.region == "rectangular":
            return self.method != "theta" or self.theta.combine == "tensor"
        return self.q == math.inf and self.method == "dirichlet"

    def vanishes_on_boundary(self) -> bool:
        """True if m(k) = 0 whenever some |k_j| reaches n_j (or ||k||_q = n)."""
        if self.method in ("fejer", "cesaro"):
            return True
        if self.method == "riesz":
            return self.alpha > 0
        if self.method == "theta":
            return math.isfinite(self.theta.support) and self.theta.support <= 1.0 \
                and float(self.theta.profile_values(1.0)) == 0.0
        return False

    def one_dim(self, j: int) -> "KernelSpec":
        """The j-th one-dimensional factor of a separable spec."""
        nj = self.n_vector[j]
        return KernelSpec(1, self.method, nj, "ellq", math.inf, self.alpha, self.gamma_exp, self.theta)

    def label(self) -> str:
        n = "x".join(str(v) for v in self.n_vector) if self.region == "rectangular" else str(self.n)
        region = "rect" if self.region == "rectangular" else f"l{_qlabel(self.q)}"
        extra = ""
        if self.method in ("riesz", "cesaro"):
            extra = f",alpha={self.alpha:g}" + (f",gamma={self.gamma_exp:g}" if self.method == "riesz" else "")
        elif self.method == "theta":
            extra = f",theta={self.theta.label}"
        return f"{self.method}[{region},d={self.d},n={n}{extra}]"


def _qlabel(q) -> str:
    return "inf" if q == math.inf else str(int(q))


def cesaro_coefficient(k: int, alpha: float) -> float:
    """A_k^alpha = (alpha+1)(alpha+2)...(alpha+k)/k!; A_{-1}^alpha = 0."""
    if float(alpha) == int(alpha) and alpha < 0:
        raise DomainError(f"A_k^alpha has a pole at alpha = {alpha}")
    k = int(k)
    if k < 0:
        return 0.0
    value = 1.0
    for j in range(1, k + 1):
        value *= (alpha + j) / j
    return value


def cesaro_table(kmax: int, alpha: float) -> Array:
    """A_0^alpha, ..., A_kmax^alpha."""
    if float(alpha) == int(alpha) and alpha < 0:
        raise DomainError(f"A_k^alpha has a pole at alpha = {alpha}")
    j = np.arange(1, kmax + 1, dtype=float)
    return np.concatenate([[1.0], np.cumprod((alpha + j) / j)])


def lattice_norm(k: Array, q) -> Array:
    """||k||_q of integer vectors along the last axis (q in {1, 2, inf})."""
    k = np.abs(np.asarray(k))
    if q == 1:
        return np.sum(k, axis=-1).astype(float)
    if q == math.inf:
        return np.max(k, axis=-1).astype(float)
    return np.sqrt(np.sum(k.astype(np.int64) ** 2, axis=-1).astype(float))


def _in_ball(k: Array, q, n: int) -> Array:
    k = np.abs(np.asarray(k, dtype=np.int64))
    if q == 2:
        # exact integer test for the circular ball
        return np.sum(k * k, axis=-1) <= n * n
    return lattice_norm(k, q) <= n


def _profile_multiplier(method: str, r: Array, spec: KernelSpec) -> Array:
    """Multiplier as a function of the ratio r = ||k||/n >= 0."""
    if method == "dirichlet":
        return (r <= 1.0).astype(float)
    if method in ("fejer", "riesz"):
        return np.clip(1.0 - r ** spec.gamma_exp, 0.0, None) ** spec.alpha
    if method == "theta":
        return spec.theta.profile_values(r)
    raise SpecError(method)


def _cesaro_1d(absk: Array, n: int, alpha: float) -> Array:
    table = cesaro_table(n, alpha)
    idx = n - 1 - absk.astype(np.int64)
    out = np.zeros(absk.shape)
    ok = idx >= 0
    out[ok] = table[idx[ok]] / table[n - 1]
    return out


def multiplier(spec: KernelSpec, k) -> Array:
    """Multiplier m(k) of the kernel at integer frequencies k of shape (..., d)."""
    k = np.asarray(k, dtype=np.int64)
    if spec.d == 1 and (k.ndim == 0 or k.shape[-1] != 1):
        k = k[..., None]
    if k.shape[-1] != spec.d:
        raise SpecError(f"frequencies must have last axis {spec.d}")
    if spec.region == "rectangular" or spec.d == 1:
        nv = spec.n_vector
        if spec.method == "theta" and spec.theta.combine != "tensor":
            t = -k / np.asarray(nv, dtype=float)
            return np.asarray(spec.theta(t), dtype=float)
        out = np.ones(k.shape[:-1])
        for j in range(spec.d):
            absk = np.abs(k[..., j])
            if spec.method == "dirichlet":
                out = out * (absk <= nv[j])
            elif spec.method == "cesaro":
                out = out * _cesaro_1d(absk, nv[j], spec.alpha)
            else:
                out = out * _profile_multiplier(spec.method, absk / nv[j], spec)
        return out
    n = spec.n
    if spec.method == "dirichlet":
        return _in_ball(k, spec.q, n).astype(float)
    if spec.method == "cesaro":
        norm = lattice_norm(k, spec.q)
        return _cesaro_1d(norm, n, spec.alpha)
    r = lattice_norm(k, spec.q) / n
    out = _profile_multiplier(spec.method, r, spec)
    if spec.method in ("fejer", "riesz"):
        out = np.where(_in_ball(k, spec.q, n), out, 0.0)
    return out


def truncation_radius(theta: ThetaFunction, d: int, n_prod: float, tol: float = THETA_TAIL_TOL) -> int:
    """Smallest R with (prod n) * W-tail(R) < tol."""
    if math.isfinite(theta.support):
        return int(math.ceil(theta.support))
    r = 1
    while r < 1 << 20:
        if n_prod * theta.wiener_tail_bound(r, d) < tol:
            # bisect back down between r/2 and r
            lo, hi = r // 2, r
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if n_prod * theta.wiener_tail_bound(mid, d) < tol:
                    hi = mid
                else:
                    lo = mid
            return hi
        r *= 2
    raise TruncationError(f"tail of {theta.label} does not fall below {tol:g}")


def frequency_extent(spec: KernelSpec, tol: float = THETA_TAIL_TOL) -> tuple:
    """Per-coordinate bound K_j with m(k) = 0 (or below tolerance) for |k_j| > K_j."""
    nv = spec.n_vector
    if spec.method != "theta":
        return tuple(nv)
    theta = spec.theta
    nprod = float(np.prod(nv))
    if spec.region == "ellq" and spec.d > 1:
        # theta(||k||_q / n): a point with ||k||_inf > R n has ||k||_q > R n
        R = truncation_radius(theta, 1, nprod, tol) if math.isfinite(theta.support) else \
            truncation_radius(theta, spec.d, nprod, tol)
        return tuple(int(math.floor(R * v)) for v in nv)
    R = truncation_radius(theta, spec.d, nprod, tol)
    return tuple(int(math.floor(R * v)) for v in nv)


def _check_lattice_size(extent: Sequence[int]):
    size = float(np.prod([2 * e + 1 for e in extent]))
    if size > _MAX_LATTICE_POINTS:
        raise TruncationError(f"kernel lattice would hold {size:.3g} points")


def _lattice_points(extent: Sequence[int]) -> Array:
    axes = [np.arange(-e, e + 1) for e in extent]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _as_point_array(x, d: int) -> tuple[Array, tuple]:
    x = np.asarray(x, dtype=float)
    if d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        shape = x.shape
        return x.reshape(-1, 1), shape
    if x.shape[-1] != d:
        raise DomainError(f"points must have last axis of length {d}")
    return x.reshape(-1, d), x.shape[:-1]


def _lattice_sum_points(spec: KernelSpec, pts: Array, return_imag: bool = False):
    extent = frequency_extent(spec)
    _check_lattice_size(extent)
    ks = _lattice_points(extent)
    m = multiplier(spec, ks)
    keep = m != 0.0
    ks, m = ks[keep], m[keep]
    re = np.zeros(len(pts))
    im = np.zeros(len(pts))
    if len(ks) == 0:
        return (re, im) if return_imag else re
    step = max(1, _CHUNK // len(ks))
    for s in range(0, len(pts), step):
        phase = pts[s:s + step] @ ks.T.astype(float)
        re[s:s + step] = np.cos(phase) @ m
        if return_imag:
            im[s:s + step] = np.sin(phase) @ m
    return (re, im) if return_imag else re


def lattice_sum(spec: KernelSpec, x, return_imag: bool = False):
    """Brute-force sum_k m(k) exp(i k.x) at points x of shape (..., d).

    With ``return_imag`` the imaginary part is returned too; it vanishes
    up to rounding because every multiplier here is even.
    """
    pts, shape = _as_point_array(x, spec.d)
    if spec.separable and spec.d > 1:
        re = np.ones(len(pts))
        im = np.zeros(len(pts))
        for j in range(spec.d):
            r, i = _lattice_sum_points(spec.one_dim(j), pts[:, j:j + 1], True)
            re, im = re * r - im * i, re * i + im * r
    else:
        re, im = _lattice_sum_points(spec, pts, True)
    re = re.reshape(shape)
    return (re, im.reshape(shape)) if return_imag else re


def _dirichlet_1d(x: Array, n: int) -> Array:
    x = np.asarray(x, dtype=float)
    s = np.sin(0.5 * x)
    small = np.abs(s) < SINGULAR_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.sin((n + 0.5) * x) / s
    return np.where(small, 2.0 * n + 1.0, val)


def _fejer_1d(x: Array, n: int) -> Array:
    x = np.asarray(x, dtype=float)
    s = np.sin(0.5 * x)
    small = np.abs(s) < SINGULAR_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (np.sin(0.5 * n * x) / s) ** 2 / n
    return np.where(small, float(n), val)


def soc(d: int) -> Callable[[Array], Array]:
    """Cosine for even d, sine for odd d."""
    return np.cos if d % 2 == 0 else np.sin


def g_function(x: Array, n: int, d: int) -> Array:
    """G_n(cos x) = (-1)^floor((d-1)/2) 2 cos(x/2) (sin x)^(d-2) soc((n+1/2)x)."""
    x = np.asarray(x, dtype=float)
    sign = -1.0 if ((d - 1) // 2) % 2 else 1.0
    return sign * 2.0 * np.cos(0.5 * x) * np.sin(x) ** (d - 2) * soc(d)((n + 0.5) * x)


def _divided_difference_values(nodes: Array, values: Array) -> Array:
    # explicit form: sum_k f(x_k) / prod_{j != k} (x_k - x_j), vectorised over the leading axes
    d = nodes.shape[-1]
    total = np.zeros(nodes.shape[:-1])
    for k in range(d):
        denom = np.ones(nodes.shape[:-1])
        for j in range(d):
            if j != k:
                denom = denom * (nodes[..., k] - nodes[..., j])
        total = total + values[..., k] / denom
    return total


def min_node_gap(nodes) -> float:
    nodes = np.sort(np.asarray(nodes, dtype=float).ravel())
    return float(np.min(np.diff(nodes))) if len(nodes) > 1 else math.inf


def divided_difference(nodes, f: Callable[[float], float], method: str = "explicit") -> float:
    """Divided difference [x_1, ..., x_n] f.

    ``method="explicit"`` uses ``sum_k f(x_k) / prod_{j != k}(x_k - x_j)``;
    ``method="recursive"`` uses the defining recursion.
    """
    nodes = [float(v) for v in np.atleast_1d(nodes)]
    if not nodes:
        raise DomainError("need at least one node")
    if min_node_gap(nodes) < COLLISION_THRESHOLD:
        raise CollisionError(f"nodes closer than {COLLISION_THRESHOLD:g}")
    if method == "explicit":
        arr = np.asarray(nodes)
        vals = np.array([float(f(v)) for v in nodes])
        return float(_divided_difference_values(arr[None, :], vals[None, :])[0])
    if method == "recursive":
        cache = {}

        def rec(i, j):
            if (i, j) not in cache:
                if i == j:
                    cache[i, j] = float(f(nodes[i]))
                else:
                    cache[i, j] = (rec(i, j - 1) - rec(i + 1, j)) / (nodes[i] - nodes[j])
            return cache[i, j]
        return rec(0, len(nodes) - 1)
    raise SpecError(f"unknown divided-difference method {method!r}")


def _triangular_closed_form(pts: Array, n: int) -> tuple[Array, Array]:
    d = pts.shape[-1]
    x = np.abs(pts)
    c = np.cos(x)
    collide = np.zeros(len(pts), dtype=bool)
    for i, j in itertools.combinations(range(d), 2):
        collide |= np.abs(c[:, i] - c[:, j]) < COLLISION_THRESHOLD
    vals = np.zeros(len(pts))
    ok = ~collide
    if np.any(ok):
        vals[ok] = _divided_difference_values(c[ok], g_function(x[ok], n, d))
    return vals, collide


def triangular_d2_closed_form(x, n: int) -> Array:
    """Explicit two-dimensional triangular Dirichlet kernel."""
    x = np.abs(np.asarray(x, dtype=float))
    x1, x2 = x[..., 0], x[..., 1]
    num = np.cos(x1 / 2) * np.cos((n + 0.5) * x1) - np.cos(x2 / 2) * np.cos((n + 0.5) * x2)
    return 2.0 * num / (np.cos(x1) - np.cos(x2))


def _fejer_multiplier(spec: KernelSpec) -> bool:
    # Riesz with alpha = gamma = 1 and (C,1) have exactly the Fejer multiplier
    if spec.method == "fejer":
        return True
    if spec.method == "riesz":
        return spec.alpha == 1 and spec.gamma_exp == 1
    return spec.method == "cesaro" and spec.alpha == 1


def closed_form_available(spec: KernelSpec) -> bool:
    if spec.method == "dirichlet":
        return spec.d == 1 or spec.region == "rectangular" or spec.q in (1, math.inf)
    if _fejer_multiplier(spec):
        return spec.d == 1 or spec.region == "rectangular"
    return False


def dirichlet_kernel(spec: KernelSpec, x, mode: str = "closed_form") -> Array:
    """Dirichlet kernel sum_{k in region} exp(i k.x) at points x of shape (..., d)."""
    if spec.method != "dirichlet":
        raise SpecError("dirichlet_kernel needs method='dirichlet'")
    pts, shape = _as_point_array(x, spec.d)
    if np.any(np.abs(pts) > math.pi + 1e-12):
        raise DomainError("points must lie in [-pi, pi]^d")
    if mode == "lattice_sum":
        return lattice_sum(spec, pts).reshape(shape)
    if mode != "closed_form":
        raise SpecError(f"unknown mode {mode!r}")
    if not closed_form_available(spec):
        raise SpecError("no closed form for the circular (q = 2) Dirichlet kernel; use lattice_sum")
    if spec.separable:
        out = np.ones(len(pts))
        for j, nj in enumerate(spec.n_vector):
            out = out * _dirichlet_1d(pts[:, j], nj)
        return out.reshape(shape)
    vals, collide = _triangular_closed_form(pts, spec.n)
    if np.any(collide):
        vals[collide] = lattice_sum(spec, pts[collide])
    return vals.reshape(shape)


def summability_kernel(spec: KernelSpec, x, mode: str = "auto") -> Array:
    """K(x) = sum_k m(k) exp(i k.x) for any supported method.

    ``mode="auto"`` uses a closed form when one exists and the lattice
    sum otherwise.
    """
    pts, shape = _as_point_array(x, spec.d)
    if mode == "lattice_sum" or (mode == "auto" and not closed_form_available(spec)):
        return lattice_sum(spec, pts).reshape(shape)
    if spec.method == "dirichlet":
        return dirichlet_kernel(spec, pts, "closed_form").reshape(shape)
    if not closed_form_available(spec):
        raise SpecError(f"no closed form for {spec.label()}")
    out = np.ones(len(pts))
    for j, nj in enumerate(spec.n_vector):
        out = out * _fejer_1d(pts[:, j], nj)
    return out.reshape(shape)


def grid_axis(G: int) -> Array:
    """Grid x_j = -pi + 2 pi j / G, j = 0..G-1."""
    return -math.pi + 2.0 * math.pi * np.arange(G) / G


def _fold_1d(values: Array, ks: Array, G: int) -> Array:
    out = np.zeros(G)
    np.add.at(out, np.mod(ks, G), values)
    return out


def _fold(spec: KernelSpec, G: int) -> Array:
    """Multiplier folded modulo G into FFT order (exact aliasing on the grid)."""
    extent = frequency_extent(spec)
    if spec.separable:
        table = None
        for j in range(spec.d):
            e = extent[j]
            ks = np.arange(-e, e + 1)
            col = _fold_1d(multiplier(spec.one_dim(j), ks), ks, G)
            table = col if table is None else np.multiply.outer(table, col)
        return table
    _check_lattice_size(extent)
    ks = _lattice_points(extent)
    m = multiplier(spec, ks)
    keep = m != 0.0
    out = np.zeros((G,) * spec.d)
    np.add.at(out, tuple(np.mod(ks[keep], G).T), m[keep])
    return out


def kernel_on_grid(spec: KernelSpec, G: int) -> Array:
    """Kernel values at all points of the G^d grid, exact up to rounding.

    The multiplier is folded modulo G before an inverse FFT; because
    exp(i G x_j) = 1 on the grid the folding loses nothing.
    """
    if G < 4 or G & (G - 1):
        raise ResolutionError(f"G must be a power of two >= 4, got {G}")
    folded = _fold(spec, G)
    sign = np.where(np.arange(G) % 2 == 0, 1.0, -1.0)
    # exp(i k x_j) = (-1)^k exp(2 pi i k j / G)
    for axis in range(spec.d):
        shape = [1] * spec.d
        shape[axis] = G
        folded = folded * sign.reshape(shape)
    vals = np.fft.ifftn(folded) * G**spec.d
    return np.ascontiguousarray(vals.real)


def kernel_l1_norm(spec: KernelSpec, grid_points_per_dim: int) -> float:
    """Trapezoidal value of int_{T^d} |K| on the uniform grid."""
    G = int(grid_points_per_dim)
    if G < 8 * max(spec.n_vector):
        raise ResolutionError(f"grid of {G} points under-resolves n = {spec.n}; need >= {8 * max(spec.n_vector)}")
    vals = np.abs(kernel_on_grid(spec, G)).ravel()
    # numpy's pairwise summation has a fixed order for a given length
    return float(np.sum(vals)) * (2.0 * math.pi / G) ** spec.d


def theta_kernel_periodized(theta: ThetaFunction, n, x, truncation_radius: int = 100_000,
                            d: Optional[int] = None) -> tuple[Array, float]:
    """(2 pi)^d (prod n) sum_{||k||_inf <= R} theta^(n (x + 2 k pi)) and a tail estimate.

    The tail is estimated as twice the absolute mass of the shells
    R < ||k||_inf <= 2R, which dominates the remaining sum for transforms
    decaying at least like |x|^-2.
    """
    if theta.fourier_transform is None:
        raise SpecError(f"theta {theta.label} has no known Fourier transform")
    nv = np.atleast_1d(np.asarray(n, dtype=float))
    if d is None:
        d = len(nv)
    if len(nv) == 1:
        nv = np.repeat(nv, d)
    pts, shape = _as_point_array(x, d)
    R = int(truncation_radius)
    if R < 1:
        raise DomainError("truncation radius must be positive")
    if d == 1:
        ks = np.arange(-2 * R, 2 * R + 1, dtype=float)[:, None]
    else:
        if (4 * R + 1) ** d > _MAX_LATTICE_POINTS:
            raise TruncationError("periodisation lattice too large")
        ks = _lattice_points((2 * R,) * d).astype(float)
    inner = np.max(np.abs(ks), axis=-1) <= R
    scale = (2 * math.pi) ** d * float(np.prod(nv))
    vals = np.zeros(len(pts))
    tail = 0.0
    step = max(1, _CHUNK // len(ks))
    for s in range(0, len(pts), step):
        chunk = pts[s:s + step]
        arg = nv * (chunk[:, None, :] + 2.0 * math.pi * ks[None, :, :])
        ft = np.asarray(theta.fourier_transform(arg), dtype=float)
        vals[s:s + step] = scale * np.sum(np.where(inner[None, :], ft, 0.0), axis=1)
        tail = max(tail, 2.0 * scale * float(np.max(np.sum(np.where(inner[None, :], 0.0, np.abs(ft)), axis=1))))
    if tail > PERIODIZED_TAIL_MAX:
        raise TruncationError(f"periodisation tail estimate {tail:.3g} exceeds {PERIODIZED_TAIL_MAX:g}")
    return vals.reshape(shape), tail


def continuous_ball_kernel(x, t: float, d: int) -> Array:
    """int_{||v||_2 <= t} exp(i x.v) dv on R^d, via J_{d/2}."""
    from .special import bessel_j, gamma

    pts, shape = _as_point_array(x, d)
    r = np.sqrt(np.sum(pts * pts, axis=-1))
    out = np.empty(len(pts))
    vol = math.pi ** (d / 2) / gamma(d / 2 + 1) * t**d
    for i, rv in enumerate(r):
        if rv == 0.0:
            out[i] = vol
        else:
            out[i] = (2 * math.pi) ** (d / 2) * t ** (d / 2) * rv ** (-d / 2) * bessel_j(d / 2, t * rv)
    return out.reshape(shape)


def trig_identity_sides(n: int, x: float, y: float) -> tuple[float, float, float, float]:
    """Both sides of the two epsilon-weighted cosine-product sums.

    Returns ``(lhs_sin, rhs_sin, lhs_cos, rhs_cos)`` where the sine form is
    ``sum_k eps_k cos(ky) sin((n-k+1/2)x)`` and the cosine form replaces
    sin by cos; eps_0 = 1/2 and eps_k = 1 otherwise.
    """
    k = np.arange(n + 1)
    eps = np.where(k == 0, 0.5, 1.0)
    lhs_s = float(np.sum(eps * np.cos(k * y) * np.sin((n - k + 0.5) * x)))
    lhs_c = float(np.sum(eps * np.cos(k * y) * np.cos((n - k + 0.5) * x)))
    den = math.cos(x) - math.cos(y)
    h = n + 0.5
    rhs_s = math.sin(x / 2) * (math.cos(x / 2) * math.cos(h * x) - math.cos(y / 2) * math.cos(h * y)) / den
    rhs_c = math.cos(x / 2) * (math.sin(y / 2) * math.sin(h * y) - math.sin(x / 2) * math.sin(h * x)) / den
    return lhs_s, rhs_s, lhs_c, rhs_c


def second_difference_sum(theta: ThetaFunction, n: int, kmax: Optional[int] = None) -> float:
    """sum_{k >= 0} k |theta(k/n) - 2 theta((k+1)/n) + theta((k+2)/n)|."""
    if kmax is None:
        if math.isfinite(theta.support):
            kmax = int(math.ceil(theta.support * n)) + 2
        else:
            kmax = truncation_radius(theta, 1, 1.0, 1e-12) * n + 2
    k = np.arange(kmax + 1, dtype=float)
    t = np.arange(kmax + 3, dtype=float) / n
    v = theta.profile_values(t)
    d2 = v[:-2] - 2 * v[1:-1] + v[2:]
    return float(np.sum(k * np.abs(d2)))


def riesz_pointwise_ratio(n: int, alpha: float, G: int = 4096, gamma_exp: float = 1.0) -> float:
    """sup over grid u != 0 of |K_n^alpha(u)| / min(n, n^-alpha |u|^(-alpha-1)) in 1-D."""
    spec = KernelSpec(1, "riesz", n, alpha=alpha, gamma_exp=gamma_exp)
    vals = kernel_on_grid(spec, G)
    u = np.abs(grid_axis(G))
    ok = u > 0
    bound = np.minimum(n, n ** (-alpha) * u[ok] ** (-alpha - 1))
    return float(np.max(np.abs(vals[ok]) / bound))


def cesaro_sum_ratio(n: int, alpha: float, G: int = 4096) -> tuple[float, float]:
    """Empirical constant in |sum A^{alpha-1}_{n-1-k} soc((k+1/2)u)| <= C/sin^alpha + C n^(alpha-1)/sin.

    Returns the ratios for the sine and cosine choices of soc.
    """
    u = np.abs(grid_axis(G))
    u = u[u > 0]
    a = cesaro_table(n, alpha - 1.0) if alpha != 1.0 else np.ones(n + 1)
    k = np.arange(n)
    coef = a[n - 1 - k]
    phase = np.outer(u, k + 0.5)
    s = np.sin(u / 2)
    bound = s ** (-alpha) + n ** (alpha - 1.0) / s
    ratios = []
    for fn in (np.sin, np.cos):
        lhs = np.abs(fn(phase) @ coef)
        ratios.append(float(np.max(lhs / bound)))
    return ratios[0], ratios[1]
