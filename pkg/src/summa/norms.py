"""Lp, weak Lp, L log L, Herz, Wiener amalgam and D_p norms on grids.

Dyadic shells on the torus are ``P_k = {2^(k-1) pi <= ||x||_inf < 2^k pi}``
for ``k <= 0``; the grid point at ``-pi`` belongs to ``P_0``.  Shells finer
than the grid can resolve are lumped into one inner cube whose
contribution is extrapolated as if f were constant there; for
``q = 1`` and for constants this extrapolation is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, ResolutionError, SpecError, TruncationError
from .spectral import GridFunction, check_grid_size
from .theta import ThetaFunction

Array = np.ndarray

WIENER_SAMPLES = 65  # 64 subintervals per unit cell, endpoints included
WIENER_TAIL_MAX = 1e-6
DEFAULT_SHELL_SAMPLES = 64
DEFAULT_SHELL_DEPTH = 24


@dataclass(frozen=True)
class NormReport:
    value: float
    norm_id: str
    resolution: dict = field(default_factory=dict)
    truncation: dict = field(default_factory=dict)

    def __float__(self):
        return self.value


def _grid(f) -> GridFunction:
    return f if isinstance(f, GridFunction) else GridFunction(np.asarray(f))


def lp_norm(f, p: float, kind: str = "strong") -> float:
    """Grid Lp norm (strong) or weak-Lp quasinorm of f on T^d."""
    f = _grid(f)
    p = float(p)
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    a = np.abs(f.samples).ravel()
    h = f.cell_measure
    if kind == "strong":
        if math.isinf(p):
            return float(np.max(a))
        return float(np.sum(a**p) * h) ** (1.0 / p)
    if kind != "weak":
        raise SpecError(f"unknown Lp kind {kind!r}")
    if math.isinf(p):
        return float(np.max(a))
    # rho * lambda(|f| > rho)^(1/p) is largest as rho rises to a sample value v,
    # where the measure is lambda(|f| >= v)
    v = np.sort(a)[::-1]
    counts = np.arange(1, len(v) + 1)
    last_of_value = np.append(v[1:] != v[:-1], True)
    vals = v[last_of_value] * (counts[last_of_value] * h) ** (1.0 / p)
    return float(np.max(vals)) if len(vals) else 0.0


def llogl_norm(f, power: int) -> float:
    """int |f| (log+ |f|)^power over T^d."""
    if int(power) != power or power < 0:
        raise DomainError("power must be a nonnegative integer")
    f = _grid(f)
    a = np.abs(f.samples)
    with np.errstate(divide="ignore"):
        logp = np.where(a > 1.0, np.log(np.where(a > 0, a, 1.0)), 0.0)
    return float(np.sum(a * logp ** int(power))) * f.cell_measure


# ---------------------------------------------------------------- shells

def finest_shell(G: int) -> int:
    """Smallest k whose shell still has >= 4 grid points per dimension."""
    g = int(round(math.log2(G)))
    return 3 - g


def _shell_index(M: Array, G: int) -> Array:
    """Shell k of integer offsets M = ||m||_inf (M >= 1); the -pi point goes to P_0."""
    g = int(round(math.log2(G)))
    lg = np.floor(np.log2(np.maximum(M, 1))).astype(int)
    return np.minimum(lg - g + 2, 0)


def _check_kmin(G: int, k_min: Optional[int]) -> int:
    lowest = finest_shell(G)
    if k_min is None:
        return lowest
    if k_min < lowest:
        raise ResolutionError(
            f"shell P_{k_min} has fewer than 4 grid points per dimension at G = {G}")
    if k_min > 0:
        raise ResolutionError("k_min must be <= 0")
    return int(k_min)


def _offsets(G: int, d: int) -> list[Array]:
    m = np.abs(np.arange(G) - G // 2)
    return [m.reshape([G if a == j else 1 for a in range(d)]) for j in range(d)]


def _qnorm(values: Array, q: float, h: float) -> float:
    if values.size == 0:
        return 0.0
    if math.isinf(q):
        return float(np.max(values))
    return float(np.sum(values**q) * h) ** (1.0 / q)


def _labels_E(G: int, d: int, k_min: int) -> Array:
    """Shell label per grid point; points in the inner cube get label 1."""
    offs = _offsets(G, d)
    M = offs[0]
    for o in offs[1:]:
        M = np.maximum(M, o)
    M = np.broadcast_to(M, (G,) * d)
    k = _shell_index(M, G)
    inner = M < 2.0 ** (k_min - 2) * G
    return np.where(inner, 1, k)


def _herz_E_grid(a: Array, q: float, k_min: int, h: float, d: int, shift: int = 0) -> tuple[float, dict]:
    G = a.shape[0]
    labels = _labels_E(G, d, k_min)
    expo = d * (1.0 - 1.0 / q) if not math.isinf(q) else float(d)
    total = 0.0
    parts = {}
    for k in range(k_min, 1):
        val = 2.0 ** ((k + shift) * expo) * _qnorm(a[labels == k], q, h)
        parts[k + shift] = val
        total += val
    inner_w = 2.0 ** ((k_min + shift) * expo) * (2.0**d - 1.0) ** (-expo / d)
    inner = inner_w * _qnorm(a[labels == 1], q, h)
    return total + inner, {"k_min": k_min + shift, "inner": inner, "shells": parts}


def _shell_index_1d(m: Array, G: int, k_min: int) -> Array:
    k = _shell_index(np.maximum(m, 1), G)
    return np.where(m < 2.0 ** (k_min - 2) * G, 1, k)


def _herz_Eprime_grid(a: Array, q: float, k_min: int, h: float, d: int, shift: int = 0) -> float:
    G = a.shape[0]
    m = np.abs(np.arange(G) - G // 2)
    lab1 = _shell_index_1d(m, G, k_min)
    expo = (1.0 - 1.0 / q) if not math.isinf(q) else 1.0
    weight_1d = np.where(lab1 == 1, 2.0 ** ((k_min + shift) * expo), 2.0 ** ((lab1 + shift) * expo))
    # flat product-shell id per point
    code = np.where(lab1 == 1, 0, lab1 - k_min + 1)  # 0..(1-k_min)+1
    base = int(np.max(code)) + 1
    ids = np.zeros((G,) * d, dtype=np.int64)
    w = np.ones((G,) * d)
    for j in range(d):
        shape = [G if a_ == j else 1 for a_ in range(d)]
        ids = ids * base + code.reshape(shape)
        w = w * weight_1d.reshape(shape)
    ids = ids.ravel()
    wflat = w.ravel()
    vals = a.ravel()
    nshell = base**d
    if math.isinf(q):
        norms = np.zeros(nshell)
        np.maximum.at(norms, ids, vals)
    else:
        norms = np.bincount(ids, weights=vals**q * h, minlength=nshell) ** (1.0 / q)
    wshell = np.zeros(nshell)
    wshell[ids] = wflat
    return float(np.sum(wshell * norms))


def herz_norm(f, q: float, variant: str = "E", domain: str = "torus", k_min: Optional[int] = None,
              G: int = 256, d: Optional[int] = None, k_max: int = 0, report: bool = False,
              shell_samples: int = DEFAULT_SHELL_SAMPLES):
    """Herz norm sum_k 2^(k d (1-1/q)) ||f 1_{P_k}||_q (variant "E") or its
    product-shell analogue (variant "Eprime").

    ``f`` is a :class:`GridFunction` on the torus or a callable taking
    points of shape (..., d).  Callables are sampled shell by shell with
    ``shell_samples`` points per dimension for variant E (down to
    ``k_min``, default ``k_max - 24``), or on a G-point grid for Eprime.
    ``domain="line"`` integrates over the cube of half-width ``2^k_max pi``
    in R^d instead of the torus.
    """
    q = float(q)
    if not q >= 1:
        raise DomainError("q must be >= 1")
    if variant not in ("E", "Eprime"):
        raise SpecError(f"unknown Herz variant {variant!r}")
    if domain not in ("torus", "line"):
        raise SpecError(f"unknown domain {domain!r}")
    if domain == "torus" and k_max != 0:
        raise SpecError("on the torus the shells stop at k = 0")
    if isinstance(f, GridFunction) or not callable(f):
        f = _grid(f)
        if domain == "line":
            raise SpecError("grid functions live on the torus")
        a = np.abs(f.samples)
        km = _check_kmin(f.G, k_min)
        if variant == "E":
            value, info = _herz_E_grid(a, q, km, f.cell_measure, f.d)
        else:
            value, info = _herz_Eprime_grid(a, q, km, f.cell_measure, f.d), {"k_min": km}
        res = {"G": f.G, "d": f.d}
    else:
        if d is None:
            raise SpecError("callables need the dimension d")
        if variant == "E":
            value, info = _herz_E_callable(f, q, d, k_max, k_min, shell_samples)
            res = {"shell_samples": shell_samples, "d": d}
        else:
            check_grid_size(G)
            from .spectral import grid_points
            scale = 2.0**k_max
            pts = grid_points(G, d) * scale
            a = np.abs(np.asarray(f(pts), dtype=float))
            km = _check_kmin(G, None if k_min is None else k_min - k_max)
            h = (2.0 * math.pi * scale / G) ** d
            value, info = _herz_Eprime_grid(a, q, km, h, d, k_max), {"k_min": km + k_max}
            res = {"G": G, "d": d}
    if not report:
        return value
    return NormReport(value, f"herz-{variant}-q={q:g}", res, info)


def _herz_E_callable(f: Callable, q: float, d: int, k_max: int, k_min: Optional[int], S: int):
    if S % 8:
        raise ResolutionError("shell_samples must be a multiple of 8")
    if k_min is None:
        k_min = k_max - DEFAULT_SHELL_DEPTH
    expo = d * (1.0 - 1.0 / q) if not math.isinf(q) else float(d)
    axis_idx = np.arange(S) - S // 2
    mesh = np.meshgrid(*([axis_idx] * d), indexing="ij")
    M = mesh[0] * 0
    for m in mesh:
        M = np.maximum(M, np.abs(m))
    total = 0.0
    parts = {}
    for k in range(k_max, k_min - 1, -1):
        R = 2.0**k * math.pi
        h = 2.0 * R / S
        keep = M >= S // 4
        if k != k_max:
            keep &= M < S // 2
        pts = np.stack([m[keep] * h for m in mesh], axis=-1)
        vals = np.abs(np.asarray(f(pts), dtype=float))
        val = 2.0 ** (k * expo) * _qnorm(vals, q, h**d)
        parts[k] = val
        total += val
    # inner cube ||x||_inf < 2^(k_min - 1) pi
    R = 2.0 ** (k_min - 1) * math.pi
    h = 2.0 * R / S
    keep = M < S // 2
    pts = np.stack([m[keep] * h for m in mesh], axis=-1)
    vals = np.abs(np.asarray(f(pts), dtype=float))
    inner = 2.0 ** (k_min * expo) * (2.0**d - 1.0) ** (-expo / d) * _qnorm(vals, q, h**d)
    return total + inner, {"k_min": k_min, "inner": inner, "shells": parts}


# ---------------------------------------------------------------- D_p

def dp_norm(f, p: float, form: str = "integral", k_min: Optional[int] = None) -> float:
    """D_p norm: sup over dyadic r = 2^k pi <= pi of (r^-d int_{[-r,r]^d} |f|^p)^(1/p)
    ("integral"), or sup_k 2^(-kd/p) ||f 1_{P_k}||_p ("shell")."""
    f = _grid(f)
    p = float(p)
    if not p >= 1 or math.isinf(p):
        raise DomainError("p must be a finite real >= 1")
    G, d = f.G, f.d
    km = _check_kmin(G, k_min)
    a = np.abs(f.samples) ** p
    h = f.cell_measure
    labels = _labels_E(G, d, km)
    if form == "integral":
        # cubes [-r, r)^d built from the same half-open point sets as the shells,
        # including the innermost cube of half-width 2^(km-1) pi
        best = 0.0
        mass = float(np.sum(a[labels == 1])) * h
        r = 2.0 ** (km - 1) * math.pi
        best = (mass / r**d) ** (1.0 / p)
        for k in range(km, 1):
            mass += float(np.sum(a[labels == k])) * h
            r = 2.0**k * math.pi
            best = max(best, (mass / r**d) ** (1.0 / p))
        return best
    if form != "shell":
        raise SpecError(f"unknown D_p form {form!r}")
    best = 0.0
    for k in range(km, 1):
        val = 2.0 ** (-k * d / p) * (float(np.sum(a[labels == k])) * h) ** (1.0 / p)
        best = max(best, val)
    inner = (float(np.sum(a[labels == 1])) * h) ** (1.0 / p) * 2.0 ** (-km * d / p) * (2.0**d - 1.0) ** (1.0 / p)
    return max(best, inner)


def dp_equivalence_bounds(d: int, p: float) -> tuple[float, float]:
    """Continuum bounds for integral/shell: [pi^(-d/p), pi^(-d/p) (1 - 2^-d)^(-1/p)]."""
    lo = math.pi ** (-d / p)
    return lo, lo * (1.0 - 2.0 ** (-d)) ** (-1.0 / p)


# ---------------------------------------------------------------- Wiener amalgam

def wiener_amalgam_norm(theta: ThetaFunction, truncation_radius: int, d: int = 1,
                        samples: int = WIENER_SAMPLES) -> NormReport:
    """sum_{||k||_inf <= R} sup_{x in [0,1]^d} |theta(x + k)| plus a tail bound."""
    R = int(truncation_radius)
    if R < 0:
        raise DomainError("truncation radius must be nonnegative")
    tail = theta.wiener_tail_bound(R, d)
    if tail > WIENER_TAIL_MAX:
        raise TruncationError(f"Wiener tail bound {tail:.3g} beyond radius {R} exceeds {WIENER_TAIL_MAX:g}")
    u = np.linspace(0.0, 1.0, samples)
    cell = np.stack(np.meshgrid(*([u] * d), indexing="ij"), axis=-1).reshape(-1, d)
    ks = np.arange(-R, R + 1)
    total = 0.0
    if d == 1:
        pts = ks[:, None] + u[None, :]
        total = float(np.sum(np.max(np.abs(theta(pts[..., None])), axis=1)))
    else:
        corners = np.stack(np.meshgrid(*([ks] * d), indexing="ij"), axis=-1).reshape(-1, d)
        step = max(1, (1 << 21) // len(cell))
        for s in range(0, len(corners), step):
            block = corners[s:s + step, None, :] + cell[None, :, :]
            total += float(np.sum(np.max(np.abs(theta(block)), axis=1)))
    return NormReport(total, f"wiener-{theta.label}", {"samples_per_cell": samples, "d": d},
                      {"radius": R, "tail_bound": tail})


# ---------------------------------------------------------------- majorant

def nonincreasing_majorant_l1(f, r_norm: float = math.inf, G: int = 256, d: Optional[int] = None) -> float:
    """L1 norm of eta(x) = sup_{||t||_r >= ||x||_r} |f(t)| on the torus grid."""
    if not isinstance(f, GridFunction) and callable(f):
        if d is None:
            raise SpecError("callables need the dimension d")
        from .spectral import grid_points
        f = GridFunction(np.asarray(f(grid_points(G, d))))
    f = _grid(f)
    G, d = f.G, f.d
    offs = [np.broadcast_to(o, (G,) * d).astype(float) for o in _offsets(G, d)]
    if math.isinf(r_norm):
        key = np.max(np.stack(offs), axis=0)
    elif r_norm == 1:
        key = np.sum(np.stack(offs), axis=0)
    elif r_norm == 2:
        key = np.sum(np.stack(offs) ** 2, axis=0)  # squared norm orders identically
    else:
        key = np.sum(np.stack(offs) ** r_norm, axis=0)
    key = key.ravel()
    a = np.abs(f.samples).ravel()
    order = np.argsort(-key, kind="stable")
    ks, vs = key[order], a[order]
    starts = np.flatnonzero(np.append(True, ks[1:] != ks[:-1]))
    group_max = np.maximum.reduceat(vs, starts)
    eta_group = np.maximum.accumulate(group_max)
    sizes = np.diff(np.append(starts, len(ks)))
    return float(np.sum(eta_group * sizes)) * f.cell_measure
