"""Gamma, Beta and Bessel functions and radial Fourier transforms.

Everything here is scalar and pure.  The Bessel function is evaluated
from its power series; below ``_FLOAT_SERIES_MAX`` the series is summed
in double precision, above it the terms are formed in extended
precision (mpmath) because the alternating terms grow like ``e**t``
before they decay and lose every significant digit in floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np

from .errors import ConvergenceError, DomainError, GuardError

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_GAMMA_MAX = 171.6

BESSEL_T_GUARD = 1.0e4
_FLOAT_SERIES_MAX = 8.0
_SERIES_REL_TOL = 1e-16
_SERIES_TERM_CAP = 500

GL_NODES_PER_UNIT = 64
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES_PER_UNIT)


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


def _lanczos_series(z: float) -> float:
    # z is the shifted argument (x - 1)
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function for positive real ``x`` via the Lanczos approximation."""
    x = _check_positive("x", x)
    if x > _GAMMA_MAX:
        raise GuardError(f"gamma({x}) overflows double precision")
    if x < 0.5:
        # keep the Lanczos argument in its accurate range
        return gamma(x + 1.0) / x
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    # split the power so t**(z+0.5) does not overflow before exp(-t) applies
    half = t ** (0.5 * (z + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * _lanczos_series(z)


def log_gamma(x: float) -> float:
    """Natural log of gamma(x) for positive x."""
    x = _check_positive("x", x)
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_series(z))


def beta(x: float, y: float) -> float:
    """Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)."""
    x = _check_positive("x", x)
    y = _check_positive("y", y)
    if x + y < _GAMMA_MAX:
        return gamma(x) * gamma(y) / gamma(x + y)
    return math.exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y))


def _bessel_float_series(k: float, t: float) -> float:
    h = 0.5 * t
    # log form keeps (t/2)^k accurate when t/2 is subnormal
    term = math.exp(k * (math.log(t) - math.log(2.0))) / gamma(k + 1.0)
    terms = [term]
    q = -h * h
    total = term
    for j in range(1, _SERIES_TERM_CAP):
        term *= q / (j * (j + k))
        terms.append(term)
        total += term
        # only stop once the terms are past their peak
        if j > h and abs(term) <= _SERIES_REL_TOL * abs(total):
            return math.fsum(terms)
    raise ConvergenceError(f"Bessel series for J_{k}({t}) did not converge")


def _bessel_mp_series(k: float, t: float) -> float:
    # digits lost to cancellation ~ log10(max term) ~ t / ln(10)
    dps = int(t / math.log(10.0)) + 30
    cap = max(_SERIES_TERM_CAP, int(3 * t) + 50)
    with mpmath.workdps(dps):
        h = mpmath.mpf(t) / 2
        kk = mpmath.mpf(k)
        term = h**kk / mpmath.gamma(kk + 1)
        q = -h * h
        total = term
        for j in range(1, cap):
            term = term * q / (j * (j + kk))
            total += term
            if j > t / 2 and (abs(term) < _SERIES_REL_TOL * abs(total) or abs(term) < mpmath.mpf(10) ** -40):
                return float(total)
    raise ConvergenceError(f"Bessel series for J_{k}({t}) did not converge")


def bessel_j(k: float, t: float) -> float:
    """Bessel function of the first kind J_k(t), order k > -1/2, 0 <= t <= 1e4.

    Uses the power series
    ``J_k(t) = sum_j (-1)^j (t/2)^(2j+k) / (j! Gamma(j+k+1))``.
    """
    k = float(k)
    t = float(t)
    if not math.isfinite(k) or k <= -0.5:
        raise DomainError(f"Bessel order must exceed -1/2, got {k}")
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"Bessel argument must be a nonnegative real, got {t}")
    if t > BESSEL_T_GUARD:
        raise GuardError(f"Bessel argument {t} exceeds the guard {BESSEL_T_GUARD:g}")
    if t == 0.0:
        if k == 0.0:
            return 1.0
        if k > 0.0:
            return 0.0
        raise DomainError("J_k(0) is infinite for negative order")
    if t <= _FLOAT_SERIES_MAX:
        return _bessel_float_series(k, t)
    return _bessel_mp_series(k, t)


def bessel_j_array(k: float, t) -> np.ndarray:
    """Vectorised :func:`bessel_j` over an array of arguments."""
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    out = np.empty_like(flat)
    small = flat <= _FLOAT_SERIES_MAX
    if np.any(flat < 0) or np.any(~np.isfinite(flat)):
        raise DomainError("Bessel arguments must be nonnegative reals")
    if k <= -0.5:
        raise DomainError(f"Bessel order must exceed -1/2, got {k}")
    if np.any(small):
        out[small] = _bessel_float_series_vec(k, flat[small])
    for i in np.flatnonzero(~small):
        out[i] = bessel_j(k, flat[i])
    return out.reshape(t.shape)


def _bessel_float_series_vec(k: float, t: np.ndarray) -> np.ndarray:
    h = 0.5 * t
    with np.errstate(divide="ignore", invalid="ignore"):
        term = np.where(t > 0, h**k, 1.0 if k == 0 else 0.0) / gamma(k + 1.0)
    total = term.copy()
    comp = np.zeros_like(total)
    q = -h * h
    for j in range(1, 80):
        term = term * q / (j * (j + k))
        # Kahan-compensated accumulation
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if j > 4 and np.all(np.abs(term) <= _SERIES_REL_TOL * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                   nodes_per_unit: int = GL_NODES_PER_UNIT) -> float:
    """Composite Gauss-Legendre rule with one panel per unit length."""
    if b <= a:
        return 0.0
    if nodes_per_unit == GL_NODES_PER_UNIT:
        x0, w0 = _GL_X, _GL_W
    else:
        x0, w0 = np.polynomial.legendre.leggauss(nodes_per_unit)
    panels = max(1, int(math.ceil(b - a)))
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    x = mid + half * x0[None, :]
    w = half * w0[None, :]
    vals = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    return float(np.sum(vals * w))


@dataclass(frozen=True)
class RadialProfile:
    """A function of the radius s >= 0, optionally vanishing beyond a radius."""

    evaluator: Callable[[np.ndarray], np.ndarray]
    support_radius: float = math.inf
    description: str = field(default="", compare=False)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        vals = np.asarray(self.evaluator(s), dtype=float)
        if math.isfinite(self.support_radius):
            vals = np.where(s > self.support_radius, 0.0, vals)
        return vals


def bochner_riesz_profile(alpha: float, gamma_exp: float = 2.0) -> RadialProfile:
    """The profile (1 - s**gamma)_+**alpha."""
    def ev(s):
        return np.clip(1.0 - np.abs(s) ** gamma_exp, 0.0, None) ** alpha
    return RadialProfile(ev, 1.0, f"(1-s^{gamma_exp:g})_+^{alpha:g}")


_RADIAL_TAIL_TOL = 1e-8
_RADIAL_MAX_EXTENT = 256.0


def _sphere_area(d: int) -> float:
    # surface area of the unit sphere in R^d
    return 2.0 * math.pi ** (d / 2.0) / gamma(d / 2.0)


def _radial_extent(theta: RadialProfile, d: int) -> float:
    if math.isfinite(theta.support_radius):
        return theta.support_radius
    # bound |r^(1-d/2) J_{d/2-1}(rs)| <= s^(d/2-1) / (2^(d/2-1) Gamma(d/2))
    scale = (2.0 * math.pi) ** (-d / 2.0) / (2.0 ** (d / 2.0 - 1.0) * gamma(d / 2.0))
    extent = 4.0
    while extent <= _RADIAL_MAX_EXTENT:
        tail = scale * gauss_legendre(lambda s: np.abs(theta(s)) * s ** (d - 1), extent, 4.0 * extent)
        if tail < _RADIAL_TAIL_TOL:
            return extent
        extent *= 2.0
    raise ConvergenceError("radial profile does not decay fast enough for the Bessel quadrature")


def radial_fourier_transform(theta: RadialProfile, r: float, d: int) -> float:
    """Fourier transform of x -> theta(|x|_2) on R^d at any x with |x|_2 = r.

    Normalisation: ``f^(x) = (2 pi)^(-d) int f(t) exp(-i x.t) dt``.
    """
    d = int(d)
    if d < 1:
        raise DomainError("dimension must be >= 1")
    r = float(r)
    if not math.isfinite(r) or r < 0:
        raise DomainError(f"radius must be nonnegative, got {r}")
    extent = _radial_extent(theta, d)
    if r == 0.0:
        integral = gauss_legendre(lambda s: theta(s) * s ** (d - 1), 0.0, extent)
        return (2.0 * math.pi) ** (-d) * _sphere_area(d) * integral
    if d == 1:
        # J_{-1/2}(t) t^(1/2) = sqrt(2/pi) cos t; the series needs k > -1/2
        integral = gauss_legendre(lambda s: theta(s) * np.cos(r * s), 0.0, extent)
        return integral / math.pi
    k = d / 2.0 - 1.0
    integral = gauss_legendre(
        lambda s: theta(s) * bessel_j_array(k, r * s) * s ** (d / 2.0), 0.0, extent)
    return (2.0 * math.pi) ** (-d / 2.0) * r ** (1.0 - d / 2.0) * integral


def bochner_riesz_ft(alpha: float, d: int, r: float) -> float:
    """Closed-form transform of (1 - |x|^2)_+^alpha at radius r > 0."""
    alpha = _check_positive("alpha", alpha)
    r = _check_positive("r", r)
    d = int(d)
    if d < 1:
        raise DomainError("dimension must be >= 1")
    nu = d / 2.0 + alpha
    return ((2.0 * math.pi) ** (-d / 2.0) * 2.0**alpha * gamma(alpha + 1.0)
            * r ** (-nu) * bessel_j(nu, r))


def sonine_integral(k: float, l: float, t: float) -> float:
    """Right side of J_{k+l+1}(t) = t^(l+1) / (2^l Gamma(l+1)) int_0^1 J_k(ts) s^(k+1) (1-s^2)^l ds."""
    integral = gauss_legendre(
        lambda s: bessel_j_array(k, t * s) * s ** (k + 1.0) * (1.0 - s * s) ** l, 0.0, 1.0)
    return t ** (l + 1.0) / (2.0**l * gamma(l + 1.0)) * integral


def bessel_bound_constant(k: float, t_max: float = 100.0, samples: int = 4000) -> float:
    """Empirical C_k with |J_k(t)| <= C_k min(t^k, t^(-1/2)) on (0, t_max]."""
    t = np.linspace(t_max / samples, t_max, samples)
    vals = np.abs(bessel_j_array(k, t))
    return float(np.max(vals / np.minimum(t**k, t**-0.5)))
