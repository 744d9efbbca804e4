"""Summation functions theta and their catalog.

A :class:`ThetaFunction` couples a one-dimensional even profile with a
rule for building a d-variate function from it (tensor product, radial
composition, or an l-norm composition) and, where known, the Fourier
transform of the d-variate function under the ``(2 pi)^-d`` convention.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .errors import SpecError
from .special import bochner_riesz_ft, gamma

Array = np.ndarray

_TAIL_DIRECT_TERMS = 100_000


def _as_points(t, d: Optional[int] = None) -> Array:
    t = np.asarray(t, dtype=float)
    if t.ndim == 0:
        t = t.reshape(1, 1)
    elif d == 1 and t.shape[-1] != 1:
        t = t[..., None]
    return t


@dataclass(frozen=True)
class ThetaFunction:
    """Summation function theta.

    ``profile`` is the even one-variable function; ``combine`` tells how
    the d-variate theta is formed: ``"tensor"`` (product of profiles),
    ``"radial"`` (profile of the Euclidean norm) or ``"lnorm"`` (profile
    applied to ``||t||_p`` with ``p = lnorm_p``).  ``envelope`` is a
    non-increasing bound ``|theta(t)| <= envelope(||t||_inf)`` used for
    truncation; ``fourier_transform`` maps points of shape (..., d) to the
    transform values.
    """

    profile: Callable[[Array], Array]
    catalog_id: str = "custom"
    params: tuple = ()
    combine: str = "tensor"
    lnorm_p: float = 2.0
    support: float = math.inf
    envelope: Optional[Callable[[Array], Array]] = field(default=None, compare=False)
    fourier_transform: Optional[Callable[[Array], Array]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.combine not in ("tensor", "radial", "lnorm"):
            raise SpecError(f"unknown theta combination rule {self.combine!r}")

    @property
    def label(self) -> str:
        if not self.params:
            return self.catalog_id
        return f"{self.catalog_id}({','.join(f'{p:g}' for p in self.params)})"

    def profile_values(self, s) -> Array:
        s = np.abs(np.asarray(s, dtype=float))
        vals = np.asarray(self.profile(s), dtype=float)
        if math.isfinite(self.support):
            vals = np.where(s > self.support, 0.0, vals)
        return vals

    def __call__(self, t) -> Array:
        """Evaluate the d-variate theta at points of shape (..., d)."""
        t = np.asarray(t, dtype=float)
        if t.ndim == 0:
            return self.profile_values(t)
        if self.combine == "tensor":
            return np.prod(self.profile_values(t), axis=-1)
        if self.combine == "radial":
            return self.profile_values(np.sqrt(np.sum(t * t, axis=-1)))
        p = self.lnorm_p
        return self.profile_values(np.sum(np.abs(t) ** p, axis=-1) ** (1.0 / p))

    def envelope_values(self, s) -> Array:
        if self.envelope is None:
            raise SpecError(f"theta {self.label} has no decay envelope; tail bounds unavailable")
        return np.asarray(self.envelope(np.asarray(s, dtype=float)), dtype=float)

    def wiener_tail_bound(self, radius: int, d: int) -> float:
        """Upper bound for the W(C, l1) tail sum over cells with ``||k||_inf > radius``."""
        return _shell_tail(self, int(radius), int(d))


def _shell_count(m, d: int):
    m = np.asarray(m, dtype=float)
    return np.where(m == 0, 1.0, (2 * m + 1) ** d - (2 * m - 1) ** d)


def _shell_tail(theta: ThetaFunction, radius: int, d: int) -> float:
    # cells with ||k||_inf = m only contain points with ||t||_inf >= m - 1
    if math.isfinite(theta.support):
        last = int(math.floor(theta.support)) + 2
        if last <= radius:
            return 0.0
        m = np.arange(radius + 1, last + 1, dtype=float)
        return float(np.sum(_shell_count(m, d) * theta.envelope_values(m - 1.0)))
    m = np.arange(radius + 1, radius + 1 + _TAIL_DIRECT_TERMS, dtype=float)
    terms = _shell_count(m, d) * theta.envelope_values(m - 1.0)
    head = float(np.sum(terms))
    if terms[-1] == 0.0:
        return head
    end = float(m[-1])
    with warnings.catch_warnings():
        # slowly decaying envelopes trip quad's divergence heuristic; adding
        # the reported error keeps the result an upper bound
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        rest, err = integrate.quad(
            lambda x: float(_shell_count(x, d) * theta.envelope_values(x - 1.0)), end, math.inf, limit=200)
    return head + rest + err


def _compact_envelope(c: float):
    return lambda s: np.where(np.asarray(s) <= c, 1.0, 0.0)


def _product_transform(one_dim: Callable[[Array], Array]):
    def ft(x):
        x = np.asarray(x, dtype=float)
        return np.prod(one_dim(x), axis=-1)
    return ft


def _fejer_ft_1d(x):
    # (1/2pi) * (sin(x/2) / (x/2))^2
    x = np.asarray(x, dtype=float)
    return np.sinc(x / (2.0 * math.pi)) ** 2 / (2.0 * math.pi)


def riesz(alpha: float = 1.0, gamma_exp: float = 1.0, combine: str = "tensor") -> ThetaFunction:
    """(1 - |t|^gamma)_+^alpha; alpha = gamma = 1 is the Fejer function."""
    if alpha <= 0 or gamma_exp < 1:
        raise SpecError("riesz theta requires alpha > 0 and gamma >= 1")

    def prof(s):
        return np.clip(1.0 - np.abs(s) ** gamma_exp, 0.0, None) ** alpha

    ft = None
    if combine == "tensor" and alpha == 1 and gamma_exp == 1:
        ft = _product_transform(_fejer_ft_1d)
    elif combine == "radial" and gamma_exp == 2:
        def ft(x):
            x = np.asarray(x, dtype=float)
            d = x.shape[-1]
            r = np.sqrt(np.sum(x * x, axis=-1))
            out = np.empty(r.shape)
            flat_r = r.ravel()
            flat = out.ravel()
            for i, rv in enumerate(flat_r):
                if rv == 0.0:
                    # Beta-function value of the radial integral at the origin
                    flat[i] = ((2 * math.pi) ** (-d) * math.pi ** (d / 2) * gamma(alpha + 1)
                               / gamma(alpha + 1 + d / 2))
                else:
                    flat[i] = bochner_riesz_ft(alpha, d, rv)
            return flat.reshape(r.shape)
    cid = "fejer" if (alpha == 1 and gamma_exp == 1 and combine == "tensor") else "riesz"
    if combine == "radial":
        cid = "radial-riesz"
    return ThetaFunction(prof, cid, (alpha, gamma_exp), combine, 2.0, 1.0, _compact_envelope(1.0), ft)


def fejer() -> ThetaFunction:
    return riesz(1.0, 1.0)


def de_la_vallee_poussin() -> ThetaFunction:
    def prof(s):
        s = np.abs(s)
        return np.where(s <= 0.5, 1.0, np.clip(2.0 - 2.0 * s, 0.0, None))
    return ThetaFunction(prof, "de-la-vallee-poussin", (), "tensor", 2.0, 1.0, _compact_envelope(1.0))


def jackson_dlvp() -> ThetaFunction:
    def prof(s):
        s = np.abs(s)
        inner = 1.0 - 1.5 * s**2 + 0.75 * s**3
        outer = np.clip(2.0 - s, 0.0, None) ** 3 / 4.0
        return np.where(s <= 1.0, inner, outer)
    return ThetaFunction(prof, "jackson-dlvp", (), "tensor", 2.0, 2.0, _compact_envelope(2.0))


def piecewise_poly(knots, values) -> ThetaFunction:
    """Even, piecewise linear theta through (knots[j], values[j]), zero past the last knot."""
    knots = tuple(float(a) for a in knots)
    values = tuple(float(b) for b in values)
    if len(knots) != len(values) or len(knots) < 2:
        raise SpecError("piecewise theta needs matching knot and value lists")
    if knots[0] != 0.0 or values[0] != 1.0 or values[-1] != 0.0:
        raise SpecError("piecewise theta needs theta(0) = 1 and a zero final value")
    if any(b <= a for a, b in zip(knots, knots[1:])):
        raise SpecError("knots must be strictly increasing")
    top = max(abs(v) for v in values)

    def prof(s):
        return np.interp(np.abs(s), knots, values, right=0.0)
    return ThetaFunction(prof, "piecewise-poly", knots + values, "tensor", 2.0, knots[-1],
                         lambda s: np.where(np.asarray(s) <= knots[-1], top, 0.0))


def rogosinski(j: int = 0) -> ThetaFunction:
    c = 1.0 + 2.0 * int(j)

    def prof(s):
        return np.cos(0.5 * math.pi * np.abs(s))
    return ThetaFunction(prof, "rogosinski", (float(j),), "tensor", 2.0, c, _compact_envelope(c))


def weierstrass(gamma_exp: float = 1.0, combine: str = "tensor") -> ThetaFunction:
    """exp(-|t|^gamma); gamma = 1 gives the Abel means."""
    def prof(s):
        return np.exp(-np.abs(s) ** gamma_exp)

    ft = None
    if combine == "tensor" and gamma_exp == 1:
        ft = _product_transform(lambda x: 1.0 / (math.pi * (1.0 + x * x)))
    elif gamma_exp == 2:
        # separable Gaussian, same for radial and tensor combination
        ft = _product_transform(lambda x: np.exp(-x * x / 4.0) / (2.0 * math.sqrt(math.pi)))
    cid = "radial-weierstrass" if combine == "radial" else "weierstrass"
    return ThetaFunction(prof, cid, (gamma_exp,), combine, 2.0, math.inf,
                         lambda s: np.exp(-np.maximum(s, 0.0) ** gamma_exp), ft)


def exp_composite(q: float = 2.0, gamma_exp: float = 1.0, combine: str = "tensor") -> ThetaFunction:
    """exp(1 - (1 + |t|^q)^gamma), rescaled so that theta(0) = 1."""
    def prof(s):
        return np.exp(1.0 - (1.0 + np.abs(s) ** q) ** gamma_exp)
    return ThetaFunction(prof, "exp-composite", (q, gamma_exp), combine, q, math.inf,
                         lambda s: prof(np.maximum(s, 0.0)))


def picard_bessel(alpha: float = 1.0, gamma_exp: float = 2.0, combine: str = "tensor") -> ThetaFunction:
    """(1 + |t|^gamma)^-alpha."""
    def prof(s):
        return (1.0 + np.abs(s) ** gamma_exp) ** (-alpha)
    return ThetaFunction(prof, "picard-bessel", (alpha, gamma_exp), combine, gamma_exp, math.inf,
                         lambda s: prof(np.maximum(s, 0.0)))


def gaussian() -> ThetaFunction:
    """exp(-pi t^2), its own transform up to the (2 pi)^-1 normalisation."""
    def prof(s):
        return np.exp(-math.pi * s * s)
    ft = _product_transform(lambda x: np.exp(-x * x / (4.0 * math.pi)) / (2.0 * math.pi))
    return ThetaFunction(prof, "custom", (), "tensor", 2.0, math.inf,
                         lambda s: np.exp(-math.pi * np.maximum(s, 0.0) ** 2), ft)


_CATALOG = {
    "fejer": lambda: fejer(),
    "riesz": lambda alpha=1.0, gamma=1.0: riesz(alpha, gamma),
    "de-la-vallee-poussin": lambda: de_la_vallee_poussin(),
    "jackson-dlvp": lambda: jackson_dlvp(),
    "rogosinski": lambda j=0: rogosinski(int(j)),
    "weierstrass": lambda gamma=1.0: weierstrass(gamma),
    "exp-composite": lambda q=2.0, gamma=1.0: exp_composite(q, gamma),
    "picard-bessel": lambda alpha=1.0, gamma=2.0: picard_bessel(alpha, gamma),
    "radial-riesz": lambda alpha=1.0, gamma=2.0: riesz(alpha, gamma, combine="radial"),
    "radial-weierstrass": lambda gamma=2.0: weierstrass(gamma, combine="radial"),
    "gaussian": lambda: gaussian(),
}


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def from_catalog(name: str, **params) -> ThetaFunction:
    """Build a catalog theta by name, e.g. ``from_catalog("weierstrass", gamma=2)``."""
    try:
        factory = _CATALOG[name]
    except KeyError:
        raise SpecError(f"unknown theta catalog id {name!r}; choose from {catalog_names()}") from None
    return factory(**params)
