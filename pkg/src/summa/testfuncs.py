"""Built-in test functions with exact Fourier coefficients and point values."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import special as sp

from .errors import SpecError
from .spectral import Spectrum, frequency_grid, grid_points

Array = np.ndarray


@dataclass(frozen=True)
class TestFunction:
    """A function on T^d given by per-coordinate factors.

    ``coef_1d(k)`` and ``value_1d(x)`` describe one factor; the d-variate
    function is their tensor product.  ``singular_1d`` lists the points
    where the factor is not smooth and ``midpoint_1d`` gives the value the
    Fourier series converges to there.
    """

    name: str
    d: int
    coef_1d: Callable[[Array], Array]
    value_1d: Callable[[Array], Array]
    singular_1d: tuple = ()
    midpoint_1d: Optional[Callable[[Array], Array]] = None
    continuous: bool = True

    __test__ = False  # keep pytest from collecting this class

    def coefficients(self, k) -> Array:
        k = np.asarray(k)
        out = np.ones(k.shape[:-1], dtype=complex)
        for j in range(self.d):
            out = out * self.coef_1d(k[..., j])
        return out

    def values(self, x) -> Array:
        x = np.asarray(x, dtype=float)
        out = np.ones(x.shape[:-1])
        for j in range(self.d):
            out = out * self.value_1d(x[..., j])
        return out

    def spectrum(self, G: int) -> Spectrum:
        return Spectrum(self.coefficients(frequency_grid(G, self.d)))

    def grid_values(self, G: int) -> Array:
        return self.values(grid_points(G, self.d))

    def distance_to_singular(self, x) -> Array:
        """Smallest per-coordinate periodic distance of the periodic distance to a singular point."""
        x = np.asarray(x, dtype=float)
        if not self.singular_1d:
            return np.full(x.shape[:-1], math.inf)
        best = np.full(x.shape[:-1], math.inf)
        for s in self.singular_1d:
            dist = np.abs(np.angle(np.exp(1j * (x - s))))
            best = np.minimum(best, np.min(dist, axis=-1))
        return best


def _jump_coef(k):
    k = np.asarray(k)
    out = np.zeros(k.shape, dtype=complex)
    nz = k != 0
    out[nz] = (1.0 - (-1.0) ** k[nz]) / (2j * math.pi * k[nz])
    out[~nz] = 0.5
    return out


def _corner_coef(k):
    k = np.asarray(k)
    out = np.zeros(k.shape, dtype=complex)
    nz = k != 0
    kk = k[nz].astype(float)
    out[nz] = ((-1.0) ** k[nz] - 1.0) / (math.pi * kk * kk)
    out[~nz] = math.pi / 2
    return out


def _trig_coef(k):
    k = np.abs(np.asarray(k))
    return np.where(k <= 4, 2.0 ** (-k.astype(float)), 0.0).astype(complex)


def _trig_value(x):
    return sum((2.0 ** -k) * (2.0 * np.cos(k * x) if k else 1.0) for k in range(5))


def bump(d: int, a: float = 1.0, normalized: bool = True) -> TestFunction:
    """prod_j exp(a cos x_j), divided by exp(a d) when ``normalized`` so the sup is 1.

    The coefficients are modified Bessel values I_k(a).
    """
    s = math.exp(-a) if normalized else 1.0
    return TestFunction(
        "bump", d,
        lambda k: (s * sp.iv(np.abs(np.asarray(k)), a)).astype(complex),
        lambda x: s * np.exp(a * np.cos(x)))


def jump(d: int) -> TestFunction:
    """prod_j 1_[0, pi)(x_j), with jumps at 0 and -pi."""
    return TestFunction(
        "jump", d, _jump_coef,
        lambda x: np.where((x >= 0) & (x < math.pi), 1.0, 0.0),
        (0.0, -math.pi), lambda x: np.full(np.shape(x), 0.5), continuous=False)


def corner(d: int) -> TestFunction:
    """prod_j |x_j| on [-pi, pi)^d, Lipschitz with corners at 0 and -pi."""
    return TestFunction("corner", d, _corner_coef, lambda x: np.abs(x), (0.0, -math.pi))


def trig(d: int) -> TestFunction:
    """Cosine polynomial with coefficients 2^-|k_j| for |k_j| <= 4."""
    return TestFunction("trig", d, _trig_coef, _trig_value)


def constant(d: int) -> TestFunction:
    return TestFunction(
        "constant", d,
        lambda k: np.where(np.asarray(k) == 0, 1.0, 0.0).astype(complex),
        lambda x: np.ones(np.shape(x)))


_FACTORIES = {"bump": bump, "jump": jump, "corner": corner, "trig": trig, "constant": constant}


def test_function(name: str, d: int, **kw) -> TestFunction:
    try:
        return _FACTORIES[name](d, **kw)
    except KeyError:
        raise SpecError(f"unknown test function {name!r}; choose from {sorted(_FACTORIES)}") from None


test_function.__test__ = False


def names() -> list[str]:
    return sorted(_FACTORIES)
