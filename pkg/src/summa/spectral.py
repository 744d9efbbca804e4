"""Grid functions, their spectra, partial sums and summability means.

Grid points are ``x_j = -pi + 2 pi j / G`` in each coordinate.  Spectra
are stored in signed order: array index ``i`` holds frequency
``i - G/2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError, SpecError
from .kernels import KernelSpec, grid_axis, multiplier

Array = np.ndarray


def check_grid_size(G: int) -> int:
    G = int(G)
    if G < 4 or G & (G - 1):
        raise ResolutionError(f"grid size must be a power of two >= 4, got {G}")
    return G


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on the uniform G^d grid of the torus."""

    samples: Array

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim < 1 or len(set(s.shape)) != 1:
            raise DomainError(f"samples must be a G x ... x G array, got shape {s.shape}")
        check_grid_size(s.shape[0])
        if not np.all(np.isfinite(s)):
            raise DomainError("samples must be finite")
        object.__setattr__(self, "samples", s)

    @property
    def d(self) -> int:
        return self.samples.ndim

    @property
    def G(self) -> int:
        return self.samples.shape[0]

    @property
    def cell_measure(self) -> float:
        return (2.0 * math.pi / self.G) ** self.d

    @classmethod
    def from_callable(cls, f, G: int, d: int) -> "GridFunction":
        """Sample ``f`` (taking points of shape (..., d)) on the grid."""
        return cls(np.asarray(f(grid_points(G, d))))

    def real(self) -> "GridFunction":
        return GridFunction(np.real(self.samples))


@dataclass(frozen=True)
class Spectrum:
    """Fourier coefficients indexed by -G/2 <= k_i < G/2 (signed order)."""

    coefficients: Array

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim < 1 or len(set(c.shape)) != 1:
            raise DomainError(f"coefficients must be a G x ... x G array, got shape {c.shape}")
        check_grid_size(c.shape[0])
        object.__setattr__(self, "coefficients", c)

    @property
    def d(self) -> int:
        return self.coefficients.ndim

    @property
    def G(self) -> int:
        return self.coefficients.shape[0]

    def frequencies(self) -> Array:
        """Integer frequency vectors of shape (G, ..., G, d)."""
        return frequency_grid(self.G, self.d)

    def __getitem__(self, k) -> complex:
        k = np.atleast_1d(k)
        return complex(self.coefficients[tuple(int(v) + self.G // 2 for v in k)])

    @classmethod
    def from_dict(cls, coeffs: dict, G: int, d: int) -> "Spectrum":
        """Spectrum with the given {frequency tuple: value} entries."""
        c = np.zeros((G,) * d, dtype=complex)
        for k, v in coeffs.items():
            k = np.atleast_1d(k)
            if np.any(k < -(G // 2)) or np.any(k >= G // 2):
                raise ResolutionError(f"frequency {tuple(k)} outside the grid")
            c[tuple(int(a) + G // 2 for a in k)] += v
        return cls(c)


def grid_points(G: int, d: int) -> Array:
    """All grid points as an array of shape (G, ..., G, d)."""
    axis = grid_axis(G)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    return np.stack(mesh, axis=-1)


def frequency_grid(G: int, d: int) -> Array:
    k = np.arange(-G // 2, G // 2)
    mesh = np.meshgrid(*([k] * d), indexing="ij")
    return np.stack(mesh, axis=-1)


def _parity_sign(G: int, d: int) -> Array:
    # exp(-i k x_j) = (-1)^k exp(-2 pi i k j / G) since x_j = -pi + 2 pi j / G
    s = np.where(np.arange(-G // 2, G // 2) % 2 == 0, 1.0, -1.0)
    out = np.ones((G,) * d)
    for axis in range(d):
        shape = [1] * d
        shape[axis] = G
        out = out * s.reshape(shape)
    return out


def analyze(f: GridFunction) -> Spectrum:
    """Discrete Fourier coefficients (2 pi)^-d int f exp(-i k.x), normalised by 1/G^d."""
    if not isinstance(f, GridFunction):
        f = GridFunction(np.asarray(f))
    G, d = f.G, f.d
    c = np.fft.fftshift(np.fft.fftn(f.samples)) / G**d
    return Spectrum(c * _parity_sign(G, d))


def synthesize(c: Spectrum) -> GridFunction:
    """sum_k c(k) exp(i k.x) sampled on the grid."""
    if not isinstance(c, Spectrum):
        c = Spectrum(np.asarray(c))
    G, d = c.G, c.d
    shifted = np.fft.ifftshift(c.coefficients * _parity_sign(G, d))
    return GridFunction(np.fft.ifftn(shifted) * G**d)


def _region_spec(d: int, n, q=None) -> KernelSpec:
    if q is None or q == "rect":
        return KernelSpec(d, "dirichlet", tuple(np.atleast_1d(n)), region="rectangular")
    if q in ("inf", "infinity"):
        q = math.inf
    return KernelSpec(d, "dirichlet", int(n), q=q)


def _check_alias(spec: KernelSpec, G: int):
    limit = G // 2
    for nj in spec.n_vector:
        # frequencies up to nj are needed; n = G/2 only works when m vanishes there
        if nj > limit or (nj == limit and not spec.vanishes_on_boundary()):
            raise ResolutionError(
                f"n = {nj} aliases on a {G}-point grid; need n < G/2 = {limit}")


def apply_multiplier(c: Spectrum, spec: KernelSpec) -> Spectrum:
    """Multiply the coefficients by the method multiplier m(k)."""
    if spec.d != c.d:
        raise SpecError(f"spec dimension {spec.d} does not match spectrum dimension {c.d}")
    if spec.method != "theta":
        _check_alias(spec, c.G)
    elif math.isfinite(spec.theta.support) and spec.theta.support * max(spec.n_vector) > c.G // 2:
        raise ResolutionError(f"theta support reaches beyond the {c.G}-point grid")
    m = multiplier(spec, c.frequencies())
    return Spectrum(c.coefficients * m)


def partial_sum(c: Spectrum, n, q=None) -> GridFunction:
    """Partial sum over the l_q ball of radius n, or over a rectangle when q is None."""
    spec = _region_spec(c.d, n, q)
    return synthesize(apply_multiplier(c, spec))


def summability_mean(c: Spectrum, spec: KernelSpec) -> GridFunction:
    """The mean sum_k m(k) c(k) exp(i k.x) on the grid."""
    return synthesize(apply_multiplier(c, spec))


def conjugate_transform(c: Spectrum, kind) -> Spectrum:
    """Conjugate function of a spectrum.

    ``kind`` is ``("riesz", i)`` for the Riesz transform in coordinate i
    (multiplier -i k_i / |k|_2, zero at k = 0) or ``("product", j)`` with
    j a 0/1 vector (multiplier prod (-i sign k_i)^{j_i}).
    """
    name, arg = kind
    k = c.frequencies()
    if name == "riesz":
        i = int(arg)
        if not 0 <= i < c.d:
            raise SpecError(f"coordinate {i} out of range for d = {c.d}")
        norm = np.sqrt(np.sum(k.astype(float) ** 2, axis=-1))
        with np.errstate(divide="ignore", invalid="ignore"):
            m = np.where(norm > 0, -1j * k[..., i] / norm, 0.0)
        return Spectrum(c.coefficients * m)
    if name == "product":
        j = tuple(int(v) for v in np.atleast_1d(arg))
        if len(j) != c.d or any(v not in (0, 1) for v in j):
            raise SpecError(f"product conjugate needs a 0/1 vector of length {c.d}")
        m = np.ones(k.shape[:-1], dtype=complex)
        for axis, ji in enumerate(j):
            if ji:
                m = m * (-1j * np.sign(k[..., axis]))
        return Spectrum(c.coefficients * m)
    raise SpecError(f"unknown conjugate kind {name!r}")


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """Normalised convolution (2 pi)^-d int f(x - y) g(y) dy on the grid."""
    cf, cg = analyze(f), analyze(g)
    return synthesize(Spectrum(cf.coefficients * cg.coefficients))


def arithmetic_mean_of_partial_sums(c: Spectrum, n: int, q) -> GridFunction:
    """(1/n) sum_{j<n} s_j^q f, the Fejer mean as an average."""
    # s_0 f is the constant term
    acc = np.full((c.G,) * c.d, c[(0,) * c.d], dtype=complex)
    for j in range(1, n):
        acc = acc + partial_sum(c, j, q).samples
    return GridFunction(acc / n)


def l2_norm_squared(f: GridFunction) -> float:
    return float(np.sum(np.abs(f.samples) ** 2)) * f.cell_measure


def random_trig_polynomial(G: int, d: int, degree: int, seed: int = 0, real: bool = True) -> Spectrum:
    """Seeded random spectrum supported in ||k||_inf <= degree."""
    if degree >= G // 2:
        raise ResolutionError("degree must stay below G/2")
    rng = np.random.default_rng(seed)
    k = frequency_grid(G, d)
    inside = np.max(np.abs(k), axis=-1) <= degree
    c = np.zeros((G,) * d, dtype=complex)
    count = int(np.sum(inside))
    c[inside] = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    if real:
        # symmetrise so the synthesized function is real
        flipped = np.conj(np.flip(c, axis=tuple(range(d))))
        flipped = np.roll(flipped, shift=(1,) * d, axis=tuple(range(d)))
        c = 0.5 * (c + flipped)
    return Spectrum(c)
