"""Legendre coefficients of the inverse Abel transform from data samples.

Data ``g`` are sampled along the auxiliary variable ``t`` in [-pi, pi) at
``x = sin^2(t/2)``. The 2pi-periodic function

    eta(t) = sgn(t) e^{i t/2} g(sin^2(t/2)) / (2 pi i)

has Fourier coefficients ``gamma_n = int eta(t) e^{int} dt`` and the Legendre
coefficients of ``f = A^{-1} g`` are ``c_n = (-1)^n sqrt(2n+1) gamma_n``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AliasingError
from .legendre import LegendreExpansion

GRID_KINDS = ("uniform", "arbitrary")
MIN_SAMPLES = 4


def uniform_t_grid(n_samples):
    """Nodes ``t_j = -pi + 2 pi j / n_samples``, j = 0 .. n_samples - 1.

    Written as ``pi (2j - n) / n`` so that mirrored nodes are exact negatives.
    """
    j = np.arange(n_samples, dtype=float)
    return np.pi * (2.0 * j - n_samples) / n_samples


def jittered_t_grid(n_samples, amplitude=0.25, seed=0):
    """Uniform grid with each node moved by up to `amplitude` grid steps.

    Nodes are wrapped back into [-pi, pi) and sorted.
    """
    h = 2.0 * np.pi / n_samples
    rng = np.random.default_rng(seed)
    t = uniform_t_grid(n_samples) + rng.uniform(-amplitude, amplitude, n_samples) * h
    return np.sort(np.mod(t + np.pi, 2.0 * np.pi) - np.pi)


def x_of_t(t):
    s = np.sin(0.5 * np.asarray(t, dtype=float))
    return s * s


@dataclass(frozen=True)
class SampleSet:
    """Samples ``g(x_j)`` with ``x_j = sin^2(t_j / 2)``.

    Attributes
    ----------
    t_nodes : ndarray
        Strictly increasing nodes in [-pi, pi).
    g_values : ndarray
        Data at the nodes.
    grid_kind : {"uniform", "arbitrary"}
        Uniform grids are exactly ``uniform_t_grid(len(t_nodes))``.
    """

    t_nodes: np.ndarray
    g_values: np.ndarray
    grid_kind: str = "uniform"

    def __post_init__(self):
        t = np.array(self.t_nodes, dtype=float).ravel()
        g = np.array(self.g_values, dtype=float).ravel()
        if t.shape != g.shape:
            raise ValueError(f"t_nodes has {t.size} entries but g_values has {g.size}")
        if t.size < MIN_SAMPLES:
            raise ValueError(f"need at least {MIN_SAMPLES} samples, got {t.size}")
        if self.grid_kind not in GRID_KINDS:
            raise ValueError(f"grid_kind must be one of {GRID_KINDS}, got {self.grid_kind!r}")
        if np.any(np.diff(t) <= 0):
            raise ValueError("t_nodes must be strictly increasing")
        if t[0] < -np.pi or t[-1] >= np.pi:
            raise ValueError("t_nodes must lie in [-pi, pi)")
        if self.grid_kind == "uniform" and not np.allclose(t, uniform_t_grid(t.size), rtol=0, atol=1e-12):
            raise ValueError("uniform grid does not match t_j = -pi + 2 pi j / N_s")
        for arr in (t, g):
            arr.setflags(write=False)
        object.__setattr__(self, "t_nodes", t)
        object.__setattr__(self, "g_values", g)

    @property
    def n_samples(self):
        return self.t_nodes.size

    @property
    def x_nodes(self):
        return x_of_t(self.t_nodes)

    def with_values(self, g_values):
        return SampleSet(self.t_nodes, g_values, self.grid_kind)


def sample_function(g, n_samples=None, t_nodes=None):
    """Sample a vectorized `g` on a uniform grid, or on given `t_nodes`."""
    if t_nodes is None:
        if n_samples is None:
            raise ValueError("give n_samples or t_nodes")
        t = uniform_t_grid(n_samples)
        kind = "uniform"
    else:
        t = np.asarray(t_nodes, dtype=float)
        kind = "arbitrary"
    return SampleSet(t, np.asarray(g(x_of_t(t)), dtype=float) * np.ones_like(t), kind)


@dataclass(frozen=True)
class EtaGrid:
    """Values of the auxiliary function at the sample nodes."""

    t_nodes: np.ndarray
    eta_values: np.ndarray
    grid_kind: str = "uniform"

    @property
    def n_samples(self):
        return self.t_nodes.size


def eta_from_samples(samples):
    """Build ``eta(t_j) = sgn(t_j) e^{i t_j/2} g_j / (2 pi i)``; sgn(0) = 0."""
    t = samples.t_nodes
    eta = np.sign(t) * np.exp(0.5j * t) * samples.g_values / (2j * np.pi)
    return EtaGrid(t, eta, samples.grid_kind)


@dataclass(frozen=True)
class AuxSpectrum:
    """Fourier coefficients ``gamma_n`` for n in [-n_max - 1, n_max]."""

    n_max: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (2 * self.n_max + 2,):
            raise ValueError("values must hold indices -n_max-1 .. n_max")
        object.__setattr__(self, "values", v)

    @property
    def indices(self):
        return np.arange(-self.n_max - 1, self.n_max + 1)

    def __getitem__(self, n):
        if not -self.n_max - 1 <= n <= self.n_max:
            raise KeyError(f"index {n} not stored (range {-self.n_max - 1} .. {self.n_max})")
        return self.values[n + self.n_max + 1]

    def nonnegative(self):
        """gamma_0 .. gamma_{n_max}."""
        return self.values[self.n_max + 1 :]

    def symmetry_residual(self):
        """``max_n |gamma_n + gamma_{-n-1}|`` over the stored range."""
        pos = self.nonnegative()
        neg = self.values[: self.n_max + 1][::-1]
        return float(np.max(np.abs(pos + neg)))


def max_resolved_degree(n_samples):
    """Largest n_max for which indices -n_max-1 .. n_max occupy distinct FFT bins."""
    return n_samples // 2 - 1


def fourier_coeffs(eta, n_max, allow_aliasing=False):
    """Rectangle-rule Fourier coefficients on a uniform grid via one FFT.

    ``gamma_n = (2 pi / N_s) sum_j eta_j e^{i n t_j}``. With
    ``t_j = -pi + 2 pi j / N_s`` this is ``2 pi (-1)^n ifft(eta)[n mod N_s]``,
    so negative indices come from the wrap-around bins of the same transform.

    Raises
    ------
    AliasingError
        If ``n_max > N_s/2 - 1``. With ``allow_aliasing=True`` up to
        ``n_max = N_s/2`` is accepted with a warning; the top coefficient then
        shares its bin with index ``-n_max``.
    """
    if eta.grid_kind != "uniform":
        raise ValueError("fourier_coeffs needs a uniform grid; use fourier_coeffs_nonuniform")
    n_s = eta.n_samples
    limit = max_resolved_degree(n_s)
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    if n_max > limit:
        if not allow_aliasing or n_max > n_s // 2:
            raise AliasingError(f"n_max={n_max} exceeds N_s/2 - 1 = {limit} for N_s={n_s}")
        warnings.warn(f"n_max={n_max} aliases with negative frequencies at N_s={n_s}", stacklevel=2)
    spectrum = np.fft.ifft(eta.eta_values)
    n = np.arange(-n_max - 1, n_max + 1)
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    return AuxSpectrum(n_max, 2.0 * np.pi * sign * spectrum[n % n_s])


def trapezoid_weights_periodic(t):
    """Trapezoid weights on a periodic grid, closing the last gap across 2 pi."""
    gaps = np.diff(np.concatenate([t, [t[0] + 2.0 * np.pi]]))
    return 0.5 * (gaps + np.roll(gaps, 1))


def fourier_coeffs_nonuniform(eta, n_max):
    """Fourier coefficients from arbitrary nodes by a direct trapezoid sum.

    Cost is O(N_s * n_max). On a uniform grid this equals `fourier_coeffs`
    up to roundoff.
    """
    n_s = eta.n_samples
    if n_s < 4 * (n_max + 1):
        raise AliasingError(f"{n_s} nodes cannot resolve n_max={n_max}; need {4 * (n_max + 1)}")
    t = eta.t_nodes
    w = trapezoid_weights_periodic(t)
    n = np.arange(-n_max - 1, n_max + 1)
    kernel = np.exp(1j * np.outer(n, t))
    return AuxSpectrum(n_max, kernel @ (w * eta.eta_values))


def coeffs_from_spectrum(spec, n_max):
    """``c_n = Re[(-1)^n sqrt(2n+1) gamma_n]`` for n = 0 .. n_max.

    The largest discarded imaginary part is kept as ``imag_residual``.
    """
    if n_max > spec.n_max:
        raise KeyError(f"spectrum holds n <= {spec.n_max}, asked for {n_max}")
    n = np.arange(n_max + 1)
    c = np.where(n % 2 == 0, 1.0, -1.0) * np.sqrt(2.0 * n + 1.0) * spec.nonnegative()[: n_max + 1]
    imag = float(np.max(np.abs(c.imag))) if c.size else 0.0
    return LegendreExpansion(c.real, imag_residual=imag)


def legendre_coeffs(samples, n_max=None, allow_aliasing=False):
    """Step 1 of the inversion: data samples to Legendre coefficients.

    Returns the expansion together with the auxiliary spectrum it came from.
    Uniform grids go through the FFT, arbitrary grids through the direct sum.
    """
    eta = eta_from_samples(samples)
    if samples.grid_kind == "uniform":
        if n_max is None:
            n_max = max_resolved_degree(samples.n_samples)
        spec = fourier_coeffs(eta, n_max, allow_aliasing=allow_aliasing)
    else:
        if n_max is None:
            n_max = samples.n_samples // 4 - 1
        spec = fourier_coeffs_nonuniform(eta, n_max)
    return coeffs_from_spectrum(spec, n_max), spec
