"""Noise injection, SNR, error norms and the noise-propagation bound.

Random draws use ``numpy.random.default_rng(seed)`` (PCG64), whose stream for
a given seed is identical across platforms and numpy versions >= 1.17.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .legendre import composite_gauss, eval_expansion, gauss_on_interval


@dataclass(frozen=True)
class NoiseSpec:
    """Additive Gaussian noise with standard deviation `epsilon`."""

    epsilon: float
    seed: int = 0

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")


def add_noise(samples, spec):
    """Return `samples` with i.i.d. N(0, epsilon^2) added to every value.

    ``epsilon == 0`` hands back the input object untouched.
    """
    if spec.epsilon == 0:
        return samples
    rng = np.random.default_rng(spec.seed)
    nu = rng.standard_normal(samples.n_samples)
    return samples.with_values(samples.g_values + spec.epsilon * nu)


def snr_db(clean, noisy):
    """``10 log10(sum g_j^2 / sum (g_j - g_j^eps)^2)``; +inf without noise."""
    if clean.n_samples != noisy.n_samples or not np.array_equal(clean.t_nodes, noisy.t_nodes):
        raise ValueError("clean and noisy samples live on different grids")
    noise_power = float(np.sum((clean.g_values - noisy.g_values) ** 2))
    signal_power = float(np.sum(clean.g_values**2))
    if noise_power == 0.0:
        return math.inf
    return 10.0 * math.log10(signal_power / noise_power)


def l2mu_norm(h, quad_order=256):
    """Norm of `h` in L^2 with the weight ``1 / sqrt(x (1 - x))`` on (0, 1).

    With ``x = sin^2(u/2)`` the weighted integral becomes
    ``int_0^pi h(sin^2(u/2))^2 du`` and the endpoint singularity disappears.
    """
    u, w = gauss_on_interval(quad_order, 0.0, np.pi)
    s = np.sin(0.5 * u)
    vals = np.asarray(h(s * s), dtype=float) * np.ones_like(u)
    return math.sqrt(float(np.sum(w * vals * vals)))


def l2mu_norm_samples(samples):
    """Discrete weighted norm of sampled data on a uniform t-grid.

    Rectangle rule for ``(1/2) int_{-pi}^{pi} h(sin^2(t/2))^2 dt``: each x is
    visited once per branch, so the two branches are averaged.
    """
    if samples.grid_kind != "uniform":
        raise ValueError("l2mu_norm_samples needs a uniform grid")
    return math.sqrt(math.pi / samples.n_samples * float(np.sum(samples.g_values**2)))


def l2_error(f_true, exp, grid_size=256, breaks=()):
    """``||f_true - exp||_{L^2(0,1)}`` by Gauss quadrature.

    `grid_size` is the number of Gauss points per panel; pass the jump
    locations of `f_true` as `breaks` for discontinuous solutions.
    """
    x, w = composite_gauss(grid_size, breaks)
    diff = np.asarray(f_true(x), dtype=float) - eval_expansion(exp, x)
    return math.sqrt(float(np.sum(w * diff * diff)))


def sup_error(f_true, exp, x):
    """Largest pointwise error on the points `x` (0 for an empty grid)."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(np.asarray(f_true(x), dtype=float) - eval_expansion(exp, x))))


def pointwise_error_curve(f_true, exp, grid):
    """List of ``(x, |f(x) - f_N(x)|)`` over `grid`."""
    x = np.asarray(grid, dtype=float)
    if x.size == 0:
        return []
    err = np.abs(np.asarray(f_true(x), dtype=float) - eval_expansion(exp, x))
    return list(zip(x.tolist(), err.tolist()))


def normalized_perturbation(samples, direction, epsilon):
    """Data ``g + epsilon * nu`` with ``nu`` = `direction` scaled to unit weighted norm.

    The premise ``||g - g_eps||_mu <= epsilon`` of the noise-propagation bound
    then holds with equality in the discrete norm `l2mu_norm_samples`.
    """
    direction = np.asarray(direction, dtype=float)
    if direction.shape != samples.g_values.shape:
        raise ValueError("direction must have one entry per sample")
    peak = float(np.max(np.abs(direction))) if direction.size else 0.0
    if not peak > 0:
        raise ValueError("direction must be non-zero")
    direction = direction / peak  # guards the norm against under- and overflow
    norm = l2mu_norm_samples(samples.with_values(direction))
    return samples.with_values(samples.g_values + epsilon * direction / norm)


BOUND_SLACK = 1e-6


def check_noise_propagation(clean, noisy, epsilon, n):
    """Compare ``||f_N - f_N^eps||`` with ``(N + 1) epsilon / sqrt(pi)``.

    `clean` and `noisy` are coefficient families from exact and perturbed
    data; the left side uses orthonormality, ``sum (c_n - c_n^eps)^2``.
    """
    if clean.n_max is None or noisy.n_max is None or min(clean.n_max, noisy.n_max) < n:
        raise ValueError(f"both families must reach degree {n}")
    diff = clean.coeffs[: n + 1] - noisy.coeffs[: n + 1]
    lhs = math.sqrt(float(np.sum(diff * diff)))
    rhs = (n + 1) * epsilon / math.sqrt(math.pi)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs * (1.0 + BOUND_SLACK)}
