"""Shifted Legendre polynomials on [0, 1].

The basis is the orthonormal family ``Pbar_n(x) = sqrt(2n+1) * P_n(2x - 1)``.
Everything here works on numpy arrays; scalars go in and come out as 0-d
results converted to ``float``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

DOMAIN_TOL = 1e-12


@lru_cache(maxsize=64)
def gauss_legendre(order):
    """Gauss-Legendre nodes and weights on [-1, 1] (cached, read-only)."""
    if order < 1:
        raise ValueError(f"quadrature order must be positive, got {order}")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_on_interval(order, a, b):
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    nodes, weights = gauss_legendre(order)
    half = 0.5 * (b - a)
    return a + half * (nodes + 1.0), half * weights


def composite_gauss(order, breaks=(), a=0.0, b=1.0):
    """Gauss rule on [a, b] split at interior `breaks`.

    Piecewise-smooth integrands converge spectrally only when every
    discontinuity sits on a panel edge.
    """
    edges = [a] + sorted(float(p) for p in breaks if a < p < b) + [b]
    xs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_on_interval(order, lo, hi)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def _check_unit_interval(x):
    x = np.asarray(x, dtype=float)
    if x.size and (np.any(x < -DOMAIN_TOL) or np.any(x > 1.0 + DOMAIN_TOL)):
        bad = x[(x < -DOMAIN_TOL) | (x > 1.0 + DOMAIN_TOL)].ravel()[0]
        raise DomainError(f"x={bad!r} lies outside [0, 1]")
    return np.clip(x, 0.0, 1.0)


def _as_output(values, like):
    return float(values) if np.ndim(like) == 0 else values


def shifted_legendre(n, x):
    """Evaluate ``Pbar_n(x) = sqrt(2n+1) P_n(2x-1)``.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    x : float or array_like
        Points in [0, 1].

    Returns
    -------
    float or ndarray
        Same shape as `x`.

    Raises
    ------
    DomainError
        If `n` is negative or any `x` lies outside [0, 1] by more than 1e-12.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    y = 2.0 * _check_unit_interval(x) - 1.0
    p_prev = np.ones_like(y)
    if n == 0:
        return _as_output(p_prev, x)
    p = y.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * y * p - k * p_prev) / (k + 1)
    return _as_output(np.sqrt(2 * n + 1) * p, x)


def shifted_legendre_basis(n_max, x):
    """All of ``Pbar_0 .. Pbar_{n_max}`` at `x`, shape ``(n_max + 1, *x.shape)``."""
    y = 2.0 * _check_unit_interval(x) - 1.0
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = y
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + 1) * y * out[k] - k * out[k - 1]) / (k + 1)
    scale = np.sqrt(2.0 * np.arange(n_max + 1) + 1.0)
    return out * scale.reshape((-1,) + (1,) * y.ndim)


@dataclass(frozen=True)
class LegendreExpansion:
    """Finite expansion ``sum_n coeffs[n] * Pbar_n(x)``.

    `imag_residual` records the largest imaginary part thrown away when the
    coefficients were read off a complex spectrum; it is 0 otherwise.
    """

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    imag_residual: float = 0.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("expansion coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "imag_residual", float(self.imag_residual))

    @property
    def n_max(self):
        """Highest degree, or None for the empty expansion."""
        return len(self.coeffs) - 1 if len(self.coeffs) else None

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, x):
        return eval_expansion(self, x)


def eval_expansion(exp, x):
    """Evaluate a `LegendreExpansion` at `x`.

    The sum is accumulated while running the three-term recurrence upwards.
    The forward Legendre recurrence is stable on [-1, 1], whereas Clenshaw's
    backward sweep loses a few digits near the endpoints at high degree
    (about 2e-10 absolute at N = 512, x = 1).
    """
    x_checked = _check_unit_interval(x)
    coeffs = exp.coeffs if isinstance(exp, LegendreExpansion) else np.asarray(exp, float)
    if len(coeffs) == 0:
        return _as_output(np.zeros_like(x_checked), x)
    y = 2.0 * x_checked - 1.0
    a = coeffs * np.sqrt(2.0 * np.arange(len(coeffs)) + 1.0)
    p_prev, p = np.zeros_like(y), np.ones_like(y)
    total = a[0] * p
    for k in range(1, len(a)):
        p_prev, p = p, ((2 * k - 1) * y * p - (k - 1) * p_prev) / k
        total = total + a[k] * p
    return _as_output(total, x)


def project(f, n_max, quad_order=None, breaks=()):
    """Legendre coefficients ``c_n = int_0^1 f(x) Pbar_n(x) dx`` for n <= n_max.

    Parameters
    ----------
    f : callable
        Vectorized function on [0, 1].
    n_max : int
        Highest degree to compute.
    quad_order : int, optional
        Gauss points per panel; defaults to ``max(2 * n_max + 16, 64)``.
    breaks : sequence of float, optional
        Points where `f` is not smooth. Each one starts a new quadrature panel.

    Returns
    -------
    LegendreExpansion
    """
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    if quad_order is None:
        quad_order = max(2 * n_max + 16, 64)
    x, w = composite_gauss(quad_order, breaks)
    fx = np.asarray(f(x), dtype=float) * np.ones_like(x)
    basis = shifted_legendre_basis(n_max, x)
    return LegendreExpansion(basis @ (w * fx))
