"""Forward Abel operator and the catalog of analytic Abel pairs.

The operator is ``(Af)(x) = int_0^x f(y) / sqrt(x - y) dy`` on [0, 1].
Substituting ``y = x sin^2(theta)`` gives

    (Af)(x) = 2 sqrt(x) int_0^{pi/2} f(x sin^2 theta) sin(theta) dtheta,

whose integrand is as smooth as `f`, so plain Gauss-Legendre in theta works.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .legendre import DOMAIN_TOL, LegendreExpansion, eval_expansion, gauss_legendre, shifted_legendre_basis

DEFAULT_QUAD_ORDER = 64


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if x.size and (np.any(x < -DOMAIN_TOL) or np.any(x > 1.0 + DOMAIN_TOL)):
        raise DomainError("Abel transform is defined for x in [0, 1]")
    return np.clip(x, 0.0, 1.0)


def _theta_panels(x, breaks):
    """Panel edges in theta, one row per x; shape (len(x), len(breaks) + 2).

    A break b < x maps to theta = arcsin(sqrt(b / x)); breaks at or beyond x
    collapse onto pi/2 and give empty panels.
    """
    edges = [np.zeros_like(x)]
    safe_x = np.where(x > 0, x, 1.0)
    for b in sorted(breaks):
        ratio = np.where(x > b, b / safe_x, 1.0)
        edges.append(np.arcsin(np.sqrt(np.clip(ratio, 0.0, 1.0))))
    edges.append(np.full_like(x, 0.5 * np.pi))
    return np.stack(edges, axis=-1)


def forward_abel(f, x, quad_order=DEFAULT_QUAD_ORDER, breaks=()):
    """Abel transform of `f` at the points `x`.

    Parameters
    ----------
    f : callable
        Vectorized function on [0, 1]; it is called with 2-d arrays.
    x : float or array_like
        Evaluation points in [0, 1].
    quad_order : int
        Gauss points per theta panel.
    breaks : sequence of float
        Interior points where `f` jumps or kinks. Passing them keeps the
        quadrature spectrally accurate for piecewise-smooth `f`.

    Returns
    -------
    float or ndarray
        ``(Af)(x)``; exactly 0 where ``x == 0``.
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(_check_x(x))
    nodes, weights = gauss_legendre(quad_order)
    panels = _theta_panels(xs, [b for b in breaks if 0.0 < b < 1.0])
    total = np.zeros_like(xs)
    for p in range(panels.shape[1] - 1):
        lo = panels[:, p : p + 1]
        half = 0.5 * (panels[:, p + 1 : p + 2] - lo)
        theta = lo + half * (nodes + 1.0)
        s = np.sin(theta)
        vals = np.asarray(f(xs[:, None] * s * s), dtype=float)
        total += np.sum(half * weights * vals * s, axis=1)
    out = 2.0 * np.sqrt(xs) * total
    out[xs == 0.0] = 0.0
    return float(out[0]) if scalar else out


def forward_expansion(exp, x, quad_order=DEFAULT_QUAD_ORDER):
    """Abel transform of the function represented by a `LegendreExpansion`."""
    if len(exp) == 0:
        xs = _check_x(x)
        return 0.0 if np.ndim(x) == 0 else np.zeros_like(xs)
    return forward_abel(lambda y: eval_expansion(exp, y), x, quad_order)


def forward_basis(n_max, x, quad_order=None):
    """Matrix of ``(A Pbar_n)(x_j)``, shape ``(n_max + 1, len(x))``.

    The integrand in theta is a trigonometric polynomial of degree 2n + 1,
    so the default order grows with `n_max` to keep it resolved.
    """
    if quad_order is None:
        quad_order = max(DEFAULT_QUAD_ORDER, n_max + 48)
    xs = np.atleast_1d(_check_x(x))
    nodes, weights = gauss_legendre(quad_order)
    theta = 0.25 * np.pi * (nodes + 1.0)
    s = np.sin(theta)
    y = xs[:, None] * s * s
    basis = shifted_legendre_basis(n_max, y)
    out = 2.0 * np.sqrt(xs) * np.einsum("nxq,q->nx", basis, 0.25 * np.pi * weights * s)
    out[:, xs == 0.0] = 0.0
    return out


@dataclass(frozen=True)
class AbelPair:
    """An analytic solution `f` with its closed-form Abel transform `g`."""

    id: str
    f: object
    g: object
    smoothness_note: str
    jump_locations: tuple = ()
    breaks: tuple = ()


def _f_poly(x):
    return 5.0 * x**2 - 4.0 * x


def _g_poly(x):
    return 16.0 / 3.0 * (x**2.5 - x**1.5)


SPLINE_BREAK = 0.75


def _f_spline(x):
    x = np.asarray(x, dtype=float)
    inner = 2.0 * (2.0 - 2.0 * np.sqrt(np.clip(1.0 - x, 0.0, None)) - x)
    return np.where(x < SPLINE_BREAK, inner, 2.0 * x - 1.0)


def _g_spline(x):
    x = np.asarray(x, dtype=float)
    rx = np.sqrt(x)
    common = 4.0 / 3.0 * (3.0 - 2.0 * x) * rx
    one_m = 1.0 - x
    with np.errstate(divide="ignore", invalid="ignore"):
        # (1 - x) log(.) -> 0 as x -> 1
        low = common - 4.0 * np.where(
            one_m > 0, one_m * np.log((1.0 + rx) / np.sqrt(np.clip(one_m, 0.0, None))), 0.0
        )
        r4 = np.sqrt(np.clip(4.0 * x - 3.0, 0.0, None))
        high = common - (9.0 - 8.0 * x) / 3.0 * r4 - 4.0 * one_m * np.log((2.0 + 2.0 * rx) / (1.0 + r4))
    return np.where(x < SPLINE_BREAK, low, high)


STEP_BREAKS = (0.2, 0.5, 0.7)


def _f_step(x):
    x = np.asarray(x, dtype=float)
    return np.select([x < 0.2, x < 0.5, x < 0.7], [np.zeros_like(x), 2.0 - x, x], 1.5)


def _g_step(x):
    x = np.asarray(x, dtype=float)
    d1 = np.clip(x - 0.2, 0.0, None)
    d2 = np.clip(x - 0.5, 0.0, None)
    d3 = np.clip(x - 0.7, 0.0, None)
    ga = 2.0 / 3.0 * d1**1.5 - (2.0 * x - 4.0) * np.sqrt(d1)
    gb = ga - 4.0 / 3.0 * d2**1.5 + (4.0 * x - 4.0) * np.sqrt(d2)
    gc = gb + 2.0 / 3.0 * d3**1.5 - (2.0 * x - 3.0) * np.sqrt(d3)
    return np.select([x < 0.2, x < 0.5, x < 0.7], [np.zeros_like(x), ga, gb], gc)


PAIRS = {
    "poly": AbelPair("poly", _f_poly, _g_poly, "analytic"),
    "spline": AbelPair(
        "spline", _f_spline, _g_spline, "continuous, not analytic", (), (SPLINE_BREAK,)
    ),
    "step": AbelPair("step", _f_step, _g_step, "discontinuous", STEP_BREAKS, STEP_BREAKS),
}


def get_pair(pair_id):
    try:
        return PAIRS[pair_id]
    except KeyError:
        raise KeyError(f"unknown Abel pair {pair_id!r}; choose from {sorted(PAIRS)}") from None


def pair_eval(pair_id, which, x):
    """Evaluate the solution or the transform of a catalog pair.

    `which` is ``"solution"`` or ``"transform"``. Branches are selected on
    half-open intervals, so a shared endpoint belongs to the later branch.
    """
    pair = get_pair(pair_id)
    if which == "solution":
        fn = pair.f
    elif which == "transform":
        fn = pair.g
    else:
        raise ValueError(f"which must be 'solution' or 'transform', got {which!r}")
    xs = _check_x(x)
    out = np.asarray(fn(xs), dtype=float)
    return float(out) if np.ndim(x) == 0 else out
