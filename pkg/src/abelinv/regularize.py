"""Spectral cut-off regularization and choice of the truncation index."""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .abel import DEFAULT_QUAD_ORDER, forward_basis, forward_expansion
from .legendre import LegendreExpansion
from .spectral import legendre_coeffs, max_resolved_degree

LOGGER = logging.getLogger(__name__)

DEFAULT_TAU = 1.5
SELECTION_RULES = ("morozov", "min_discrepancy", "a_priori", "fixed")


@dataclass
class InversionReport:
    """Outcome of an inversion run.

    `discrepancy_curve` holds ``(N, ||A f_N - g||)`` pairs for every N that
    was scanned; it is empty for rules that never compute it.
    """

    chosen_n: int
    selection_rule: str
    epsilon: float = 0.0
    tau: float = DEFAULT_TAU
    discrepancy_curve: list = field(default_factory=list)
    snr_db: float | None = None
    imag_residual: float = 0.0

    def __post_init__(self):
        if self.selection_rule not in SELECTION_RULES:
            raise ValueError(f"unknown selection rule {self.selection_rule!r}")

    @property
    def discrepancy(self):
        for n, d in self.discrepancy_curve:
            if n == self.chosen_n:
                return d
        return None

    def to_dict(self):
        out = asdict(self)
        out["discrepancy_curve"] = [[int(n), float(d)] for n, d in self.discrepancy_curve]
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["discrepancy_curve"] = [(int(n), float(d)) for n, d in data.get("discrepancy_curve", [])]
        return cls(**data)


def truncate(exp, n):
    """Keep coefficients 0 .. n of `exp`."""
    if exp.n_max is None or not 0 <= n <= exp.n_max:
        raise ValueError(f"truncation index {n} outside 0 .. {exp.n_max}")
    return LegendreExpansion(exp.coeffs[: n + 1], imag_residual=exp.imag_residual)


def _branch_trapezoid(x, members):
    idx = np.flatnonzero(members)
    w = np.zeros(x.size)
    if idx.size < 2:
        return None
    order = idx[np.argsort(x[idx], kind="stable")]
    xs = x[order]
    gaps = np.diff(xs)
    w[order[:-1]] += 0.5 * gaps
    w[order[1:]] += 0.5 * gaps
    return w


def x_trapezoid_weights(samples):
    """Weights ``w_j`` with ``sum_j w_j h(x_j) ~ int_0^1 h(x) dx``.

    Each x in (0, 1) is hit twice, by t and -t, carrying independent
    measurements. The trapezoid rule is applied separately along each branch
    (t >= 0 and t <= 0; t = -pi closes the upper branch at x = 1) and the
    two estimates are averaged.
    """
    t = samples.t_nodes
    x = samples.x_nodes
    upper = _branch_trapezoid(x, (t >= 0) | (t == -np.pi))
    lower = _branch_trapezoid(x, t <= 0)
    branches = [w for w in (upper, lower) if w is not None]
    if not branches:
        raise ValueError("need at least two samples on one branch to form x weights")
    return sum(branches) / len(branches)


def _weighted_norm(residual, weights):
    return math.sqrt(max(float(np.sum(weights * residual * residual)), 0.0))


def _forward_order(n_max, quad_order):
    return quad_order if quad_order is not None else max(DEFAULT_QUAD_ORDER, n_max + 48)


def discrepancy(exp, data, quad_order=None):
    """``||A f_N - g||_{L^2(0,1)}`` on the data abscissae.

    The forward transform is evaluated at each ``x_j`` and the norm is taken
    with `x_trapezoid_weights`.
    """
    x = data.x_nodes
    order = _forward_order(exp.n_max or 0, quad_order)
    residual = forward_expansion(exp, x, order) - data.g_values
    return _weighted_norm(residual, x_trapezoid_weights(data))


def discrepancy_curve(family, data, n_cap=None, quad_order=None):
    """Discrepancy for every truncation N = 0 .. n_cap.

    Built incrementally: ``A f_{N+1} = A f_N + c_{N+1} A Pbar_{N+1}``, with
    the basis transforms computed once.
    """
    if n_cap is None:
        n_cap = family.n_max
    if family.n_max is None or not 0 <= n_cap <= family.n_max:
        raise ValueError(f"n_cap={n_cap} outside 0 .. {family.n_max}")
    x = data.x_nodes
    weights = x_trapezoid_weights(data)
    basis = forward_basis(n_cap, x, _forward_order(n_cap, quad_order))
    forward = np.zeros_like(x)
    curve = np.empty(n_cap + 1)
    for n in range(n_cap + 1):
        forward += family.coeffs[n] * basis[n]
        curve[n] = _weighted_norm(forward - data.g_values, weights)
    return curve


def _as_curve_pairs(curve):
    return [(int(n), float(d)) for n, d in enumerate(curve)]


def select_n_min_discrepancy(family, data, n_cap=None, curve=None):
    """Truncation index minimizing the discrepancy; ties go to the smaller N."""
    if curve is None:
        curve = discrepancy_curve(family, data, n_cap)
    chosen = int(np.argmin(curve))
    return InversionReport(
        chosen_n=chosen,
        selection_rule="min_discrepancy",
        discrepancy_curve=_as_curve_pairs(curve),
        imag_residual=family.imag_residual,
    )


def morozov_index(curve, bound):
    """Index picked by the discrepancy principle from a discrepancy curve.

    First looks for the smallest N with ``D(N) <= bound < D(N+1)``. When the
    curve never turns back up, this reduces to the smallest N with
    ``D(N) <= bound``. Returns None when the bound is never met.
    """
    curve = np.asarray(curve)
    below = curve <= bound
    crossing = np.flatnonzero(below[:-1] & ~below[1:])
    if crossing.size:
        return int(crossing[0])
    hits = np.flatnonzero(below)
    return int(hits[0]) if hits.size else None


def select_n_morozov(family, data, epsilon, tau=DEFAULT_TAU, n_cap=None, curve=None):
    """Choose N by Morozov's discrepancy principle with noise level `epsilon`.

    Falls back to the minimum-discrepancy index when no N satisfies
    ``D(N) <= tau * epsilon``; the report's `selection_rule` says which.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not tau > 1:
        raise ValueError(f"tau must exceed 1, got {tau}")
    if curve is None:
        curve = discrepancy_curve(family, data, n_cap)
    chosen = morozov_index(curve, tau * epsilon)
    rule = "morozov"
    if chosen is None:
        LOGGER.info("discrepancy never reaches tau*eps=%g; using minimum discrepancy", tau * epsilon)
        chosen = int(np.argmin(curve))
        rule = "min_discrepancy"
    return InversionReport(
        chosen_n=chosen,
        selection_rule=rule,
        epsilon=float(epsilon),
        tau=float(tau),
        discrepancy_curve=_as_curve_pairs(curve),
        imag_residual=family.imag_residual,
    )


def a_priori_n(epsilon, k, c=1.0):
    """Truncation index ``round(c * epsilon^(-1/k))``, at least 1.

    `k` is the assumed smoothness order of the data and must exceed 1.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not k > 1:
        raise ValueError(f"smoothness order k must exceed 1, got {k}")
    if not c > 0:
        raise ValueError(f"constant c must be positive, got {c}")
    return max(1, int(round(c * epsilon ** (-1.0 / k))))


def invert(
    data,
    selection="morozov",
    epsilon=None,
    tau=DEFAULT_TAU,
    n_cap=None,
    n=None,
    k=None,
    c=1.0,
    allow_aliasing=False,
):
    """Run the three steps: coefficients, truncation choice, truncated solution.

    Parameters
    ----------
    data : SampleSet
    selection : {"morozov", "min_discrepancy", "a_priori", "fixed"}
    epsilon : float, optional
        Noise level; required by ``morozov`` and ``a_priori``.
    tau : float
        Morozov safety factor, > 1.
    n_cap : int, optional
        Largest truncation index considered. Defaults to ``N_s/2 - 1`` on
        uniform grids (``N_s/4 - 1`` on arbitrary ones), or to `n` for the
        ``fixed`` rule.
    n : int, optional
        Truncation index for ``fixed``.
    k, c : optional
        Smoothness order and constant for ``a_priori``.

    Returns
    -------
    solution : LegendreExpansion
        The truncated expansion.
    family : LegendreExpansion
        All computed coefficients up to `n_cap`.
    report : InversionReport
    """
    selection = selection.replace("-", "_")
    if selection not in SELECTION_RULES:
        raise ValueError(f"unknown selection rule {selection!r}")
    if selection == "fixed":
        if n is None:
            raise ValueError("fixed selection needs n")
        n_cap = n if n_cap is None else max(n_cap, n)
    elif selection == "a_priori":
        if epsilon is None or k is None:
            raise ValueError("a-priori selection needs epsilon and k")
        n = a_priori_n(epsilon, k, c)
        n_cap = n if n_cap is None else max(n_cap, n)
    family, _ = legendre_coeffs(data, n_cap, allow_aliasing=allow_aliasing)

    if selection == "morozov":
        report = select_n_morozov(family, data, epsilon if epsilon is not None else 0.0, tau)
    elif selection == "min_discrepancy":
        report = select_n_min_discrepancy(family, data)
        report.epsilon = float(epsilon or 0.0)
        report.tau = float(tau)
    else:
        curve = discrepancy_curve(family, data, n)
        report = InversionReport(
            chosen_n=int(n),
            selection_rule=selection,
            epsilon=float(epsilon or 0.0),
            tau=float(tau),
            discrepancy_curve=_as_curve_pairs(curve),
            imag_residual=family.imag_residual,
        )
    return truncate(family, report.chosen_n), family, report


__all__ = [
    "DEFAULT_TAU",
    "InversionReport",
    "a_priori_n",
    "discrepancy",
    "discrepancy_curve",
    "invert",
    "max_resolved_degree",
    "morozov_index",
    "select_n_min_discrepancy",
    "select_n_morozov",
    "truncate",
    "x_trapezoid_weights",
]
