"""Named self-checks run by ``abelinv verify``.

Each check computes one scalar and compares it with a tolerance
(``value <= tol``). Tolerances can be overridden to audit the checks
themselves.
"""
from __future__ import annotations

import math

import numpy as np

from .abel import PAIRS, forward_abel
from .legendre import LegendreExpansion, composite_gauss, eval_expansion, project, shifted_legendre_basis
from .noise import check_noise_propagation, normalized_perturbation
from .regularize import discrepancy, discrepancy_curve, truncate
from .spectral import jittered_t_grid, legendre_coeffs, sample_function

POLY_COEFFS = np.array([-1.0 / 3.0, math.sqrt(3.0) / 6.0, math.sqrt(5.0) / 6.0])


def _orthonormality():
    x, w = composite_gauss(64)
    basis = shifted_legendre_basis(32, x)
    gram = (basis * w) @ basis.T
    return float(np.max(np.abs(gram - np.eye(33))))


def _expansion_eval():
    rng = np.random.default_rng(7)
    coeffs = rng.standard_normal(513)
    x = np.linspace(0.0, 1.0, 101)
    naive = coeffs @ shifted_legendre_basis(512, x)
    return float(np.max(np.abs(eval_expansion(LegendreExpansion(coeffs), x) - naive)))


def _forward_accuracy():
    pair = PAIRS["poly"]
    x = np.linspace(0.0, 1.0, 33)
    return float(np.max(np.abs(forward_abel(pair.f, x, 64) - pair.g(x))))


def _catalog():
    x = 0.05 * np.arange(1, 20)
    worst = 0.0
    for pair in PAIRS.values():
        worst = max(worst, float(np.max(np.abs(forward_abel(pair.f, x, 64, pair.breaks) - pair.g(x)))))
    return worst


def _identity():
    exp, _ = legendre_coeffs(sample_function(PAIRS["poly"].g, 64), 31)
    ref = np.zeros(32)
    ref[:3] = POLY_COEFFS
    return float(np.max(np.abs(exp.coeffs - ref)))


def _identity_oracle():
    exp, _ = legendre_coeffs(sample_function(PAIRS["spline"].g, 256), 20)
    oracle = project(PAIRS["spline"].f, 20, 200, PAIRS["spline"].breaks)
    return float(np.max(np.abs(exp.coeffs - oracle.coeffs)))


def _symmetry():
    worst = 0.0
    for pair in PAIRS.values():
        _, spec = legendre_coeffs(sample_function(pair.g, 256), 127)
        worst = max(worst, spec.symmetry_residual())
    return worst


def _incremental():
    data = sample_function(PAIRS["spline"].g, 64)
    family, _ = legendre_coeffs(data, 31)
    curve = discrepancy_curve(family, data)
    direct = [discrepancy(truncate(family, n), data) for n in (0, 5, 17, 31)]
    return float(max(abs(curve[n] - d) for n, d in zip((0, 5, 17, 31), direct)))


def _noise_bound():
    data = sample_function(PAIRS["poly"].g, 128)
    clean, _ = legendre_coeffs(data, 20)
    rng = np.random.default_rng(11)
    worst = -math.inf
    for _ in range(100):
        for eps in (1e-3, 1e-2):
            noisy_data = normalized_perturbation(data, rng.standard_normal(data.n_samples), eps)
            noisy, _ = legendre_coeffs(noisy_data, 20)
            for n in (5, 10, 20):
                res = check_noise_propagation(clean, noisy, eps, n)
                worst = max(worst, res["lhs"] / res["rhs"] - 1.0)
    return worst


def _nonuniform():
    t = jittered_t_grid(512, 0.25, seed=3)
    exp, _ = legendre_coeffs(sample_function(PAIRS["poly"].g, t_nodes=t), 13)
    ref = np.zeros(14)
    ref[:3] = POLY_COEFFS
    return float(np.max(np.abs(exp.coeffs - ref)))


CHECKS = {
    "orthonormality": (_orthonormality, 1e-10),
    "expansion_eval": (_expansion_eval, 1e-10),
    "forward_accuracy": (_forward_accuracy, 1e-10),
    "catalog_consistency": (_catalog, 1e-8),
    "coefficient_identity": (_identity, 1e-10),
    "identity_vs_projection": (_identity_oracle, 1e-6),
    "spectrum_symmetry": (_symmetry, 1e-12),
    "incremental_discrepancy": (_incremental, 1e-10),
    "noise_propagation_bound": (_noise_bound, 1e-6),
    "nonuniform_path": (_nonuniform, 1e-4),
}


def run_checks(names=None, tol=None):
    """Run the named checks (all by default); `tol` overrides every tolerance."""
    names = list(CHECKS) if not names else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s) {unknown}; available: {sorted(CHECKS)}")
    results = []
    for name in names:
        fn, default_tol = CHECKS[name]
        limit = default_tol if tol is None else tol
        value = fn()
        results.append({"name": name, "value": value, "tol": limit, "passed": bool(value <= limit)})
    return results
