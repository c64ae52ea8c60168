import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from abelinv import (
    PAIRS,
    InversionReport,
    LegendreExpansion,
    NoiseSpec,
    a_priori_n,
    add_noise,
    discrepancy,
    discrepancy_curve,
    invert,
    l2_error,
    legendre_coeffs,
    sample_function,
    select_n_min_discrepancy,
    select_n_morozov,
    truncate,
)
from abelinv.regularize import morozov_index, x_trapezoid_weights

POLY = PAIRS["poly"]

UNREPRODUCIBLE = (
    "the discrepancy on the sample abscissae decreases monotonically in N for noisy data, "
    "so a plateau-then-rise curve with a choice near N=13 does not appear"
)


def noisy_poly(eps, n_s=64, seed=0):
    return add_noise(sample_function(POLY.g, n_s), NoiseSpec(eps, seed))


def test_truncate_examples(poly_coeffs):
    exp = LegendreExpansion(np.r_[poly_coeffs, np.zeros(11)])
    np.testing.assert_array_equal(truncate(exp, exp.n_max).coeffs, exp.coeffs)
    np.testing.assert_array_equal(truncate(exp, 2).coeffs, poly_coeffs)
    np.testing.assert_array_equal(truncate(LegendreExpansion([1, 1, 1]), 0).coeffs, [1.0])
    with pytest.raises(ValueError):
        truncate(exp, 14)
    with pytest.raises(ValueError):
        truncate(exp, -1)
    with pytest.raises(ValueError):
        truncate(LegendreExpansion([]), 0)


def test_x_trapezoid_weights_integrate_polynomials():
    data = sample_function(POLY.g, 64)
    w = x_trapezoid_weights(data)
    x = data.x_nodes
    assert np.sum(w) == pytest.approx(1.0, abs=1e-14)
    assert np.sum(w * x) == pytest.approx(0.5, abs=1e-14)
    assert np.sum(w * x**2) == pytest.approx(1.0 / 3.0, abs=2e-3)


def test_discrepancy_examples(poly_coeffs):
    data = sample_function(POLY.g, 64)
    assert discrepancy(LegendreExpansion(poly_coeffs), data) <= 1e-8
    zero_data = data.with_values(np.zeros(64))
    assert discrepancy(LegendreExpansion([0.0]), zero_data) == 0.0
    assert discrepancy(LegendreExpansion([]), zero_data) == 0.0
    oracle = math.sqrt(quad(lambda x: POLY.g(x) ** 2, 0.0, 1.0, epsabs=1e-14)[0])
    assert oracle == pytest.approx(math.sqrt(256.0 / 540.0), abs=1e-12)
    # trapezoid on the 33 distinct abscissae of a 64-point t-grid
    assert discrepancy(LegendreExpansion([0.0]), data) == pytest.approx(oracle, rel=2e-3)


def test_discrepancy_deterministic():
    data = noisy_poly(1e-2)
    fam, _ = legendre_coeffs(data, 20)
    assert discrepancy(fam, data) == discrepancy(fam, data)


@pytest.mark.parametrize("pair_id", ["poly", "spline", "step"])
def test_incremental_matches_recomputation(pair_id):
    data = add_noise(sample_function(PAIRS[pair_id].g, 64), NoiseSpec(1e-2, 4))
    family, _ = legendre_coeffs(data)
    curve = discrepancy_curve(family, data)
    assert curve.shape == (32,)
    for n in range(32):
        assert abs(curve[n] - discrepancy(truncate(family, n), data)) <= 1e-10


def test_discrepancy_monotone_up_to_degree():
    data = sample_function(POLY.g, 64)
    family, _ = legendre_coeffs(data)
    curve = discrepancy_curve(family, data)
    assert np.all(np.diff(curve[:3]) <= 1e-9)
    assert np.max(curve[2:]) <= 1e-8


def test_discrepancy_curve_bounds():
    data = sample_function(POLY.g, 64)
    family, _ = legendre_coeffs(data)
    with pytest.raises(ValueError):
        discrepancy_curve(family, data, 32)
    assert discrepancy_curve(family, data, 5).shape == (6,)


def test_morozov_exact_data():
    data = sample_function(POLY.g, 64)
    family, _ = legendre_coeffs(data)
    report = select_n_morozov(family, data, 1e-10, 1.5)
    assert report.selection_rule == "morozov"
    assert report.chosen_n <= 5
    assert report.discrepancy <= 1.5e-10


def test_morozov_huge_tau_picks_zero():
    data = noisy_poly(4e-2)
    family, _ = legendre_coeffs(data)
    assert select_n_morozov(family, data, 4e-2, 1e12).chosen_n == 0


def test_morozov_errors():
    data = noisy_poly(4e-2)
    family, _ = legendre_coeffs(data, 5)
    with pytest.raises(ValueError):
        select_n_morozov(family, data, 0.0)
    with pytest.raises(ValueError):
        select_n_morozov(family, data, -1.0)
    with pytest.raises(ValueError):
        select_n_morozov(family, data, 1e-2, 1.0)


def test_morozov_fallback_to_min_discrepancy():
    data = noisy_poly(1e-1)
    family, _ = legendre_coeffs(data)
    report = select_n_morozov(family, data, 1e-9, 1.5)
    assert report.selection_rule == "min_discrepancy"
    assert report.chosen_n == int(np.argmin([d for _, d in report.discrepancy_curve]))


def test_morozov_index_rule():
    # two-sided rule: D(N) <= bound < D(N + 1)
    assert morozov_index([5, 3, 1, 0.5, 2, 0.1], 1.0) == 3
    assert morozov_index([5, 3, 2, 1.5], 1.0) is None
    assert morozov_index([5, 0.5, 0.4, 0.3], 1.0) == 1
    assert morozov_index([0.5], 1.0) == 0


def test_morozov_noisy_poly_actual_choice():
    """With the monotone discrepancy, Morozov stops at the degree of f1."""
    choices = []
    for seed in range(20):
        data = noisy_poly(4e-2, seed=seed)
        family, _ = legendre_coeffs(data)
        choices.append(select_n_morozov(family, data, 4e-2).chosen_n)
    assert np.median(choices) == 2


@pytest.mark.xfail(strict=True, reason=UNREPRODUCIBLE)
def test_morozov_noisy_poly_near_13():
    choices = []
    for seed in range(20):
        data = noisy_poly(4e-2, seed=seed)
        family, _ = legendre_coeffs(data)
        choices.append(select_n_morozov(family, data, 4e-2).chosen_n)
    assert 9 <= np.median(choices) <= 17


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1e-3, 1e-2, 4e-2, 1e-1]), st.floats(1.01, 5.0))
def test_morozov_satisfies_inequality(seed, eps, tau):
    data = noisy_poly(eps, seed=seed)
    family, _ = legendre_coeffs(data)
    report = select_n_morozov(family, data, eps, tau)
    if report.selection_rule == "morozov":
        assert report.discrepancy <= tau * eps
        d = np.array([v for _, v in report.discrepancy_curve])
        below = d <= tau * eps
        crossings = np.flatnonzero(below[:-1] & ~below[1:])
        # smallest N with D(N) <= tau eps < D(N + 1); else smallest N below the bound
        expected = crossings[0] if crossings.size else np.flatnonzero(below)[0]
        assert report.chosen_n == expected
    assert report.chosen_n in [n for n, _ in report.discrepancy_curve]
    assert all(d >= 0 for _, d in report.discrepancy_curve)


def test_min_discrepancy_examples():
    data = sample_function(POLY.g, 64)
    family, _ = legendre_coeffs(data)
    report = select_n_min_discrepancy(family, data)
    assert 2 <= report.chosen_n <= 20
    assert report.discrepancy <= 1e-8
    single = LegendreExpansion([0.7])
    assert select_n_min_discrepancy(single, data).chosen_n == 0


def test_min_discrepancy_ties_go_low():
    data = sample_function(POLY.g, 64)
    family = LegendreExpansion([0.0, 0.0, 0.0])
    assert select_n_min_discrepancy(family, data).chosen_n == 0


@pytest.mark.xfail(strict=True, reason=UNREPRODUCIBLE)
def test_min_discrepancy_noisy_minimum_below_20():
    data = noisy_poly(1e-1, n_s=128)
    family, _ = legendre_coeffs(data)
    assert select_n_min_discrepancy(family, data).chosen_n < 20


def test_a_priori_examples():
    assert a_priori_n(1e-4, 2, 1) == 100
    assert a_priori_n(1.0, 2, 1) == 1
    assert a_priori_n(1e-3, 4, 2) == 11
    assert a_priori_n(0.9, 50, 0.1) == 1
    with pytest.raises(ValueError):
        a_priori_n(1e-3, 1, 1)
    with pytest.raises(ValueError):
        a_priori_n(0.0, 2, 1)
    with pytest.raises(ValueError):
        a_priori_n(1e-3, 2, 0)


def test_reconstruction_error_nonincreasing_in_noise():
    medians = []
    for eps in (1e-1, 1e-2, 1e-3, 1e-4):
        errs = []
        for seed in range(20):
            solution, _, _ = invert(noisy_poly(eps, seed=seed), "morozov", eps)
            errs.append(l2_error(POLY.f, solution))
        medians.append(np.median(errs))
    assert all(b <= a for a, b in zip(medians, medians[1:]))


def test_invert_rules(poly_coeffs):
    data = sample_function(POLY.g, 64)
    sol, fam, rep = invert(data, "fixed", n=13)
    assert rep.chosen_n == 13 and fam.n_max == 13 and sol.n_max == 13
    assert l2_error(POLY.f, sol) <= 1e-8
    sol, _, rep = invert(data, "a-priori", epsilon=1e-4, k=4)
    assert rep.chosen_n == 10 and rep.selection_rule == "a_priori"
    sol, fam, rep = invert(data, "min_discrepancy")
    assert fam.n_max == 31
    with pytest.raises(ValueError):
        invert(data, "fixed")
    with pytest.raises(ValueError):
        invert(data, "a_priori", epsilon=1e-3)
    with pytest.raises(ValueError):
        invert(data, "bogus")
    with pytest.raises(ValueError):
        invert(data, "morozov")


def test_report_roundtrip_and_invariants():
    data = noisy_poly(4e-2)
    _, _, rep = invert(data, "morozov", 4e-2)
    again = InversionReport.from_dict(rep.to_dict())
    assert again.to_dict() == rep.to_dict()
    assert rep.chosen_n in [n for n, _ in rep.discrepancy_curve]
    with pytest.raises(ValueError):
        InversionReport(0, "nope")
