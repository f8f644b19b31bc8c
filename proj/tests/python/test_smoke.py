"""Smoke tests for the gepoly extension module."""

import math
from fractions import Fraction

import gepoly as g


def test_exact_values():
    assert g.eval_exact(5, 1, 1) == Fraction(32)
    assert g.eval_exact(2, 0, 2) == Fraction(11, 4)
    assert g.eval_exact(4, -1, 1) == 0
    re, im = g.eval_exact(3, "1+2i", "3/2")
    assert (re, im) == (Fraction(-1111, 72), Fraction(41, 2))


def test_expected_polynomial_shape():
    coeffs = g.expected_polynomial(2)
    assert coeffs[(2, 0)] == 1
    assert coeffs[(0, 2)] == Fraction(3, 4)
    assert coeffs[(0, 1)] == Fraction(-1, 2)
    assert len(coeffs) == 6


def test_moment_oracles_agree():
    for n_vars in range(1, 7):
        for n in range(0, n_vars + 1):
            for s2 in (Fraction(1, 2), 1, 2):
                assert g.isserlis_moment(n_vars, n, s2) == g.closed_form_moment(n_vars, n, s2)


def test_float_paths():
    value, bits, bound = g.eval_float(12, complex(-2, 0), 1.0, 128)
    assert abs(value - 1.0) < 1e-15
    assert bits == 128 and bound < 1e-15
    assert g.nth_root_value(8, 4.0, 1.0) == 5.0


def test_limits():
    assert abs(g.kappa_star() - 0.27846454276) < 5e-12
    assert g.z_star_squared(1.0) == -1.0
    assert g.limit_real(9.0, 4.0)["value"] == 10.0
    assert g.limit_real(0.0, 2.0)["branch"] == "broken"
    assert g.scaled_limit(complex(-9, 0), 16.0) == complex(math.exp(-0.3), 0)
    assert g.conjectured_limit(4.0, 1.0, "even")["value"] == 3.0
    assert g.conjectured_limit(4.0, 1.0, "odd")["value"] == -3.0
    assert abs(g.entropy_value(-4.0, 1.0).real - math.log(3.0)) < 1e-14
    assert abs(g.entropy_value(-4.0, 1.0).imag - math.pi) < 1e-14


def test_sequences_and_series():
    recs = g.nth_root_sequence(1.0, 1.0, n_max=6)
    assert [r["nth_root"] for r in recs] == [2.0] * 6
    series = g.positivity_series(2, -1, 2, j_max=40)
    exact = float(g.eval_exact(4, -1, 2))
    assert abs(series["partial_sums"][-1] - exact) < 1e-10
    assert series["partial_sums"] == sorted(series["partial_sums"])


def test_mc_deterministic():
    a = g.mc_expected_polynomial(3, -2.0, 2.0, samples=50000, seed=42)
    b = g.mc_expected_polynomial(3, -2.0, 2.0, samples=50000, seed=42)
    assert a == b
    exact = float(g.eval_exact(3, -2, 2))
    assert abs(a["mean"] - exact) < 4 * a["stderr"]


def test_precision_loss_raises():
    try:
        g.eval_float(4, complex(-1, 0), 1.0, 128)
    except g.PrecisionLossError:
        pass
    else:
        raise AssertionError("expected PrecisionLossError at an exact zero")
