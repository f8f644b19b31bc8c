#pragma once

#include "gepoly/bigfloat.hpp"
#include "gepoly/bivariate_poly.hpp"
#include "gepoly/complex_rational.hpp"
#include "gepoly/rational.hpp"

#include <complex>
#include <vector>

namespace gepoly {

// Exact construction and evaluation of the expected polynomials
//
//   E_N(z; sigma) = sum_{j=0}^{N} z^{2j} C(N,j)
//                   sum_{k=0}^{N-j} C(N-j,k) (2k-1)!! ((sigma^2-1)/N)^k
//
// as bivariate rational polynomials in (z^2, sigma^2), plus point evaluation
// in exact and controlled-precision floating arithmetic.

// Moments Exp[X_1^2 ... X_n^2] for n = 0..N at fixed (N, sigma^2), exact.
// Entry n is a polynomial value of degree n in sigma^2.
std::vector<Rational> moment_values(int N, const Rational& sigma2);

// The full polynomial, expanded into (z^2, sigma^2) monomials. The z^{2N}
// coefficient is exactly 1. Cost grows like N^3 coefficient operations;
// meant for N up to a few hundred. Rejects N < 1.
BivariatePoly expected_polynomial(int N);

// Exact value of E_N at a point. sigma2 must be > 0. Real z2 gives im = 0.
ComplexRational eval_exact(int N, const ComplexRational& z2, const Rational& sigma2);

// Same, reusing a moment table from moment_values(N, sigma2); lets sweeps
// over z^2 share the O(N^2) table work.
ComplexRational eval_with_moments(int N, const ComplexRational& z2, const std::vector<Rational>& M);

// Nearest double, +-inf when the value leaves double range.
double to_double_saturating(const Rational& q);

// Caller-facing floating evaluation. Sums the double sum in MPFR at
// `bits` working precision, k ascending inside j ascending, and tracks the
// largest term magnitude so cancellation is detected instead of silently
// returning noise.
struct EvalFloatResult {
    BigComplex value;
    mpfr_prec_t bits;
    // certified bound on |computed - true| / |true|; conservative
    double rel_error_bound;
};

// Default working precision: 64 + 4N bits, enough to survive the
// alternating-sign cancellation at z^2 < 0 for the N ranges we sweep.
mpfr_prec_t default_precision_bits(int N);

// Throws PrecisionLossError when the certified relative error exceeds
// 2^(-bits/2). precision_bits must be >= 53.
EvalFloatResult eval_float(int N, std::complex<double> z2, double sigma2, mpfr_prec_t precision_bits);

// Retry wrapper: doubles the precision until rel_error_bound <= rel_tol.
// Rethrows the last PrecisionLossError if max_doublings is exhausted
// (e.g. at an exact zero of E_N, which no finite precision can certify).
EvalFloatResult eval_float_auto(int N, std::complex<double> z2, double sigma2, double rel_tol,
                                mpfr_prec_t start_bits = 0, int max_doublings = 10);

// sign(E_N) * |E_N|^(1/N) for real z^2, evaluated exactly first (doubles are
// rationals) and rooted in MPFR last.
double nth_root_value(int N, double z2, double sigma2, mpfr_prec_t precision_bits = 128);

}  // namespace gepoly
