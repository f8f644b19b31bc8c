#pragma once

#include "gepoly/asymptotics.hpp"
#include "gepoly/exact_core.hpp"
#include "gepoly/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gepoly {

// Empirical verification engine: finite-N sequences, parity splitting, exact
// sign audits, the sum-of-squares positivity series, and the fixed-point
// scans over sigma.

struct SequenceRecord {
    int N = 0;
    Parity parity = Parity::Odd;
    double z2 = 0.0;
    double sigma2 = 1.0;
    double value = 0.0;     // E_N or the scaled ratio (+-inf if outside double range)
    double nth_root = 0.0;  // NaN for ratio-mode records
    double ref_limit = 0.0;
    double abs_err = 0.0;
    Branch branch;
    long bits = 0;  // working precision actually used
};

enum class StudyMode { NthRoot, ScaledRatio, SignAudit, PositivitySeries };

struct StudyConfig {
    int n_max = 1000;
    std::vector<std::pair<double, double>> grid;  // (z2, sigma2) points, CLI-level
    StudyMode mode = StudyMode::NthRoot;
    long precision_bits = 0;     // 0 = default policy 64 + 4N
    std::vector<int> n_list;     // explicit N values; empty = 1..n_max
    int exact_cutoff = 256;      // exact evaluation up to here, verified MPFR beyond
    double float_rel_tol = 1e-12;  // "significant digits that must survive"
};

// E_N^{1/N} records for N over the configured list. ref_limit comes from
// limit_real for z2 >= 0 and from the parity's conjectured_limit for z2 < 0.
std::vector<SequenceRecord> nth_root_sequence(const StudyConfig& cfg, double z2, double sigma2);

// E_N(z^2/N; sigma) / E_N(0; sigma) against the scaled limit.
std::vector<SequenceRecord> scaled_ratio_sequence(const StudyConfig& cfg, double z2, double sigma2);

struct SignRecord {
    int N;
    Rational y2;
    int sign;  // exact sign of E_N(iy; sigma)
};

struct SignChange {
    int N;
    double y2_location;  // bisected zero crossing of the odd-N sign
};

struct SignAuditResult {
    std::vector<SignRecord> rows;
    std::vector<SignChange> odd_sign_changes;
};

// Exact signs of E_N(iy; sigma) over a rational y^2 grid for N = 1..n_max.
// Throws std::logic_error if an even N comes out negative (Thm-level
// invariant; would mean the evaluator is broken). Odd-N sign flips between
// adjacent grid points are refined by exact bisection.
SignAuditResult sign_audit(const StudyConfig& cfg, const Rational& sigma2,
                           const std::vector<Rational>& y2_grid);

// Single bisected sign-change location in y^2 for odd N, given an exact
// bracketing [lo, hi] with opposite signs.
double odd_sign_change(int N, const Rational& sigma2, Rational lo, Rational hi, int iterations = 48);

struct PositivitySeries {
    std::vector<double> partial_sums;  // cumulative through term j (odd j add nothing)
    double j0_lower_bound;             // closed-form j = 0 term
};

// Sum-of-squares expansion of E_2K(z; sigma) for sigma^2 >= 1:
//
//   E_2K = (1/(sigma (2pi)^K)) sum_j (1/j!) ((1-1/sigma^2)/(2K))^j I_j^2,
//   I_j = integral Upsilon(x) (sum x_k)^j d^K x.
//
// The inner integrals reduce exactly to 1-D Gaussian moments through the
// rotation construction; partial sums are nondecreasing and converge to
// eval_exact(2K) from below. sigma^2 < 1 rejected.
PositivitySeries positivity_series(int K, const Rational& z2, const Rational& sigma2, int j_max);

// Both scalings of the sigma |-> E_N(iy; sigma) study: for each sigma in the
// grid and N <= n_max, a record with value = E_N, nth_root, and the
// conjectured reference. branch.kind == Symmetric marks the plateau window
// where the limit is +-(1 - y^2).
std::vector<SequenceRecord> fixed_point_scan(const std::vector<double>& sigma_grid, double y2,
                                             int n_max);

// The sigma-interval where the nth-root limit at this y^2 sits on the
// symmetric branch: ((3 - y^2)/2 < sigma^2 < 1 + (y^2-1)/(2 kappa_*)),
// returned as sigma bounds (0 when the side is unbounded below).
std::pair<double, double> plateau_window(double y2);

// Search hook for the suspected near-common intersection of the same-parity
// curves sigma |-> E_N(iy; sigma) close to y^2 = 2: the spread
// max_N E_N - min_N E_N across the parity's N <= n_max at one (y^2, sigma)
// point. A y where some sigma drives the spread to ~0 would be the special
// symmetry point; no formula is known, so this only measures.
double fixed_point_spread(double y2, double sigma, int n_max, Parity parity);

}  // namespace gepoly
