#pragma once

#include "gepoly/rational.hpp"
#include "gepoly/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gepoly {

// Independent oracles for the moment structure behind E_N: exact Wick
// pairing enumeration over the covariance
//
//   Cov_N(X_k, X_l) = (1 + (sigma^2-1)/N) delta_kl + (sigma^2-1)/N (1 - delta_kl)
//
// and Monte Carlo sampling through the N+1-variable representation
// (rotation construction when sigma^2 < 1).

struct CovarianceSpec {
    int N;
    Rational sigma2;

    CovarianceSpec(int n, Rational s2) : N(n), sigma2(std::move(s2)) {
        if (N < 1) throw std::invalid_argument("CovarianceSpec: N must be >= 1");
        if (sigma2 <= 0) throw std::domain_error("CovarianceSpec: sigma2 must be > 0");
    }
};

// Entry (k,l) of Sigma_N, 1-based. Throws std::out_of_range.
Rational covariance_entry(const CovarianceSpec& spec, int k, int l);

// Exact Exp[X_1^2 ... X_n^2] by summing over all (2n-1)!! perfect matchings
// of the 2n index slots. n <= 8 enforced (combinatorial blow-up).
Rational isserlis_moment(int N, int n, const Rational& sigma2);

// Same, but for an arbitrary set of n distinct variable labels (1-based);
// permutation symmetry of the law means the choice cannot matter.
Rational isserlis_moment_for(int N, std::span<const int> variables, const Rational& sigma2);

// Closed form sum_{k=0}^{n} C(n,k) (2k-1)!! ((sigma^2-1)/N)^k.
Rational closed_form_moment(int N, int n, const Rational& sigma2);

// One draw of (X_1, ..., X_N) with law N(0, Sigma_N). For sigma^2 >= 1 this
// uses N+1 independent standard normals, X_k = Y_k + sqrt((sigma^2-1)/N) Y_0;
// for sigma^2 < 1 it draws the rotated frame (Y_1 with variance sigma^2, the
// rest standard) and applies the Householder reflection taking e_1 to the
// diagonal unit vector.
std::vector<double> sample_vector(const CovarianceSpec& spec, SplitMix64& rng);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

// Sample mean and standard error of prod_n (X_n^2 + z^2) over independent
// draws. Deterministic for a fixed seed: samples are partitioned over 64
// logical streams merged in fixed order. samples >= 100 required.
McEstimate mc_expected_polynomial(int N, double z2, double sigma2, std::int64_t samples,
                                  std::uint64_t seed);

}  // namespace gepoly
