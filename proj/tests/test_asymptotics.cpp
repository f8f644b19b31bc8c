#include <doctest.h>

#include "gepoly/asymptotics.hpp"
#include "gepoly/rng.hpp"

#include <cmath>
#include <complex>
#include <functional>

using namespace gepoly;

namespace {

// Composite Simpson on [-L, L]; the densities decay like exp(-x^2/2) so
// L = 14 puts the tail far below the tolerances used here.
std::complex<double> simpson(const std::function<std::complex<double>(double)>& f, double lo,
                             double hi, int intervals) {
    std::complex<double> acc = f(lo) + f(hi);
    double h = (hi - lo) / intervals;
    for (int i = 1; i < intervals; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

}  // namespace

TEST_CASE("kappa_star and the star threshold") {
    double k = kappa_star(1e-11);
    CHECK(std::fabs(k - 0.27846454276) < 5e-12);
    CHECK(std::fabs(k - std::exp(-k - 1.0)) < 1e-11);
    CHECK(z_star_squared(1.0) == -1.0);
    CHECK(z_star_squared(0.0) == doctest::Approx(2.0 * k - 1.0).epsilon(1e-14));
    CHECK(z_star_squared(0.0) == doctest::Approx(-0.44307091448).epsilon(1e-9));
    CHECK(z_star_squared(1.5) == doctest::Approx(-1.0 - k).epsilon(1e-14));
    // monotone decreasing in sigma^2
    CHECK(z_star_squared(2.0) < z_star_squared(1.0));
    CHECK_THROWS_AS(kappa_star(0.0), std::invalid_argument);
}

TEST_CASE("limit_real branches") {
    LimitCurve a = limit_real(9.0, 4.0);
    CHECK(a.value == 10.0);
    CHECK(a.branch.kind == BranchKind::Symmetric);
    CHECK(a.thresholds_crossed.empty());

    LimitCurve b = limit_real(0.0, 2.0);
    CHECK(b.value == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-15));
    CHECK(b.branch.kind == BranchKind::Broken);
    REQUIRE(b.thresholds_crossed.size() == 1);
    CHECK(b.thresholds_crossed[0].kind == ThresholdCross::SigmaGap);
    CHECK(b.thresholds_crossed[0].z2 == 1.0);

    LimitCurve c = limit_real(0.0, 4.0);
    CHECK(c.value == doctest::Approx(6.0 * std::exp(1.0 / 6.0 - 1.0)).epsilon(1e-15));

    // continuity at the phase transition z^2 = 2 sigma^2 - 3
    LimitCurve at = limit_real(1.0, 2.0);
    CHECK(at.value == 2.0);
    CHECK(at.branch.kind == BranchKind::Symmetric);
    double broken_side = 2.0 * (2.0 - 1.0) * std::exp((1.0 + 1.0) / 2.0 - 1.0);
    CHECK(broken_side == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(limit_real(-1.0, 2.0), std::invalid_argument);
}

TEST_CASE("scaled_limit") {
    CHECK(scaled_limit({1.0, 0.0}, 1.0).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(scaled_limit({-9.0, 0.0}, 16.0).real() ==
          doctest::Approx(std::exp(-9.0 / 30.0)).epsilon(1e-15));
    CHECK(scaled_limit({0.0, 0.0}, 0.7) == std::complex<double>(1.0, 0.0));
    CHECK(scaled_limit({0.0, 0.0}, 3.0) == std::complex<double>(1.0, 0.0));
    // boundary sigma^2 = 3/2 belongs to the exp(z^2) branch
    CHECK(scaled_limit({2.0, 0.0}, 1.5).real() == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    std::complex<double> zi{0.0, 1.0};
    CHECK(std::abs(scaled_limit(zi, 16.0) - std::exp(zi / 30.0)) < 1e-15);
}

TEST_CASE("m_pm_squared") {
    CHECK(m_pm_squared(2.0 * 2.0 - 3.0, 2.0) == 0.0);
    CHECK(m_pm_squared(0.0, 2.0) == 4.0);
    CHECK(m_pm_squared(-4.0, 4.0) == 16.0);
    CHECK_THROWS_AS(m_pm_squared(0.0, 1.0), std::domain_error);
}

TEST_CASE("mean fixed point residual vanishes exactly where it should") {
    CHECK(mean_fixed_point_residual(0.0, 3.7, 2.2) == std::complex<double>(0.0, 0.0));
    // the nonzero roots, both real and purely imaginary
    for (double sigma2 : {2.0, 4.0, 0.5, 1.2}) {
        for (double z2 : {0.0, -4.0, 1.5}) {
            double m2 = m_pm_squared(z2, sigma2);
            std::complex<double> m = std::sqrt(std::complex<double>(m2, 0.0));
            if (std::abs(m) < 1e-9) continue;
            CHECK(std::abs(mean_fixed_point_residual(m, z2, sigma2)) < 1e-12);
            CHECK(std::abs(mean_fixed_point_residual(-m, z2, sigma2)) < 1e-12);
        }
    }
    // sigma = 1 kills the right-hand side entirely
    CHECK(mean_fixed_point_residual(1.0, 0.0, 1.0) == std::complex<double>(1.0, 0.0));
    CHECK_THROWS_AS(mean_fixed_point_residual(0.0, -1.0, 2.0), std::domain_error);
}

TEST_CASE("m_pm reality split") {
    SplitMix64 rng(5150);
    double k = kappa_star();
    (void)k;
    for (int trial = 0; trial < 60; ++trial) {
        double sigma2 = 0.05 + 2.5 * rng.uniform();
        if (std::fabs(sigma2 - 1.0) < 1e-3) continue;
        double y2 = 4.0 * rng.uniform();
        double m2 = m_pm_squared(-y2, sigma2);  // z^2 = -y^2
        if (y2 > 3.0 - 2.0 * sigma2)
            CHECK(m2 > 0.0);
        else
            CHECK(m2 < 0.0);
    }
}

TEST_CASE("critical densities: closed-form normalization vs quadrature") {
    const double sqrt2pi = std::sqrt(2.0 * std::acos(-1.0));

    // symmetric branch at the i.i.d. point: nu(x) = x^2 e^{-x^2/2}/sqrt(2pi)
    CriticalDensity d0 = critical_density(0.0, 1.0, {BranchKind::Symmetric, +1});
    CHECK(d0.normalizer() == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(d0.density(1.3) -
                   std::complex<double>(1.3 * 1.3 * std::exp(-0.5 * 1.3 * 1.3) / sqrt2pi, 0.0)) <
          1e-15);

    auto check_density = [&](const CriticalDensity& d) {
        auto mass = simpson([&](double x) { return d.density(x); }, -14.0, 14.0, 20000);
        CHECK(std::abs(mass - 1.0) < 1e-8);
        auto mean = simpson([&](double x) { return x * d.density(x); }, -14.0, 14.0, 20000);
        CHECK(std::abs(mean - d.m) < 1e-8);
        // normalizer against direct quadrature of the unnormalized density
        std::complex<double> b = (1.0 - 1.0 / d.sigma2) * d.m;
        auto raw = simpson(
            [&](double x) {
                return (x * x + d.z2) * std::exp(std::complex<double>(-0.5 * x * x, 0.0) + b * x);
            },
            -14.0, 14.0, 20000);
        CHECK(std::abs(raw / sqrt2pi - d.normalizer()) < 1e-8 * std::abs(d.normalizer()));
    };

    check_density(d0);
    check_density(critical_density(0.5, 1.0, {BranchKind::Symmetric, +1}));
    check_density(critical_density(-4.0, 1.0, {BranchKind::Symmetric, +1}));   // signed density
    check_density(critical_density(0.0, 4.0, {BranchKind::Broken, +1}));       // real m
    check_density(critical_density(-1.0, 0.5, {BranchKind::Broken, +1}));      // imaginary m
    check_density(critical_density(-0.25, 1.2, {BranchKind::Broken, +1}));     // imaginary m

    // broken-branch normalizer closed form 2(sigma^2-1) e^{(2 sigma^2-3-z^2)/2}
    CriticalDensity dpm = critical_density(0.0, 4.0, {BranchKind::Broken, +1});
    CHECK(dpm.normalizer().real() == doctest::Approx(6.0 * std::exp(2.5)).epsilon(1e-12));
    CHECK(dpm.normalizer().imag() == doctest::Approx(0.0));
}

TEST_CASE("inverse second moments of the z = 0 densities") {
    CriticalDensity sym = critical_density(0.0, 1.2, {BranchKind::Symmetric, +1});
    CHECK(sym.inverse_second_moment() == std::complex<double>(1.0, 0.0));
    CriticalDensity broken = critical_density(0.0, 4.0, {BranchKind::Broken, +1});
    CHECK(broken.inverse_second_moment().real() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    // quadrature route; asymmetric bounds keep x = 0 off the grid
    auto q = simpson([&](double x) { return broken.density(x) / (x * x); }, -14.1, 13.9, 20000);
    CHECK(std::abs(q - broken.inverse_second_moment()) < 1e-7);
    CHECK_THROWS_AS(critical_density(0.5, 2.0, {BranchKind::Broken, +1}).inverse_second_moment(),
                    std::domain_error);
}

TEST_CASE("critical_density rejects the zero-normalization point") {
    CHECK_THROWS_AS(critical_density(-1.0, 2.0, {BranchKind::Symmetric, +1}), std::domain_error);
}

TEST_CASE("entropy values") {
    const double pi = std::acos(-1.0);
    auto sym = entropy_value(3.0, 1.0, BranchKind::Symmetric);
    CHECK(sym.real() == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(sym.imag() == 0.0);

    auto broken = entropy_value(0.0, 2.0, BranchKind::Broken);
    CHECK(broken.real() == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-15));
    CHECK(broken.imag() == 0.0);

    auto neg = entropy_value(-4.0, 1.0, BranchKind::Symmetric);
    CHECK(neg.real() == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(neg.imag() == doctest::Approx(pi));
    // exp(entropy) reproduces the signed candidate 1 - y^2 = -3
    CHECK(std::exp(neg).real() == doctest::Approx(-3.0).epsilon(1e-12));

    CHECK_THROWS_AS(entropy_value(-1.0, 2.0, BranchKind::Symmetric), std::domain_error);
    CHECK_THROWS_AS(entropy_value(0.0, 1.0, BranchKind::Broken), std::domain_error);
}

TEST_CASE("entropy gap series") {
    CHECK(entropy_gap_series(1.0, 2.0, 50) == 0.0);  // z^2 = 2 sigma^2 - 3
    double gap = entropy_gap_series(0.0, 2.0, 200);
    CHECK(gap == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-13));
    // partial sums nondecreasing
    double prev = 0.0;
    for (int terms = 1; terms <= 30; ++terms) {
        double s = entropy_gap_series(0.5, 4.0, terms);
        CHECK(s >= prev);
        prev = s;
    }
    CHECK_THROWS_AS(entropy_gap_series(7.0, 2.0, 10), std::domain_error);
    CHECK_THROWS_AS(entropy_gap_series(0.0, 1.2, 10), std::domain_error);
}

TEST_CASE("conjectured limit case table") {
    // sigma^2 = 1 row
    CHECK(conjectured_limit(4.0, 1.0, Parity::Even).value == 3.0);
    CHECK(conjectured_limit(4.0, 1.0, Parity::Odd).value == -3.0);
    CHECK(conjectured_limit(0.25, 1.0, Parity::Even).value == 0.75);

    // sigma^2 = 1/2: y^2 = 2 sits exactly on -z^2 >= 3 - 2 sigma^2
    LimitCurve h = conjectured_limit(2.0, 0.5, Parity::Even);
    CHECK(h.value == 1.0);  // -(1 - y^2)
    CHECK(h.branch.kind == BranchKind::Symmetric);
    CHECK(h.branch.sign == -1);
    CHECK(conjectured_limit(2.0, 0.5, Parity::Odd).value == -1.0);

    // sigma^2 = 3/2 just below the star threshold: the L2 branch
    double k = kappa_star();
    double ystar2 = 1.0 + k;  // at sigma^2 = 3/2
    LimitCurve l2 = conjectured_limit(ystar2 - 1e-6, 1.5, Parity::Even);
    CHECK(l2.branch.kind == BranchKind::Broken);
    CHECK(l2.value == doctest::Approx(limit_curve_L2(ystar2 - 1e-6, 1.5)).epsilon(1e-12));
    // and just above: the sign-flipped symmetric branch
    LimitCurve l1 = conjectured_limit(ystar2 + 1e-6, 1.5, Parity::Even);
    CHECK(l1.branch.kind == BranchKind::Symmetric);
    CHECK(l1.branch.sign == -1);

    // middle region for sigma^2 < 1 takes |L2| on even N and L2 < 0 on odd N
    LimitCurve mid_even = conjectured_limit(1.0, 0.5, Parity::Even);
    LimitCurve mid_odd = conjectured_limit(1.0, 0.5, Parity::Odd);
    CHECK(mid_even.value == doctest::Approx(-limit_curve_L2(1.0, 0.5)).epsilon(1e-12));
    CHECK(mid_even.value > 0.0);
    CHECK(mid_odd.value < 0.0);
    CHECK(mid_even.branch.kind == BranchKind::Broken);

    CHECK_THROWS_AS(conjectured_limit(-1.0, 1.0, Parity::Even), std::invalid_argument);
}

TEST_CASE("parity relation: equal inside the star threshold, negatives outside") {
    SplitMix64 rng(2024);
    double k = kappa_star();
    for (int trial = 0; trial < 200; ++trial) {
        double sigma2 = 2.5 * rng.uniform();
        double y2 = 4.0 * rng.uniform();
        double ystar2 = 1.0 + 2.0 * k * (sigma2 - 1.0);
        if (std::fabs(y2 - ystar2) < 1e-6) continue;
        double even = conjectured_limit(y2, sigma2, Parity::Even).value;
        double odd = conjectured_limit(y2, sigma2, Parity::Odd).value;
        if (y2 < ystar2)
            CHECK(even == doctest::Approx(odd).epsilon(1e-13));
        else
            CHECK(even == doctest::Approx(-odd).epsilon(1e-13));
    }
}

TEST_CASE("tangency and intersection of the two limit curves") {
    double k = kappa_star();
    for (double sigma2 : {0.2, 0.5, 0.8, 1.2, 1.4}) {
        double y2 = 3.0 - 2.0 * sigma2;  // tangency point
        CHECK(std::fabs(limit_curve_L2(y2, sigma2) - limit_curve_L1(y2)) < 1e-12);
    }
    for (double sigma2 : {0.3, 0.7, 1.3, 2.0, 4.0}) {
        double ystar2 = 1.0 + 2.0 * k * (sigma2 - 1.0);  // intersection with -L1
        CHECK(std::fabs(limit_curve_L2(ystar2, sigma2) + limit_curve_L1(ystar2)) < 1e-10);
    }
}

TEST_CASE("exp(entropy) against the limit curves") {
    // real z: both branches of limit_real
    for (double z2 : {0.0, 1.0, 4.0, 9.0}) {
        for (double sigma2 : {0.5, 1.3, 2.0, 4.0}) {
            LimitCurve lim = limit_real(z2, sigma2);
            auto h = entropy_value(z2, sigma2, lim.branch.kind);
            CHECK(std::exp(h.real()) == doctest::Approx(std::fabs(lim.value)).epsilon(1e-12));
            CHECK(h.imag() == 0.0);
        }
    }
    // imaginary z: odd-parity value is exp(entropy) with sign, even takes |.|
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 120; ++trial) {
        double sigma2 = 2.5 * rng.uniform();
        double y2 = 4.0 * rng.uniform();
        if (std::fabs(sigma2 - 1.0) < 1e-6) continue;
        LimitCurve odd = conjectured_limit(y2, sigma2, Parity::Odd);
        LimitCurve even = conjectured_limit(y2, sigma2, Parity::Even);
        if (std::fabs(1.0 - y2) < 1e-9) continue;  // entropy singular at y^2 = 1
        auto h = entropy_value(-y2, sigma2, odd.branch.kind);
        std::complex<double> value = std::exp(h);
        CHECK(value.real() == doctest::Approx(odd.value).epsilon(1e-10));
        CHECK(std::fabs(value.imag()) < 1e-10);
        CHECK(std::fabs(std::exp(entropy_value(-y2, sigma2, even.branch.kind).real()) -
                        std::fabs(even.value)) < 1e-10 * std::max(1.0, std::fabs(even.value)));
    }
}
