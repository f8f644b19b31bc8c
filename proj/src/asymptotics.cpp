#include "gepoly/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace gepoly {

double kappa_star(double tol) {
    if (!(tol > 0)) throw std::invalid_argument("kappa_star: tol must be > 0");
    auto f = [](double k) { return k - std::exp(-k - 1.0); };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-14) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    double k = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
        // f'(k) = 1 + exp(-k-1)
        k -= f(k) / (1.0 + std::exp(-k - 1.0));
    }
    return k;
}

double z_star_squared(double sigma2) {
    if (sigma2 < 0) throw std::invalid_argument("z_star_squared: sigma2 must be >= 0");
    return 2.0 * kappa_star() * (1.0 - sigma2) - 1.0;
}

double limit_curve_L1(double y2) { return 1.0 - y2; }

double limit_curve_L2(double y2, double sigma2) {
    if (sigma2 == 1.0) throw std::domain_error("L2 is undefined at sigma2 = 1");
    return 2.0 * (sigma2 - 1.0) * std::exp((1.0 - y2) / (2.0 * (sigma2 - 1.0)) - 1.0);
}

LimitCurve limit_real(double z2, double sigma2) {
    if (z2 < 0) throw std::invalid_argument("limit_real: z2 must be >= 0 (use conjectured_limit)");
    if (!(sigma2 > 0)) throw std::domain_error("limit_real: sigma2 must be > 0");
    LimitCurve out;
    const double gap = 2.0 * sigma2 - 3.0;
    if (z2 >= gap) {
        out.value = 1.0 + z2;
        out.branch = {BranchKind::Symmetric, +1};
    } else {
        out.value = 2.0 * (sigma2 - 1.0) * std::exp((1.0 + z2) / (2.0 * (sigma2 - 1.0)) - 1.0);
        out.branch = {BranchKind::Broken, +1};
        out.thresholds_crossed.push_back({ThresholdCross::SigmaGap, gap});
    }
    return out;
}

std::complex<double> scaled_limit(std::complex<double> z2, double sigma2) {
    if (!(sigma2 > 0)) throw std::domain_error("scaled_limit: sigma2 must be > 0");
    if (sigma2 <= 1.5) return std::exp(z2);
    return std::exp(z2 / (2.0 * (sigma2 - 1.0)));
}

double m_pm_squared(double z2, double sigma2) {
    if (sigma2 == 1.0) throw std::domain_error("m_pm_squared: degenerate at sigma2 = 1");
    const double d = sigma2 - 1.0;
    return sigma2 * sigma2 * (2.0 * d - 1.0 - z2) / (d * d);
}

std::complex<double> mean_fixed_point_residual(std::complex<double> m, double z2, double sigma2) {
    if (!(sigma2 > 0)) throw std::domain_error("mean_fixed_point_residual: sigma2 must be > 0");
    const double c = 1.0 - 1.0 / sigma2;
    const std::complex<double> cm2 = c * c * m * m;
    const std::complex<double> den = z2 + 1.0 + cm2;
    if (den == 0.0) throw std::domain_error("mean_fixed_point_residual: pole z^2+1+(1-1/s^2)^2 m^2 = 0");
    return m - m * c * (z2 + 3.0 + cm2) / den;
}

std::complex<double> CriticalDensity::normalizer() const {
    const std::complex<double> b = (1.0 - 1.0 / sigma2) * m;
    const std::complex<double> b2 = b * b;
    return std::exp(0.5 * b2) * (1.0 + b2 + z2);
}

std::complex<double> CriticalDensity::density(double x) const {
    const std::complex<double> b = (1.0 - 1.0 / sigma2) * m;
    const double sqrt2pi = 2.5066282746310005024;
    return (x * x + z2) * std::exp(-0.5 * x * x + b * x) / (sqrt2pi * normalizer());
}

std::complex<double> CriticalDensity::inverse_second_moment() const {
    if (z2 != 0.0)
        throw std::domain_error("inverse_second_moment: defined for z2 = 0 only");
    const std::complex<double> b = (1.0 - 1.0 / sigma2) * m;
    return 1.0 / (1.0 + b * b);
}

CriticalDensity critical_density(double z2, double sigma2, Branch branch) {
    if (!(sigma2 > 0)) throw std::domain_error("critical_density: sigma2 must be > 0");
    CriticalDensity d;
    d.z2 = z2;
    d.sigma2 = sigma2;
    if (branch.kind == BranchKind::Symmetric) {
        d.m = 0.0;
        if (1.0 + z2 == 0.0)
            throw std::domain_error("critical_density: zero normalization at z^2 = -1, m = 0");
    } else {
        d.m = std::sqrt(std::complex<double>(m_pm_squared(z2, sigma2), 0.0));
    }
    return d;
}

std::complex<double> entropy_value(double z2, double sigma2, BranchKind branch) {
    if (!(sigma2 > 0)) throw std::domain_error("entropy_value: sigma2 must be > 0");
    constexpr double pi = 3.14159265358979323846;
    if (branch == BranchKind::Symmetric) {
        const double v = 1.0 + z2;
        if (v == 0.0) throw std::domain_error("entropy_value: singular at z^2 = -1 on the m=0 branch");
        return {std::log(std::fabs(v)), v < 0 ? pi : 0.0};
    }
    if (sigma2 == 1.0) throw std::domain_error("entropy_value: broken branch needs sigma2 != 1");
    const double d = sigma2 - 1.0;
    const double re = std::log(2.0 * std::fabs(d)) + (1.0 + z2) / (2.0 * d) - 1.0;
    return {re, d < 0 ? pi : 0.0};
}

double entropy_gap_series(double z2, double sigma2, int n_terms) {
    if (!(sigma2 > 1.5)) throw std::domain_error("entropy_gap_series: needs sigma2 > 3/2");
    const double r = (2.0 * sigma2 - 3.0 - z2) / (2.0 * (sigma2 - 1.0));
    if (r < 0.0 || r >= 1.0)
        throw std::domain_error("entropy_gap_series: needs 0 <= z^2 <= 2 sigma^2 - 3");
    double sum = 0.0;
    double p = r;
    for (int n = 2; n <= n_terms + 1; ++n) {
        p *= r;
        sum += p / n;
    }
    return sum;
}

LimitCurve conjectured_limit(double y2, double sigma2, Parity parity) {
    if (y2 < 0) throw std::invalid_argument("conjectured_limit: y2 must be >= 0");
    if (sigma2 < 0) throw std::invalid_argument("conjectured_limit: sigma2 must be >= 0");

    const double ystar2 = 1.0 + 2.0 * kappa_star() * (sigma2 - 1.0);  // = -z_*^2
    const double tangent2 = 3.0 - 2.0 * sigma2;                       // y^2 of curve tangency
    const bool even = parity == Parity::Even;

    LimitCurve out;
    auto record = [&](ThresholdCross::Kind kind, double at_y2) {
        if (at_y2 >= 0 && y2 >= at_y2) out.thresholds_crossed.push_back({kind, -at_y2});
    };
    record(ThresholdCross::SigmaGap, tangent2);
    record(ThresholdCross::Star, ystar2);

    auto symmetric = [&](int sign) {
        out.value = sign * limit_curve_L1(y2);
        out.branch = {BranchKind::Symmetric, sign};
    };
    auto broken = [&](int sign) {
        out.value = sign * limit_curve_L2(y2, sigma2);
        out.branch = {BranchKind::Broken, sign};
    };

    if (sigma2 >= 1.5) {
        if (y2 <= ystar2)
            broken(+1);
        else
            symmetric(even ? -1 : +1);
    } else if (sigma2 > 1.0) {
        if (y2 <= tangent2)
            symmetric(+1);
        else if (y2 < ystar2)
            broken(+1);
        else
            symmetric(even ? -1 : +1);
    } else if (sigma2 == 1.0) {
        if (even)
            symmetric(y2 <= 1.0 ? +1 : -1);  // |1 - y^2|
        else
            symmetric(+1);
    } else {
        if (y2 <= ystar2)
            symmetric(+1);
        else if (y2 < tangent2)
            broken(even ? -1 : +1);  // L2 < 0 here; even takes |L2|
        else
            symmetric(even ? -1 : +1);
    }
    return out;
}

}  // namespace gepoly
