#pragma once

#include <complex>
#include <vector>

namespace gepoly {

// Large-N limit objects: the real-z limit curve, the scaled complex limit,
// the conjectured imaginary-z piecewise limits with their sign flips, the
// mean-field fixed points m_0 / m_pm, the one-point critical densities, and
// the entropy values whose exponentials reproduce the limit candidates.

enum class BranchKind { Symmetric, Broken };  // m = 0 vs m = m_pm
enum class Parity { Even, Odd };

inline Parity parity_of(int N) { return (N % 2 == 0) ? Parity::Even : Parity::Odd; }

struct Branch {
    BranchKind kind = BranchKind::Symmetric;
    int sign = +1;  // multiplier applied to the branch curve; -1 only for imaginary z
};

struct ThresholdCross {
    enum Kind {
        SigmaGap,  // z^2 = 2 sigma^2 - 3 (tangency of the two curves)
        Star,      // z^2 = z_*^2(sigma^2)
    } kind;
    double z2;
};

// A tagged limit value at one parameter point. value = sign * (branch curve).
struct LimitCurve {
    double value = 0.0;
    Branch branch;
    std::vector<ThresholdCross> thresholds_crossed;  // passed when walking out from z^2 = +inf
};

// Unique root of kappa = exp(-kappa - 1); |kappa - exp(-kappa-1)| < tol.
// Bisection on [0,1] followed by Newton polishing.
double kappa_star(double tol = 1e-14);

// z_*^2(sigma^2) = 2 kappa_* (1 - sigma^2) - 1, monotone decreasing in sigma^2.
double z_star_squared(double sigma2);

// lim E_N^{1/N} for real z: 1 + z^2 when z^2 >= 2 sigma^2 - 3, otherwise
// 2(sigma^2-1) exp((1+z^2)/(2(sigma^2-1)) - 1). Requires z2 >= 0.
LimitCurve limit_real(double z2, double sigma2);

// lim E_N(z/sqrt(N))/E_N(0): exp(z^2) for sigma^2 <= 3/2, else
// exp(z^2 / (2(sigma^2-1))).
std::complex<double> scaled_limit(std::complex<double> z2, double sigma2);

// m_pm^2 = sigma^4 (2(sigma^2-1) - 1 - z^2) / (sigma^2-1)^2. Negative values
// mean the nonzero fixed points are purely imaginary. sigma^2 = 1 rejected.
double m_pm_squared(double z2, double sigma2);

// Residual m - m (1-1/sigma^2) (z^2+3+(1-1/sigma^2)^2 m^2)/(z^2+1+(1-1/sigma^2)^2 m^2);
// vanishes at m = 0 and m = +-sqrt(m_pm_squared). Throws on the pole
// z^2 + 1 + (1-1/sigma^2)^2 m^2 = 0.
std::complex<double> mean_fixed_point_residual(std::complex<double> m, double z2, double sigma2);

// One-point critical density nu(x) ~ (x^2+z^2) exp(-x^2/2 + (1-1/sigma^2) m x),
// with the normalization known in closed form through Gaussian moments.
struct CriticalDensity {
    double z2 = 0.0;
    double sigma2 = 1.0;
    std::complex<double> m;  // 0, or the principal sqrt of m_pm_squared

    // (1/sqrt(2pi)) integral (x^2+z^2) e^{-x^2/2 + b x} dx = e^{b^2/2}(1+b^2+z^2)
    // with b = (1-1/sigma^2) m; equals 1+z^2 on the symmetric branch and
    // 2(sigma^2-1) e^{(2 sigma^2 - 3 - z^2)/2} on the broken one.
    std::complex<double> normalizer() const;

    // density value at x (complex for imaginary m)
    std::complex<double> density(double x) const;

    // integral x^{-2} nu(x) dx, defined for z2 = 0 only: 1/(1+b^2)
    std::complex<double> inverse_second_moment() const;
};

// Throws std::domain_error when the normalizer vanishes (symmetric branch at
// z^2 = -1) and std::domain_error for the broken branch at sigma^2 = 1.
CriticalDensity critical_density(double z2, double sigma2, Branch branch);

// Critical value of the (signed) entropy for the given branch. The real part
// is ln|.|; the imaginary part is pi exactly when the branch value is
// negative (principal continuation, l = 0). exp(entropy_value) reproduces
// the signed limit candidate.
std::complex<double> entropy_value(double z2, double sigma2, BranchKind branch);

// Partial sum of sum_{n>=2} (1/n) [(2 sigma^2 - 3 - z^2)/(2(sigma^2-1))]^n,
// the entropy gap between the broken and symmetric branches. Requires
// 0 <= z^2 <= 2 sigma^2 - 3 (ratio in [0,1)).
double entropy_gap_series(double z2, double sigma2, int n_terms);

// Conjectured limit of the parity-N subsequence of E_N^{1/N}(iy; sigma),
// as a function of y^2 >= 0 and sigma^2 >= 0. Boundary inequalities follow
// the printed case table exactly.
LimitCurve conjectured_limit(double y2, double sigma2, Parity parity);

// Analytic continuations of the two real-z limit curves to z = iy:
// L1(y) = 1 - y^2 and L2(y;sigma) = 2(sigma^2-1) exp((1-y^2)/(2(sigma^2-1)) - 1).
double limit_curve_L1(double y2);
double limit_curve_L2(double y2, double sigma2);  // sigma^2 != 1

}  // namespace gepoly
