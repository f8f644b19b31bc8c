#include "gepoly/convergence_lab.hpp"

#include "gepoly/parallel.hpp"

#include <cmath>
#include <limits>

namespace gepoly {

namespace {

std::vector<int> n_values(const StudyConfig& cfg) {
    if (!cfg.n_list.empty()) return cfg.n_list;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cfg.n_max));
    for (int n = 1; n <= cfg.n_max; ++n) out.push_back(n);
    return out;
}

double signed_nth_root_bigfloat(const BigFloat& x, int n) {
    int s = x.sign();
    if (s == 0) return 0.0;
    BigFloat a = abs(x);
    return s * exp(log(a).div_si(n)).to_double();
}

LimitCurve reference_limit(double z2, double sigma2, Parity parity) {
    if (z2 >= 0) return limit_real(z2, sigma2);
    return conjectured_limit(-z2, sigma2, parity);
}

}  // namespace

std::vector<SequenceRecord> nth_root_sequence(const StudyConfig& cfg, double z2, double sigma2) {
    const std::vector<int> ns = n_values(cfg);
    std::vector<SequenceRecord> out(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) {
        const int N = ns[i];
        SequenceRecord rec;
        rec.N = N;
        rec.parity = parity_of(N);
        rec.z2 = z2;
        rec.sigma2 = sigma2;
        LimitCurve ref = reference_limit(z2, sigma2, rec.parity);
        rec.ref_limit = ref.value;
        rec.branch = ref.branch;

        if (N <= cfg.exact_cutoff || sigma2 == 1.0) {
            Rational E = eval_exact(N, ComplexRational{Rational(z2)}, Rational(sigma2)).re;
            rec.value = to_double_saturating(E);
            rec.nth_root = signed_nth_root(E, N);
            rec.bits = 0;  // exact
        } else {
            EvalFloatResult r = eval_float_auto(N, {z2, 0.0}, sigma2, cfg.float_rel_tol,
                                                cfg.precision_bits > 0 ? cfg.precision_bits : 0);
            rec.value = r.value.re.to_double();
            rec.nth_root = signed_nth_root_bigfloat(r.value.re, N);
            rec.bits = r.bits;
        }
        rec.abs_err = std::fabs(rec.nth_root - rec.ref_limit);
        out[i] = rec;
    });
    return out;
}

std::vector<SequenceRecord> scaled_ratio_sequence(const StudyConfig& cfg, double z2, double sigma2) {
    const std::vector<int> ns = n_values(cfg);
    std::vector<SequenceRecord> out(ns.size());
    const double ref = scaled_limit({z2, 0.0}, sigma2).real();
    parallel_for(ns.size(), [&](std::size_t i) {
        const int N = ns[i];
        SequenceRecord rec;
        rec.N = N;
        rec.parity = parity_of(N);
        rec.z2 = z2;
        rec.sigma2 = sigma2;
        rec.ref_limit = ref;
        rec.branch = {sigma2 <= 1.5 ? BranchKind::Symmetric : BranchKind::Broken, +1};

        if (N <= cfg.exact_cutoff || sigma2 == 1.0) {
            Rational s2(sigma2);
            ComplexRational num, den;
            if (s2 == 1) {
                num = eval_exact(N, ComplexRational{Rational(z2) / N}, s2);
                den = eval_exact(N, ComplexRational{Rational(0)}, s2);
            } else {
                auto M = moment_values(N, s2);
                num = eval_with_moments(N, ComplexRational{Rational(z2) / N}, M);
                den = eval_with_moments(N, ComplexRational{Rational(0)}, M);
            }
            if (den.re == 0)
                throw std::domain_error("scaled_ratio_sequence: E_N(0; sigma) vanished");
            rec.value = to_double_saturating(num.re / den.re);
            rec.bits = 0;
        } else {
            EvalFloatResult num = eval_float_auto(N, {z2 / N, 0.0}, sigma2, cfg.float_rel_tol,
                                                  cfg.precision_bits > 0 ? cfg.precision_bits : 0);
            EvalFloatResult den = eval_float_auto(N, {0.0, 0.0}, sigma2, cfg.float_rel_tol,
                                                  cfg.precision_bits > 0 ? cfg.precision_bits : 0);
            if (den.value.re.is_zero())
                throw std::domain_error("scaled_ratio_sequence: E_N(0; sigma) vanished");
            rec.value = (num.value.re / den.value.re).to_double();
            rec.bits = std::max(num.bits, den.bits);
        }
        rec.nth_root = std::numeric_limits<double>::quiet_NaN();
        rec.abs_err = std::fabs(rec.value - rec.ref_limit);
        out[i] = rec;
    });
    return out;
}

double odd_sign_change(int N, const Rational& sigma2, Rational lo, Rational hi, int iterations) {
    if (N % 2 == 0) throw std::invalid_argument("odd_sign_change: N must be odd");
    auto sign_at = [&](const Rational& y2) {
        return sgn(eval_exact(N, ComplexRational{Rational(-y2)}, sigma2).re);
    };
    int slo = sign_at(lo);
    int shi = sign_at(hi);
    if (slo == 0) return to_double(lo);
    if (shi == 0) return to_double(hi);
    if (slo == shi) throw std::invalid_argument("odd_sign_change: endpoints do not bracket a flip");
    for (int i = 0; i < iterations; ++i) {
        Rational mid = (lo + hi) / 2;
        int sm = sign_at(mid);
        if (sm == 0) return to_double(mid);
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return to_double((lo + hi) / 2);
}

SignAuditResult sign_audit(const StudyConfig& cfg, const Rational& sigma2,
                           const std::vector<Rational>& y2_grid) {
    SignAuditResult res;
    for (int N : n_values(cfg)) {
        std::vector<int> signs;
        signs.reserve(y2_grid.size());
        auto M = (sigma2 == 1) ? std::vector<Rational>{} : moment_values(N, sigma2);
        for (const Rational& y2 : y2_grid) {
            ComplexRational z2{Rational(-y2)};
            Rational E = (sigma2 == 1) ? eval_exact(N, z2, sigma2).re : eval_with_moments(N, z2, M).re;
            int s = sgn(E);
            if (N % 2 == 0 && s < 0)
                throw std::logic_error("sign_audit: negative even-N value (evaluator bug)");
            res.rows.push_back({N, y2, s});
            signs.push_back(s);
        }
        if (N % 2 == 1) {
            for (std::size_t i = 1; i < y2_grid.size(); ++i) {
                if (signs[i - 1] != 0 && signs[i] != 0 && signs[i - 1] != signs[i])
                    res.odd_sign_changes.push_back(
                        {N, odd_sign_change(N, sigma2, y2_grid[i - 1], y2_grid[i])});
            }
        }
    }
    return res;
}

PositivitySeries positivity_series(int K, const Rational& z2, const Rational& sigma2, int j_max) {
    if (K < 1) throw std::invalid_argument("positivity_series: K must be >= 1");
    if (sigma2 < 1) throw std::domain_error("positivity_series: restricted to sigma^2 >= 1");
    if (j_max < 0) throw std::invalid_argument("positivity_series: j_max must be >= 0");

    // Effective-variance reduction: the Gaussian weight inside Upsilon is the
    // same covariance family with sigma_e^2 = 2 sigma^2/(sigma^2+1), so
    //   I_j = (2 pi)^{K/2} sigma_e j! [theta^j] G(theta),
    //   G(theta) = e^{K sigma_e^2 theta^2 / 2} E_t[(z^2+1+(a t + sigma_e^2 theta)^2)^K],
    // with a^2 = (sigma_e^2-1)/K and t standard normal. Only even powers of
    // a and t survive, so every coefficient is rational.
    const Rational se2 = 2 * sigma2 / (sigma2 + 1);
    const Rational a2 = (se2 - 1) / K;
    const Rational beta = (1 - Rational(1) / sigma2) / (2 * K);
    const Rational c = Rational(K) * se2 / 2;
    const Rational A0 = z2 + 1;
    const Rational A2 = se2 * se2;

    // P[v] = coefficient of theta^v in E_t[(A + B t + C t^2)^K]
    std::vector<Rational> P(static_cast<std::size_t>(2 * K) + 1, Rational(0));
    std::vector<Integer> fact(static_cast<std::size_t>(K) + 1);
    fact[0] = 1;
    for (int i = 1; i <= K; ++i) fact[i] = fact[i - 1] * i;
    for (int p = 0; p <= K; ++p) {
        for (int q = 0; q <= K - p; q += 2) {
            const int r = K - p - q;
            const Rational multinom(fact[K] / (fact[p] * fact[q] * fact[r]));
            const Rational moment = odd_double_factorial((q + 2 * r) / 2);
            // B^q = (2 sigma_e^2)^q (a^2)^{q/2} theta^q ; C^r = (a^2)^r
            const Rational bq = pow_rational(2 * se2, q) * pow_rational(a2, q / 2);
            const Rational cr = pow_rational(a2, r);
            for (int u = 0; u <= p; ++u) {
                const Rational term = multinom * moment * bq * cr * Rational(binomial(p, u)) *
                                      pow_rational(A0, p - u) * pow_rational(A2, u);
                P[static_cast<std::size_t>(q + 2 * u)] += term;
            }
        }
    }

    // exp(c theta^2) convolution: g_j = sum_m (c^m/m!) P[j-2m]
    const int half = j_max / 2;
    std::vector<Rational> epow(static_cast<std::size_t>(half) + 1);
    epow[0] = 1;
    for (int m = 1; m <= half; ++m) epow[m] = epow[m - 1] * c / m;

    // prefactor 2 sigma/(sigma^2+1), the only irrational factor
    BigFloat pref = (BigFloat(2.0, 256) * sqrt(BigFloat(sigma2, 256))) /
                    BigFloat(Rational(sigma2 + 1), 256);

    PositivitySeries out;
    out.partial_sums.reserve(static_cast<std::size_t>(j_max) + 1);
    Rational running(0);
    Rational jfact(1);
    for (int j = 0; j <= j_max; ++j) {
        if (j > 0) jfact *= j;
        if (j % 2 == 0) {
            Rational gj(0);
            for (int m = 0; m <= j / 2; ++m) {
                const int v = j - 2 * m;
                if (v <= 2 * K) gj += epow[m] * P[static_cast<std::size_t>(v)];
            }
            running += jfact * pow_rational(beta, j) * gj * gj;
        }
        out.partial_sums.push_back((BigFloat(running, 256) * pref).to_double());
    }

    // Closed-form j = 0 term: (sigma_e^2 / sigma) E_K(z; sigma_e)^2.
    Rational ek = eval_exact(K, ComplexRational{z2}, se2).re;
    out.j0_lower_bound =
        (BigFloat(se2 * ek * ek, 256) / sqrt(BigFloat(sigma2, 256))).to_double();
    return out;
}

std::vector<SequenceRecord> fixed_point_scan(const std::vector<double>& sigma_grid, double y2,
                                             int n_max) {
    if (!(y2 > 0)) throw std::invalid_argument("fixed_point_scan: y2 must be > 0");
    std::vector<SequenceRecord> out;
    for (double sigma : sigma_grid) {
        const double sigma2 = sigma * sigma;
        if (!(sigma2 > 0)) continue;  // sigma = 0 has no law
        Rational s2(sigma2);
        for (int N = 1; N <= n_max; ++N) {
            SequenceRecord rec;
            rec.N = N;
            rec.parity = parity_of(N);
            rec.z2 = -y2;
            rec.sigma2 = sigma2;
            Rational E = eval_exact(N, ComplexRational{Rational(-y2)}, s2).re;
            rec.value = to_double_saturating(E);
            rec.nth_root = signed_nth_root(E, N);
            LimitCurve ref = conjectured_limit(y2, sigma2, rec.parity);
            rec.ref_limit = ref.value;
            rec.branch = ref.branch;
            rec.abs_err = std::fabs(rec.nth_root - rec.ref_limit);
            rec.bits = 0;
            out.push_back(rec);
        }
    }
    return out;
}

double fixed_point_spread(double y2, double sigma, int n_max, Parity parity) {
    if (!(y2 > 0) || !(sigma > 0)) throw std::invalid_argument("fixed_point_spread: need y2, sigma > 0");
    Rational s2(sigma);
    s2 *= s2;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int N = (parity == Parity::Even ? 2 : 1); N <= n_max; N += 2) {
        double v = to_double_saturating(eval_exact(N, ComplexRational{Rational(-y2)}, s2).re);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo <= hi)) throw std::invalid_argument("fixed_point_spread: empty N range");
    return hi - lo;
}

std::pair<double, double> plateau_window(double y2) {
    const double k = kappa_star();
    const double hi2 = 1.0 + (y2 - 1.0) / (2.0 * k);
    const double lo2 = (3.0 - y2) / 2.0;
    double lo = lo2 > 0 ? std::sqrt(lo2) : 0.0;
    double hi = hi2 > 0 ? std::sqrt(hi2) : 0.0;
    return {lo, hi};  // empty when lo >= hi (possible for y^2 <= 1)
}

}  // namespace gepoly
