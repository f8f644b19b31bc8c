#include "gepoly/moments_oracle.hpp"

#include <array>
#include <cmath>

namespace gepoly {

double SplitMix64::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Rational covariance_entry(const CovarianceSpec& spec, int k, int l) {
    if (k < 1 || k > spec.N || l < 1 || l > spec.N)
        throw std::out_of_range("covariance_entry: indices must be in 1..N");
    Rational off = (spec.sigma2 - 1) / spec.N;
    return k == l ? Rational(off + 1) : off;
}

namespace {

// Match the smallest unmatched slot against every later unmatched slot;
// each slot carries the label of the variable it belongs to. Products are
// kept on a per-depth stack so no rational is recomputed.
struct WickEnumerator {
    std::vector<int> label;  // slot -> variable label
    Rational diag, off;
    std::vector<Rational> prod;  // prod[d] = product of first d pair factors
    Rational total;

    void run() {
        prod.assign(label.size() / 2 + 1, Rational(1));
        total = 0;
        recurse(0u, 0);
    }

    void recurse(std::uint32_t used, int depth) {
        const int slots = static_cast<int>(label.size());
        int first = -1;
        for (int i = 0; i < slots; ++i) {
            if (!(used & (1u << i))) {
                first = i;
                break;
            }
        }
        if (first < 0) {
            total += prod[depth];
            return;
        }
        for (int j = first + 1; j < slots; ++j) {
            if (used & (1u << j)) continue;
            prod[depth + 1] = prod[depth] * (label[first] == label[j] ? diag : off);
            recurse(used | (1u << first) | (1u << j), depth + 1);
        }
    }
};

}  // namespace

Rational isserlis_moment_for(int N, std::span<const int> variables, const Rational& sigma2) {
    const int n = static_cast<int>(variables.size());
    if (n == 0) return Rational(1);
    if (n > 8) throw std::invalid_argument("isserlis_moment: n > 8 unsupported");
    CovarianceSpec spec(N, sigma2);
    WickEnumerator e;
    for (int v : variables) {
        if (v < 1 || v > N) throw std::out_of_range("isserlis_moment: variable label out of range");
        e.label.push_back(v);
        e.label.push_back(v);
    }
    e.diag = covariance_entry(spec, 1, 1);
    e.off = N > 1 ? covariance_entry(spec, 1, 2) : Rational(0);
    e.run();
    return e.total;
}

Rational isserlis_moment(int N, int n, const Rational& sigma2) {
    if (n < 0 || n > N) throw std::invalid_argument("isserlis_moment: need 0 <= n <= N");
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vars[i] = i + 1;
    return isserlis_moment_for(N, vars, sigma2);
}

Rational closed_form_moment(int N, int n, const Rational& sigma2) {
    if (N < 1) throw std::invalid_argument("closed_form_moment: N must be >= 1");
    if (n < 0 || n > N) throw std::invalid_argument("closed_form_moment: need 0 <= n <= N");
    Rational t = (sigma2 - 1) / N;
    Rational term(1), acc(1);
    for (int k = 1; k <= n; ++k) {
        term *= Rational(n - k + 1) * Rational(2 * k - 1) * t;
        term /= k;
        acc += term;
    }
    return acc;
}

std::vector<double> sample_vector(const CovarianceSpec& spec, SplitMix64& rng) {
    const int N = spec.N;
    const double s2 = to_double(spec.sigma2);
    std::vector<double> x(static_cast<std::size_t>(N));
    if (spec.sigma2 >= 1) {
        const double w = std::sqrt((s2 - 1.0) / N);
        const double y0 = rng.normal();
        for (int k = 0; k < N; ++k) x[k] = rng.normal() + w * y0;
        return x;
    }
    // Oblate regime: draw the rotated frame, then reflect e_1 into the
    // diagonal unit vector u = (1,...,1)/sqrt(N). The Householder map
    // H = I - 2 v v^T/|v|^2 with v = e_1 - u satisfies H e_1 = u, and any
    // orthogonal completion of the rotation works equally well.
    x[0] = std::sqrt(s2) * rng.normal();
    for (int k = 1; k < N; ++k) x[k] = rng.normal();
    if (N == 1) return x;
    const double invsqrtN = 1.0 / std::sqrt(double(N));
    std::vector<double> v(static_cast<std::size_t>(N), -invsqrtN);
    v[0] += 1.0;
    double vv = 0.0, vx = 0.0;
    for (int k = 0; k < N; ++k) {
        vv += v[k] * v[k];
        vx += v[k] * x[k];
    }
    const double c = 2.0 * vx / vv;
    for (int k = 0; k < N; ++k) x[k] -= c * v[k];
    return x;
}

McEstimate mc_expected_polynomial(int N, double z2, double sigma2, std::int64_t samples,
                                  std::uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("mc_expected_polynomial: samples must be >= 100");
    CovarianceSpec spec(N, Rational(sigma2));

    constexpr int kStreams = 64;
    struct Part {
        std::int64_t n = 0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::array<Part, kStreams> parts;

    for (int s = 0; s < kStreams; ++s) {
        std::int64_t quota = samples / kStreams + (s < samples % kStreams ? 1 : 0);
        SplitMix64 rng(seed, static_cast<std::uint64_t>(s));
        KahanSum sum, sumsq;
        for (std::int64_t i = 0; i < quota; ++i) {
            auto x = sample_vector(spec, rng);
            double p = 1.0;
            for (double xi : x) p *= xi * xi + z2;
            sum.add(p);
            sumsq.add(p * p);
        }
        if (quota > 0) {
            double mean = sum.get() / double(quota);
            parts[s] = {quota, mean, sumsq.get() - double(quota) * mean * mean};
        }
    }

    // pooled merge in fixed stream order
    Part acc;
    for (const Part& p : parts) {
        if (p.n == 0) continue;
        if (acc.n == 0) {
            acc = p;
            continue;
        }
        double delta = p.mean - acc.mean;
        std::int64_t n = acc.n + p.n;
        acc.m2 += p.m2 + delta * delta * (double(acc.n) * double(p.n) / double(n));
        acc.mean += delta * double(p.n) / double(n);
        acc.n = n;
    }

    McEstimate est;
    est.mean = acc.mean;
    est.samples = acc.n;
    est.seed = seed;
    est.stderr_ = acc.n > 1 ? std::sqrt(acc.m2 / double(acc.n - 1) / double(acc.n)) : 0.0;
    return est;
}

}  // namespace gepoly
