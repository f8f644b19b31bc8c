#include "gepoly/exact_core.hpp"

#include <algorithm>
#include <cmath>

namespace gepoly {

namespace {

void require_valid(int N, const Rational& sigma2) {
    if (N < 1) throw std::invalid_argument("E_N: N must be >= 1");
    if (sigma2 <= 0) throw std::domain_error("E_N: sigma2 must be > 0");
}

ComplexRational pow_complex(const ComplexRational& base, int e) {
    ComplexRational acc{Rational(1)};
    ComplexRational b = base;
    for (int n = e; n > 0; n >>= 1) {
        if (n & 1) acc = acc * b;
        if (n > 1) b = b * b;
    }
    return acc;
}

}  // namespace

std::vector<Rational> moment_values(int N, const Rational& sigma2) {
    require_valid(N, sigma2);
    // M_n = sum_k C(n,k) (2k-1)!! t^k with t = (sigma2-1)/N. The inner loop
    // runs over integers with the common denominator q^n so no gcd work
    // happens until the final reduction.
    Rational t = (sigma2 - 1) / N;
    const Integer p = t.get_num();
    const Integer q = t.get_den();

    std::vector<Rational> M(static_cast<std::size_t>(N) + 1);
    M[0] = 1;
    if (p == 0) {
        std::fill(M.begin(), M.end(), Rational(1));
        return M;
    }
    Integer qn(1), term, acc, kq;
    for (int n = 1; n <= N; ++n) {
        qn *= q;
        term = qn;
        acc = qn;
        for (int k = 1; k <= n; ++k) {
            term *= (n - k + 1) * (2L * k - 1);
            term *= p;
            kq = q * k;
            mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), kq.get_mpz_t());
            acc += term;
        }
        Rational m(acc, qn);
        m.canonicalize();
        M[n] = std::move(m);
    }
    return M;
}

BivariatePoly expected_polynomial(int N) {
    if (N < 1) throw std::invalid_argument("expected_polynomial: N must be >= 1");
    BivariatePoly poly;
    const Rational invN(1, N);
    for (int j = 0; j <= N; ++j) {
        const int n = N - j;
        const Rational cNj(binomial(N, j));
        // a_k = C(n,k) (2k-1)!! / N^k, then (sigma2 - 1)^k expanded
        Rational a(1);
        for (int k = 0; k <= n; ++k) {
            if (k > 0) {
                a *= Rational(n - k + 1) * Rational(2 * k - 1) * invN;
                a /= k;
            }
            for (int d = k; d >= 0; --d) {
                // C(k,d) (-1)^{k-d}
                Rational c = a * Rational(binomial(k, d)) * (((k - d) % 2) ? -1 : 1);
                poly.add_coeff(j, d, c * cNj);
            }
        }
    }
    return poly;
}

ComplexRational eval_with_moments(int N, const ComplexRational& z2,
                                  const std::vector<Rational>& M) {
    if (static_cast<int>(M.size()) != N + 1)
        throw std::invalid_argument("eval_with_moments: table size must be N+1");
    // Horner in z^2 over coefficients c_j = C(N,j) M_{N-j}
    Integer binom(1);  // C(N, j), starting at j = N
    ComplexRational acc{M[0]};
    for (int j = N - 1; j >= 0; --j) {
        binom *= (j + 1);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(N - j));
        acc = acc * z2 + ComplexRational{Rational(binom) * M[N - j]};
    }
    return acc;
}

ComplexRational eval_exact(int N, const ComplexRational& z2, const Rational& sigma2) {
    require_valid(N, sigma2);
    if (sigma2 == 1) {
        // i.i.d. case collapses to (1 + z^2)^N
        return pow_complex(z2 + ComplexRational{Rational(1)}, N);
    }
    return eval_with_moments(N, z2, moment_values(N, sigma2));
}

double to_double_saturating(const Rational& q) {
    BigFloat f(q, 64);
    return f.to_double();
}

mpfr_prec_t default_precision_bits(int N) { return 64 + 4 * static_cast<mpfr_prec_t>(N); }

EvalFloatResult eval_float(int N, std::complex<double> z2, double sigma2, mpfr_prec_t bits) {
    if (N < 1) throw std::invalid_argument("eval_float: N must be >= 1");
    if (!(sigma2 > 0)) throw std::domain_error("eval_float: sigma2 must be > 0");
    if (bits < 53) throw std::invalid_argument("eval_float: precision_bits must be >= 53");

    const BigFloat t = (BigFloat(sigma2, bits) - BigFloat(1.0, bits)) / BigFloat(double(N), bits);
    const BigComplex z2v(z2.real(), z2.imag(), bits);

    BigComplex acc(bits);
    BigComplex zpow(1.0, 0.0, bits);
    BigFloat binj(1.0, bits);  // C(N,j)
    BigFloat maxmag(0.0, bits);

    for (int j = 0; j <= N; ++j) {
        if (j > 0 && zpow.is_zero()) break;  // z^2 = 0: higher powers contribute nothing
        BigFloat f(1.0, bits);               // C(N-j,k) (2k-1)!! t^k
        for (int k = 0; k <= N - j; ++k) {
            BigComplex contrib = zpow * (binj * f);
            acc = acc + contrib;
            BigFloat m = contrib.mag_bound();
            if (maxmag < m) maxmag = m;
            f *= t;
            f.mul_si(static_cast<long>(N - j - k) * (2L * k + 1)).div_si(k + 1);
        }
        if (j < N) {
            binj.mul_si(N - j).div_si(j + 1);
            zpow = zpow * z2v;
        }
    }

    const double terms = 0.5 * double(N + 1) * double(N + 2);
    BigFloat err_abs = maxmag * BigFloat(terms, 64) * BigFloat::pow2(1 - static_cast<long>(bits));
    BigFloat mag = acc.mag_bound();

    // certify |err| <= |value| * 2^(-bits/2) in MPFR; double arithmetic
    // would under/overflow for large bit counts
    if (mag.is_zero() || err_abs > mag * BigFloat::pow2(-static_cast<long>(bits / 2))) {
        throw PrecisionLossError("eval_float: all significant digits lost at " +
                                     std::to_string(bits) + " bits (N=" + std::to_string(N) + ")",
                                 bits);
    }
    double rel_bound = (err_abs / mag).to_double();
    return {std::move(acc), bits, rel_bound};
}

EvalFloatResult eval_float_auto(int N, std::complex<double> z2, double sigma2, double rel_tol,
                                mpfr_prec_t start_bits, int max_doublings) {
    mpfr_prec_t bits = start_bits > 0 ? start_bits : default_precision_bits(N);
    for (int attempt = 0;; ++attempt) {
        try {
            EvalFloatResult r = eval_float(N, z2, sigma2, bits);
            if (r.rel_error_bound <= rel_tol) return r;
        } catch (const PrecisionLossError&) {
            if (attempt >= max_doublings) throw;
        }
        if (attempt >= max_doublings)
            throw PrecisionLossError("eval_float_auto: tolerance unreachable at " +
                                         std::to_string(bits) + " bits (N=" + std::to_string(N) + ")",
                                     bits);
        bits *= 2;
    }
}

double nth_root_value(int N, double z2, double sigma2, mpfr_prec_t bits) {
    ComplexRational value = eval_exact(N, ComplexRational{Rational(z2)}, Rational(sigma2));
    return signed_nth_root(value.re, N, bits);
}

}  // namespace gepoly
