#pragma once

#include <mpfr.h>

#include "gepoly/rational.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace gepoly {

// Raised when a floating evaluation cannot certify the requested number of
// significant bits (catastrophic cancellation ate the working precision).
class PrecisionLossError : public std::runtime_error {
public:
    PrecisionLossError(std::string what, long bits_used)
        : std::runtime_error(std::move(what)), bits_used(bits_used) {}
    long bits_used;
};

// Thin RAII wrapper around mpfr_t. Precision is fixed per value, in bits;
// binary operators allocate the result at the wider operand precision and
// round to nearest.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double d, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    BigFloat(const Rational& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    BigFloat operator+(const BigFloat& o) const { return binop(o, mpfr_add); }
    BigFloat operator-(const BigFloat& o) const { return binop(o, mpfr_sub); }
    BigFloat operator*(const BigFloat& o) const { return binop(o, mpfr_mul); }
    BigFloat operator/(const BigFloat& o) const { return binop(o, mpfr_div); }
    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(const BigFloat& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const BigFloat& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(const BigFloat& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& mul_si(long s) {
        mpfr_mul_si(v_, v_, s, MPFR_RNDN);
        return *this;
    }
    BigFloat& div_si(long s) {
        mpfr_div_si(v_, v_, s, MPFR_RNDN);
        return *this;
    }

    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator==(const BigFloat& o) const { return cmp(o) == 0; }

    friend BigFloat abs(const BigFloat& x) {
        BigFloat r(x.precision());
        mpfr_abs(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log(const BigFloat& x) {
        BigFloat r(x.precision());
        mpfr_log(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat exp(const BigFloat& x) {
        BigFloat r(x.precision());
        mpfr_exp(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& x) {
        BigFloat r(x.precision());
        mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    // 2^e as an exact BigFloat, handy for error thresholds
    static BigFloat pow2(long e, mpfr_prec_t prec = 64) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

private:
    template <typename Op>
    BigFloat binop(const BigFloat& o, Op op) const {
        BigFloat r(std::max(precision(), o.precision()));
        op(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

// Complex value on top of BigFloat; only the handful of operations the
// evaluation loops need.
struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    BigComplex operator+(const BigComplex& o) const { return {re + o.re, im + o.im}; }
    BigComplex operator*(const BigComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    BigComplex operator*(const BigFloat& s) const { return {re * s, im * s}; }

    // |re| + |im|: cheap magnitude bound, within a factor sqrt(2) of |.|
    BigFloat mag_bound() const { return abs(re) + abs(im); }

    std::pair<double, double> to_doubles() const { return {re.to_double(), im.to_double()}; }
};

// sign(x) * |x|^(1/n) computed from an exact rational, at `bits` working
// precision (result is returned as a double, so bits >= 53 suffices unless
// |x| is extreme).
double signed_nth_root(const Rational& x, long n, mpfr_prec_t bits = 128);

}  // namespace gepoly
