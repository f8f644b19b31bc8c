#include "gepoly/bigfloat.hpp"

namespace gepoly {

double signed_nth_root(const Rational& x, long n, mpfr_prec_t bits) {
    if (n <= 0) throw std::invalid_argument("signed_nth_root: n must be positive");
    int s = sgn(x);
    if (s == 0) return 0.0;
    if (bits < 64) bits = 64;
    BigFloat v(abs(Rational(x)), bits);
    // |x|^(1/n) = exp(log|x| / n); log/exp keeps the huge exponents of
    // E_N at N ~ 1000 well inside double range after the 1/n scaling.
    BigFloat r = exp(log(v).div_si(n));
    return s * r.to_double();
}

}  // namespace gepoly
