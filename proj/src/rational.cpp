#include "gepoly/rational.hpp"

#include "gepoly/complex_rational.hpp"

#include <cctype>

namespace gepoly {

Rational odd_double_factorial(long k) {
    if (k < 0) throw std::invalid_argument("odd_double_factorial: k must be >= 0");
    if (k == 0) return Rational(1);
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(2 * k - 1));
    return Rational(r);
}

Integer binomial(unsigned long n, unsigned long k) {
    if (k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');

    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t p = from; p < to; ++p)
            if (!std::isdigit(static_cast<unsigned char>(s[p]))) return false;
        return true;
    };

    Rational value;
    std::size_t slash = s.find('/', i);
    std::size_t dot = s.find('.', i);
    if (slash != std::string::npos) {
        if (!digits(i, slash) || !digits(slash + 1, s.size()))
            throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
        Integer num(s.substr(i, slash - i));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        value = Rational(num, den);
        value.canonicalize();
    } else if (dot != std::string::npos) {
        std::string ipart = s.substr(i, dot - i);
        std::string fpart = s.substr(dot + 1);
        if (ipart.empty() && fpart.empty())
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
        if ((!ipart.empty() && !digits(i, dot)) || (!fpart.empty() && !digits(dot + 1, s.size())))
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
        Integer num(ipart.empty() ? std::string("0") : ipart);
        for (char c : fpart) {
            num *= 10;
            num += c - '0';
        }
        Integer den(1);
        for (std::size_t p = 0; p < fpart.size(); ++p) den *= 10;
        value = Rational(num, den);
        value.canonicalize();
    } else {
        if (!digits(i, s.size()))
            throw std::invalid_argument("parse_rational: bad integer '" + text + "'");
        value = Rational(Integer(s.substr(i)));
    }
    return neg ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const ComplexRational& z) {
    if (z.is_real()) return to_string(z.re);
    std::string s = to_string(z.re);
    s += (z.im < 0) ? "-" : "+";
    Rational a = abs(z.im);
    if (a != 1) s += to_string(a);
    s += "i";
    return s;
}

ComplexRational parse_complex_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("parse_complex_rational: empty input");

    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        // find the sign separating real and imaginary components, skipping a
        // leading sign on the real part
        std::size_t split = std::string::npos;
        for (std::size_t p = s.size(); p-- > 1;) {
            if (s[p] == '+' || s[p] == '-') {
                split = p;
                break;
            }
        }
        std::string im_part;
        std::string re_part;
        if (split == std::string::npos) {
            im_part = s;
        } else {
            re_part = s.substr(0, split);
            im_part = s.substr(split);
        }
        if (im_part.empty() || im_part == "+") im_part = "1";
        if (im_part == "-") im_part = "-1";
        Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
        return {re, parse_rational(im_part)};
    }
    return {parse_rational(s)};
}

Rational pow_rational(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    bool inv = exp < 0;
    unsigned long e = static_cast<unsigned long>(inv ? -exp : exp);
    if (inv && base == 0) throw std::domain_error("pow_rational: 0 to negative power");
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    // base canonical => base^e canonical
    if (inv) return Rational(1) / r;
    return r;
}

}  // namespace gepoly
