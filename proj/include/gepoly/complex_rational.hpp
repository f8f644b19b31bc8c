#pragma once

#include "gepoly/rational.hpp"

#include <complex>
#include <string>

namespace gepoly {

// Exact complex number with rational real and imaginary parts. Covers the
// whole z^2 plane handled by the library: z real gives z^2 >= 0, z imaginary
// gives z^2 < 0, and general complex z^2 is needed for the scaled-limit
// checks.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational r) : re(std::move(r)) {}
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im == 0; }

    ComplexRational operator+(const ComplexRational& o) const { return {re + o.re, im + o.im}; }
    ComplexRational operator-(const ComplexRational& o) const { return {re - o.re, im - o.im}; }
    ComplexRational operator*(const ComplexRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexRational operator*(const Rational& s) const { return {re * s, im * s}; }
    bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }

    std::complex<double> to_complex_double() const { return {re.get_d(), im.get_d()}; }
};

// "p/q" for real values, "a+bi" otherwise.
std::string to_string(const ComplexRational& z);

// Parses "a", "bi", or "a+bi" / "a-bi" where each component is an integer,
// fraction, or decimal. A bare "i" means 1i.
ComplexRational parse_complex_rational(const std::string& text);

}  // namespace gepoly
