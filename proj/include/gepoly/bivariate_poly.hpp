#pragma once

#include "gepoly/complex_rational.hpp"
#include "gepoly/rational.hpp"

#include <map>
#include <string>
#include <utility>

namespace gepoly {

// Sparse exact polynomial in the two variables z^2 and sigma^2. Keys are
// (j, d) = (z^2 degree, sigma^2 degree); zero coefficients are never stored.
class BivariatePoly {
public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, Rational>;

    const Map& coeffs() const { return coeffs_; }

    Rational coeff(int j, int d) const;
    void set_coeff(int j, int d, Rational value);
    void add_coeff(int j, int d, const Rational& value);

    int degree_z2() const;

    // Exact value at a point.
    ComplexRational eval(const ComplexRational& z2, const Rational& sigma2) const;

    // Collapses sigma^2 to a fixed rational, leaving a polynomial in z^2
    // alone: returns map j -> coefficient.
    std::map<int, Rational> substitute_sigma2(const Rational& sigma2) const;

    bool operator==(const BivariatePoly& o) const { return coeffs_ == o.coeffs_; }

    // Human-readable form like "z^4 + z^2*(s^2 + 1) + ...", mostly for the CLI.
    std::string to_string() const;

private:
    Map coeffs_;
};

}  // namespace gepoly
