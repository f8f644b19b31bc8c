#include "gepoly/bivariate_poly.hpp"

#include <sstream>

namespace gepoly {

Rational BivariatePoly::coeff(int j, int d) const {
    auto it = coeffs_.find({j, d});
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void BivariatePoly::set_coeff(int j, int d, Rational value) {
    if (value == 0)
        coeffs_.erase({j, d});
    else
        coeffs_[{j, d}] = std::move(value);
}

void BivariatePoly::add_coeff(int j, int d, const Rational& value) {
    auto it = coeffs_.find({j, d});
    if (it == coeffs_.end()) {
        if (value != 0) coeffs_.emplace(Key{j, d}, value);
        return;
    }
    it->second += value;
    if (it->second == 0) coeffs_.erase(it);
}

int BivariatePoly::degree_z2() const {
    int deg = 0;
    for (const auto& [key, _] : coeffs_) deg = std::max(deg, key.first);
    return deg;
}

ComplexRational BivariatePoly::eval(const ComplexRational& z2, const Rational& sigma2) const {
    ComplexRational total;
    ComplexRational zpow{Rational(1)};
    int zdeg = 0;
    for (const auto& [j, coeff] : substitute_sigma2(sigma2)) {
        while (zdeg < j) {
            zpow = zpow * z2;
            ++zdeg;
        }
        total = total + zpow * coeff;
    }
    return total;
}

std::map<int, Rational> BivariatePoly::substitute_sigma2(const Rational& sigma2) const {
    std::map<int, Rational> out;
    for (const auto& [key, c] : coeffs_) {
        auto [j, d] = key;
        Rational term = c * pow_rational(sigma2, d);
        auto it = out.find(j);
        if (it == out.end())
            out.emplace(j, std::move(term));
        else
            it->second += term;
    }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

std::string BivariatePoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest z^2 power first
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const auto& [key, c] = *it;
        auto [j, d] = key;
        if (!first) os << " + ";
        first = false;
        os << gepoly::to_string(c);
        if (j > 0) os << "*z^" << 2 * j;
        if (d > 0) os << "*s2^" << d;
    }
    return os.str();
}

}  // namespace gepoly
