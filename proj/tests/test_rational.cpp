#include <doctest.h>

#include "gepoly/complex_rational.hpp"
#include "gepoly/rational.hpp"

using namespace gepoly;

TEST_CASE("odd_double_factorial small values") {
    CHECK(odd_double_factorial(0) == 1);
    CHECK(odd_double_factorial(1) == 1);
    CHECK(odd_double_factorial(3) == 15);
}

TEST_CASE("odd_double_factorial equals (2k)!/(2^k k!)") {
    // independent route through plain factorials
    for (long k = 0; k <= 20; ++k) {
        Integer num, den;
        mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(2 * k));
        mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(k));
        den <<= static_cast<unsigned long>(k);
        Rational expect(num, den);
        expect.canonicalize();
        CHECK(odd_double_factorial(k) == expect);
    }
    CHECK_THROWS_AS(odd_double_factorial(-1), std::invalid_argument);
}

TEST_CASE("binomial") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(30, 15) == Integer("155117520"));
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("-1.25") == Rational(-5, 4));
    CHECK(parse_rational("2.") == Rational(2));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("+7") == Rational(7));
    CHECK(parse_rational(" 1 / 2 ") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
}

TEST_CASE("rational to_string") {
    CHECK(to_string(Rational(11, 4)) == "11/4");
    CHECK(to_string(Rational(32)) == "32");
    CHECK(to_string(Rational(-1, 2)) == "-1/2");
}

TEST_CASE("pow_rational") {
    CHECK(pow_rational(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(pow_rational(Rational(2, 3), 0) == 1);
    CHECK(pow_rational(Rational(2, 3), -2) == Rational(9, 4));
    CHECK_THROWS_AS(pow_rational(Rational(0), -1), std::domain_error);
}

TEST_CASE("parse_complex_rational") {
    CHECK(parse_complex_rational("2") == ComplexRational{Rational(2)});
    CHECK(parse_complex_rational("-1.5") == ComplexRational{Rational(-3, 2)});
    CHECK(parse_complex_rational("1+2i") == ComplexRational(Rational(1), Rational(2)));
    CHECK(parse_complex_rational("1-2i") == ComplexRational(Rational(1), Rational(-2)));
    CHECK(parse_complex_rational("2i") == ComplexRational(Rational(0), Rational(2)));
    CHECK(parse_complex_rational("-i") == ComplexRational(Rational(0), Rational(-1)));
    CHECK(parse_complex_rational("3/4-1/4i") == ComplexRational(Rational(3, 4), Rational(-1, 4)));
    CHECK(to_string(parse_complex_rational("3/4-1/4i")) == "3/4-1/4i");
    CHECK_THROWS_AS(parse_complex_rational("1+"), std::invalid_argument);
}

TEST_CASE("complex arithmetic") {
    ComplexRational a(Rational(1), Rational(2));
    ComplexRational b(Rational(-3), Rational(1, 2));
    CHECK((a * b) == ComplexRational(Rational(-4), Rational(-11, 2)));
    CHECK((a + b) == ComplexRational(Rational(-2), Rational(5, 2)));
    CHECK(a.is_real() == false);
    CHECK(ComplexRational{Rational(7)}.is_real());
}
