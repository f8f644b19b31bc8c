#include <doctest.h>

#include "gepoly/records.hpp"
#include "gepoly/rng.hpp"

#include <cmath>
#include <limits>
#include <string>

using namespace gepoly;

namespace {

bool same_double(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

bool rows_equal(const OutputRow& a, const OutputRow& b) {
    return a.N == b.N && a.parity == b.parity && same_double(a.z2_re, b.z2_re) &&
           same_double(a.z2_im, b.z2_im) && same_double(a.sigma2, b.sigma2) &&
           same_double(a.value, b.value) && same_double(a.nth_root, b.nth_root) &&
           same_double(a.ref_limit, b.ref_limit) && same_double(a.abs_err, b.abs_err) &&
           a.branch == b.branch && a.sign == b.sign && a.bits == b.bits && a.seed == b.seed;
}

}  // namespace

TEST_CASE("17-digit serialization round-trips doubles exactly") {
    SplitMix64 rng(0xDECAF);
    for (int trial = 0; trial < 200; ++trial) {
        OutputRow row;
        row.N = static_cast<int>(rng.next() % 1000) + 1;
        row.parity = parity_of(row.N);
        row.z2_re = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.next() % 40) - 20);
        row.z2_im = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
        row.sigma2 = 4.0 * rng.uniform();
        row.value = std::ldexp(rng.uniform(), static_cast<int>(rng.next() % 200) - 100);
        row.nth_root = rng.uniform() * 10 - 5;
        row.ref_limit = rng.uniform() * 10 - 5;
        row.abs_err = std::fabs(row.nth_root - row.ref_limit);
        row.branch = rng.next() % 2 ? BranchKind::Broken : BranchKind::Symmetric;
        row.sign = rng.next() % 2 ? 1 : -1;
        row.bits = static_cast<long>(rng.next() % 4096);
        row.seed = rng.next();
        CHECK(rows_equal(parse_csv_row(to_csv(row)), row));
    }
}

TEST_CASE("special values survive the round trip") {
    OutputRow row;
    row.N = 7;
    row.parity = Parity::Odd;
    row.value = std::numeric_limits<double>::infinity();
    row.nth_root = std::numeric_limits<double>::quiet_NaN();
    row.ref_limit = -std::numeric_limits<double>::infinity();
    CHECK(rows_equal(parse_csv_row(to_csv(row)), row));
}

TEST_CASE("header and malformed rows") {
    CHECK(std::string(kCsvHeaderV1) ==
          "N,parity,z2_re,z2_im,sigma2,value,nth_root,ref_limit,abs_err,branch,sign,bits,seed");
    CHECK_THROWS_AS(parse_csv_row("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv_row("1,sideways,0,0,1,0,0,0,0,symmetric,1,0,0"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_csv_row("1,odd,0,0,1,0,0,0,0,twisted,1,0,0"), std::invalid_argument);
}

TEST_CASE("json mirrors the csv fields") {
    OutputRow row;
    row.N = 3;
    row.parity = Parity::Odd;
    row.z2_re = -2.0;
    row.sigma2 = 1.5;
    row.value = 0.25;
    row.nth_root = -0.5;
    row.ref_limit = -0.5;
    row.abs_err = 0.0;
    row.branch = BranchKind::Broken;
    row.sign = 1;
    std::string js = to_json(row);
    CHECK(js.find("\"N\":3") != std::string::npos);
    CHECK(js.find("\"parity\":\"odd\"") != std::string::npos);
    CHECK(js.find("\"branch\":\"broken\"") != std::string::npos);
    CHECK(js.find("\"z2_re\":-2") != std::string::npos);
}
