#pragma once

#include "gepoly/convergence_lab.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gepoly {

// Flattened SequenceRecord plus run metadata; one CSV/JSON row. Numbers are
// serialized with 17 significant digits so parsing them back reconstructs
// the doubles exactly.

inline constexpr const char* kCsvHeaderV1 =
    "N,parity,z2_re,z2_im,sigma2,value,nth_root,ref_limit,abs_err,branch,sign,bits,seed";

struct OutputRow {
    int N = 0;
    Parity parity = Parity::Odd;
    double z2_re = 0.0;
    double z2_im = 0.0;
    double sigma2 = 1.0;
    double value = 0.0;
    double nth_root = 0.0;
    double ref_limit = 0.0;
    double abs_err = 0.0;
    BranchKind branch = BranchKind::Symmetric;
    int sign = +1;
    long bits = 0;
    std::uint64_t seed = 0;

    static OutputRow from(const SequenceRecord& rec, std::uint64_t seed = 0);
};

std::string format_double17(double v);
std::string to_csv(const OutputRow& row);
std::string to_json(const OutputRow& row);
OutputRow parse_csv_row(const std::string& line);

const char* to_string(Parity p);
const char* to_string(BranchKind b);

}  // namespace gepoly
