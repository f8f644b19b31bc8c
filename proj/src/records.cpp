#include "gepoly/records.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gepoly {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }
const char* to_string(BranchKind b) { return b == BranchKind::Symmetric ? "symmetric" : "broken"; }

OutputRow OutputRow::from(const SequenceRecord& rec, std::uint64_t seed) {
    OutputRow row;
    row.N = rec.N;
    row.parity = rec.parity;
    row.z2_re = rec.z2;
    row.z2_im = 0.0;
    row.sigma2 = rec.sigma2;
    row.value = rec.value;
    row.nth_root = rec.nth_root;
    row.ref_limit = rec.ref_limit;
    row.abs_err = rec.abs_err;
    row.branch = rec.branch.kind;
    row.sign = rec.branch.sign;
    row.bits = rec.bits;
    row.seed = seed;
    return row;
}

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const OutputRow& r) {
    std::ostringstream os;
    os << r.N << ',' << to_string(r.parity) << ',' << format_double17(r.z2_re) << ','
       << format_double17(r.z2_im) << ',' << format_double17(r.sigma2) << ','
       << format_double17(r.value) << ',' << format_double17(r.nth_root) << ','
       << format_double17(r.ref_limit) << ',' << format_double17(r.abs_err) << ','
       << to_string(r.branch) << ',' << r.sign << ',' << r.bits << ',' << r.seed;
    return os.str();
}

std::string to_json(const OutputRow& r) {
    std::ostringstream os;
    os << "{\"N\":" << r.N << ",\"parity\":\"" << to_string(r.parity)
       << "\",\"z2_re\":" << format_double17(r.z2_re) << ",\"z2_im\":" << format_double17(r.z2_im)
       << ",\"sigma2\":" << format_double17(r.sigma2) << ",\"value\":" << format_double17(r.value)
       << ",\"nth_root\":" << format_double17(r.nth_root)
       << ",\"ref_limit\":" << format_double17(r.ref_limit)
       << ",\"abs_err\":" << format_double17(r.abs_err) << ",\"branch\":\"" << to_string(r.branch)
       << "\",\"sign\":" << r.sign << ",\"bits\":" << r.bits << ",\"seed\":" << r.seed << "}";
    return os.str();
}

OutputRow parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    if (fields.size() != 13) throw std::invalid_argument("parse_csv_row: expected 13 fields");

    OutputRow r;
    r.N = std::stoi(fields[0]);
    if (fields[1] == "even")
        r.parity = Parity::Even;
    else if (fields[1] == "odd")
        r.parity = Parity::Odd;
    else
        throw std::invalid_argument("parse_csv_row: bad parity '" + fields[1] + "'");
    r.z2_re = std::strtod(fields[2].c_str(), nullptr);
    r.z2_im = std::strtod(fields[3].c_str(), nullptr);
    r.sigma2 = std::strtod(fields[4].c_str(), nullptr);
    r.value = std::strtod(fields[5].c_str(), nullptr);
    r.nth_root = std::strtod(fields[6].c_str(), nullptr);
    r.ref_limit = std::strtod(fields[7].c_str(), nullptr);
    r.abs_err = std::strtod(fields[8].c_str(), nullptr);
    if (fields[9] == "symmetric")
        r.branch = BranchKind::Symmetric;
    else if (fields[9] == "broken")
        r.branch = BranchKind::Broken;
    else
        throw std::invalid_argument("parse_csv_row: bad branch '" + fields[9] + "'");
    r.sign = std::stoi(fields[10]);
    r.bits = std::stol(fields[11]);
    r.seed = std::stoull(fields[12]);
    return r;
}

}  // namespace gepoly
