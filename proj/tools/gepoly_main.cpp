// gepoly: exact evaluation and large-N asymptotics of the Gaussian expected
// random polynomials E_N(z; sigma). Subcommands: eval, limits, converge,
// oracle. All outputs are machine readable (CSV, optionally JSON) and
// deterministic for fixed flags.
//
// Exit codes: 0 ok, 2 usage/domain error, 3 precision insufficient.

#include <CLI11.hpp>

#include "gepoly/convergence_lab.hpp"
#include "gepoly/moments_oracle.hpp"
#include "gepoly/parallel.hpp"
#include "gepoly/records.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using namespace gepoly;

constexpr const char* kVersion = "gepoly 1.0.0 (csv schema v1)";

long resolve_bits(long flag_bits) {
    if (flag_bits > 0) return flag_bits;  // flag wins over env
    if (const char* env = std::getenv("SEL_PRECISION_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 0;  // library default policy
}

struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    bool json = false;
    bool first = true;

    void open(const std::string& path, const std::string& format) {
        json = (format == "json");
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            os = &file;
        }
    }
    void header(const std::string& csv_header) {
        if (json)
            *os << "[";
        else
            *os << csv_header << "\n";
    }
    void row(const std::string& csv, const std::string& js) {
        if (json) {
            *os << (first ? "\n" : ",\n") << js;
            first = false;
        } else {
            *os << csv << "\n";
        }
    }
    void done() {
        if (json) *os << "\n]\n";
        os->flush();
    }
};

std::string json_kv(const std::string& k, const std::string& v, bool quote) {
    return "\"" + k + "\":" + (quote ? "\"" + v + "\"" : v);
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("grid needs at least one point");
    std::vector<double> xs(static_cast<std::size_t>(points));
    if (points == 1) {
        xs[0] = lo;
        return xs;
    }
    for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * double(i) / double(points - 1);
    return xs;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

// ---- eval ------------------------------------------------------------

struct EvalArgs {
    int n = 1;
    std::string z2, sigma2;
    bool exact = false;
    long bits = 0;
};

int run_eval(const EvalArgs& a) {
    ComplexRational z2 = parse_complex_rational(a.z2);
    Rational s2 = parse_rational(a.sigma2);
    ComplexRational value = eval_exact(a.n, z2, s2);
    if (a.exact) {
        std::cout << to_string(value) << "\n";
        return 0;
    }
    // exact-first: only the final conversion is floating point
    long bits = resolve_bits(a.bits);
    if (bits <= 0) bits = default_precision_bits(a.n);
    double re = BigFloat(value.re, bits).to_double();
    if (value.im == 0) {
        std::cout << format_double17(re) << "\n";
    } else {
        double im = BigFloat(value.im, bits).to_double();
        std::cout << format_double17(re) << (im < 0 ? "-" : "+") << format_double17(std::fabs(im))
                  << "i\n";
    }
    return 0;
}

// ---- limits ----------------------------------------------------------

struct LimitsArgs {
    std::string mode;
    double sigma2 = 2.0;
    std::vector<double> sigma_list;
    double lo = 0.0, hi = 0.0;
    int points = 0;
    bool grid_set = false;
    std::string out, format = "csv";
};

void emit_curve_row(Sink& sink, double x, double sigma2, double value, BranchKind kind, int sign,
                    const char* xname) {
    std::ostringstream csv;
    csv << format_double17(x) << ',' << format_double17(sigma2) << ',' << format_double17(value)
        << ',' << to_string(kind) << ',' << sign;
    std::ostringstream js;
    js << "{" << json_kv(xname, format_double17(x), false) << ","
       << json_kv("sigma2", format_double17(sigma2), false) << ","
       << json_kv("value", format_double17(value), false) << ","
       << json_kv("branch", to_string(kind), true) << "," << json_kv("sign", std::to_string(sign), false)
       << "}";
    sink.row(csv.str(), js.str());
}

int run_limits(const LimitsArgs& a) {
    Sink sink;
    sink.open(a.out, a.format);

    if (a.mode == "real" || a.mode == "scaled") {
        double lo = a.grid_set ? a.lo : (a.mode == "real" ? 0.0 : -9.0);
        double hi = a.grid_set ? a.hi : (a.mode == "real" ? 16.0 : 9.0);
        int pts = a.points > 0 ? a.points : 101;
        sink.header("z2,sigma2,value,branch,sign");
        for (double z2 : linspace(lo, hi, pts)) {
            if (a.mode == "real") {
                LimitCurve lim = limit_real(z2, a.sigma2);
                emit_curve_row(sink, z2, a.sigma2, lim.value, lim.branch.kind, lim.branch.sign, "z2");
            } else {
                double v = scaled_limit({z2, 0.0}, a.sigma2).real();
                emit_curve_row(sink, z2, a.sigma2, v,
                               a.sigma2 <= 1.5 ? BranchKind::Symmetric : BranchKind::Broken, +1,
                               "z2");
            }
        }
        sink.done();
        return 0;
    }

    if (a.mode == "imag-even" || a.mode == "imag-odd") {
        Parity parity = a.mode == "imag-even" ? Parity::Even : Parity::Odd;
        double lo = a.grid_set ? a.lo : 0.0;
        double hi = a.grid_set ? a.hi : 2.0;
        int pts = a.points > 0 ? a.points : 81;
        sink.header("y,sigma2,value,branch,sign");
        for (double y : linspace(lo, hi, pts)) {
            LimitCurve lim = conjectured_limit(y * y, a.sigma2, parity);
            emit_curve_row(sink, y, a.sigma2, lim.value, lim.branch.kind, lim.branch.sign, "y");
        }
        sink.done();
        return 0;
    }

    if (a.mode == "curves") {
        std::vector<double> sigmas = a.sigma_list;
        if (sigmas.empty())
            sigmas = {0.0, 0.4, 0.6, 0.8, 1.095, 1.14, std::sqrt(1.5), 1.5, 1.75};
        double lo = a.grid_set ? a.lo : -2.0;
        double hi = a.grid_set ? a.hi : 2.0;
        int pts = a.points > 0 ? a.points : 161;
        auto ys = linspace(lo, hi, pts);
        sink.header("y,sigma2,value,branch,sign");
        for (double y : ys) emit_curve_row(sink, y, 1.0, limit_curve_L1(y * y), BranchKind::Symmetric, +1, "y");
        for (double y : ys) emit_curve_row(sink, y, 1.0, -limit_curve_L1(y * y), BranchKind::Symmetric, -1, "y");
        for (double s : sigmas) {
            double s2 = s * s;
            if (s2 == 1.0) continue;  // L2 undefined; the L1 pair above covers it
            for (double y : ys)
                emit_curve_row(sink, y, s2, limit_curve_L2(y * y, s2), BranchKind::Broken, +1, "y");
        }
        sink.done();
        return 0;
    }

    throw std::invalid_argument("limits: unknown --mode '" + a.mode + "'");
}

// ---- converge ---------------------------------------------------------

struct ConvergeArgs {
    std::string study;
    int nmax = 0;
    std::string nlist;
    std::string z2 = "0";
    std::string sigma2 = "2";
    double y2 = 2.0;
    double sigma_min = 0.05, sigma_max = 2.0;
    int sigma_points = 40;
    std::string y2_min = "0", y2_max = "4", y2_step = "1/4";
    int k = 2;
    int jmax = 60;
    long bits = 0;
    std::string out, format = "csv";
};

void emit_v1(Sink& sink, const OutputRow& row) { sink.row(to_csv(row), to_json(row)); }

int run_converge(const ConvergeArgs& a) {
    Sink sink;
    sink.open(a.out, a.format);
    StudyConfig cfg;
    cfg.precision_bits = resolve_bits(a.bits);
    if (!a.nlist.empty()) cfg.n_list = parse_n_list(a.nlist);

    if (a.study == "nthroot" || a.study == "scaled") {
        cfg.n_max = a.nmax > 0 ? a.nmax : 1000;
        cfg.mode = a.study == "nthroot" ? StudyMode::NthRoot : StudyMode::ScaledRatio;
        const double z2 = to_double(parse_rational(a.z2));
        const double s2 = to_double(parse_rational(a.sigma2));
        std::vector<SequenceRecord> recs;
        try {
            recs = (a.study == "nthroot") ? nth_root_sequence(cfg, z2, s2)
                                          : scaled_ratio_sequence(cfg, z2, s2);
        } catch (const PrecisionLossError& e) {
            throw PrecisionLossError(std::string(e.what()) + " at (z2=" + a.z2 +
                                         ", sigma2=" + a.sigma2 + ")",
                                     e.bits_used);
        }
        sink.header(kCsvHeaderV1);
        for (const auto& r : recs) emit_v1(sink, OutputRow::from(r));
        sink.done();
        return 0;
    }

    if (a.study == "sign") {
        cfg.n_max = a.nmax > 0 ? a.nmax : 12;
        cfg.mode = StudyMode::SignAudit;
        Rational s2 = parse_rational(a.sigma2);
        Rational lo = parse_rational(a.y2_min), hi = parse_rational(a.y2_max),
                 step = parse_rational(a.y2_step);
        if (step <= 0 || hi < lo) throw std::invalid_argument("sign: bad y2 grid");
        std::vector<Rational> grid;
        for (Rational y2 = lo; y2 <= hi; y2 += step) grid.push_back(y2);
        auto audit = sign_audit(cfg, s2, grid);
        sink.header(kCsvHeaderV1);
        const double s2d = to_double(s2);
        for (const auto& row : audit.rows) {
            int N = row.N;
            double y2 = to_double(row.y2);
            SequenceRecord rec;
            rec.N = N;
            rec.parity = parity_of(N);
            rec.z2 = -y2;
            rec.sigma2 = s2d;
            Rational E = eval_exact(N, ComplexRational{Rational(-row.y2)}, s2).re;
            rec.value = to_double_saturating(E);
            rec.nth_root = signed_nth_root(E, N);
            LimitCurve ref = conjectured_limit(y2, s2d, rec.parity);
            rec.ref_limit = ref.value;
            rec.branch = ref.branch;
            rec.abs_err = std::fabs(rec.nth_root - rec.ref_limit);
            OutputRow out = OutputRow::from(rec);
            out.sign = row.sign;  // exact sign of E_N, the point of this study
            emit_v1(sink, out);
        }
        for (const auto& ch : audit.odd_sign_changes)
            std::cerr << "# odd-N sign change: N=" << ch.N << " y2=" << format_double17(ch.y2_location)
                      << "\n";
        sink.done();
        return 0;
    }

    if (a.study == "fixedpoint") {
        int nmax = a.nmax > 0 ? a.nmax : 10;
        auto sigmas = linspace(a.sigma_min, a.sigma_max, a.sigma_points);
        auto recs = fixed_point_scan(sigmas, a.y2, nmax);
        auto window = plateau_window(a.y2);
        std::cerr << "# plateau window: sigma in (" << format_double17(window.first) << ", "
                  << format_double17(window.second) << ")\n";
        sink.header(kCsvHeaderV1);
        for (const auto& r : recs) emit_v1(sink, OutputRow::from(r));
        sink.done();
        return 0;
    }

    if (a.study == "appb") {
        Rational z2 = parse_rational(a.z2);
        Rational s2 = parse_rational(a.sigma2);
        auto series = positivity_series(a.k, z2, s2, a.jmax);
        Rational exact = eval_exact(2 * a.k, ComplexRational{z2}, s2).re;
        double exact_d = to_double_saturating(exact);
        std::cerr << "# j0 lower bound: " << format_double17(series.j0_lower_bound) << "\n";
        sink.header(kCsvHeaderV1);
        // partial-sum table mapped onto schema v1: N column is the series
        // index j, value the partial sum, ref_limit the exact E_2K
        for (std::size_t j = 0; j < series.partial_sums.size(); ++j) {
            OutputRow row;
            row.N = static_cast<int>(j);
            row.parity = (j % 2 == 0) ? Parity::Even : Parity::Odd;
            row.z2_re = to_double(z2);
            row.sigma2 = to_double(s2);
            row.value = series.partial_sums[j];
            row.nth_root = std::numeric_limits<double>::quiet_NaN();
            row.ref_limit = exact_d;
            row.abs_err = std::fabs(series.partial_sums[j] - exact_d);
            row.branch = BranchKind::Symmetric;
            row.sign = +1;
            emit_v1(sink, row);
        }
        sink.done();
        return 0;
    }

    throw std::invalid_argument("converge: unknown --study '" + a.study + "'");
}

// ---- oracle -----------------------------------------------------------

struct OracleArgs {
    int n_max = 6;
    std::vector<std::string> sigma2_list;
    bool mc = false;
    std::int64_t samples = 1000000;
    std::uint64_t seed = 42;
    std::string out, format = "csv";
};

int run_oracle(const OracleArgs& a) {
    if (a.n_max < 1 || a.n_max > 8) throw std::invalid_argument("oracle: n > 8 unsupported");
    std::vector<Rational> sigmas;
    if (a.sigma2_list.empty())
        for (const char* s : {"1/4", "1/2", "1", "3/2", "2", "4"}) sigmas.push_back(parse_rational(s));
    else
        for (const auto& s : a.sigma2_list) sigmas.push_back(parse_rational(s));

    Sink sink;
    sink.open(a.out, a.format);
    sink.header("check,N,n,z2,sigma2,expected,got,zscore,status");
    int mismatches = 0;

    auto emit = [&](const std::string& check, int N, int n, const std::string& z2,
                    const std::string& sigma2, const std::string& expected, const std::string& got,
                    const std::string& zscore, bool ok) {
        std::ostringstream csv;
        csv << check << ',' << N << ',' << n << ',' << z2 << ',' << sigma2 << ',' << expected << ','
            << got << ',' << zscore << ',' << (ok ? "PASS" : "FAIL");
        std::ostringstream js;
        js << "{" << json_kv("check", check, true) << "," << json_kv("N", std::to_string(N), false)
           << "," << json_kv("n", std::to_string(n), false) << "," << json_kv("z2", z2, true) << ","
           << json_kv("sigma2", sigma2, true) << "," << json_kv("expected", expected, true) << ","
           << json_kv("got", got, true) << "," << json_kv("zscore", zscore, true) << ","
           << json_kv("status", ok ? "PASS" : "FAIL", true) << "}";
        sink.row(csv.str(), js.str());
        if (!ok) ++mismatches;
    };

    // exact triangle: Wick pairings == closed form == polynomial coefficients
    for (const Rational& s2 : sigmas) {
        for (int N = 1; N <= a.n_max; ++N) {
            BivariatePoly poly = expected_polynomial(N);
            auto coeffs = poly.substitute_sigma2(s2);
            for (int n = 0; n <= N; ++n) {
                Rational wick = isserlis_moment(N, n, s2);
                Rational closed = closed_form_moment(N, n, s2);
                int j = N - n;
                Rational from_poly;
                auto it = coeffs.find(j);
                if (it != coeffs.end()) from_poly = it->second / Rational(binomial(N, j));
                bool ok = (wick == closed) && (wick == from_poly);
                emit("triangle", N, n, "-", to_string(s2), to_string(closed), to_string(wick), "-",
                     ok);
            }
        }
    }

    if (a.mc) {
        // both signs of z^2, one sigma on each side of 1
        const std::pair<double, double> grid[] = {{1.0, 2.0}, {-2.0, 1.5}, {1.0, 0.5}, {-1.0, 0.5}};
        for (auto [z2, s2] : grid) {
            for (int N = 1; N <= a.n_max; ++N) {
                McEstimate est = mc_expected_polynomial(N, z2, s2, a.samples, a.seed);
                double exact =
                    to_double_saturating(eval_exact(N, ComplexRational{Rational(z2)}, Rational(s2)).re);
                double z = est.stderr_ > 0 ? (est.mean - exact) / est.stderr_ : 0.0;
                emit("mc", N, 0, format_double17(z2), format_double17(s2), format_double17(exact),
                     format_double17(est.mean), format_double17(z), std::fabs(z) < 4.0);
            }
        }
    }

    sink.done();
    if (mismatches > 0) {
        std::cerr << mismatches << " check(s) failed\n";
        return 1;
    }
    std::cerr << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian expected random polynomials: exact values, oracles, and limits"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate E_N(z; sigma) at a point");
    eval_cmd->add_option("--n", ev.n, "Polynomial index N >= 1")->required();
    eval_cmd->add_option("--z2", ev.z2, "z^2, real or complex 'a+bi' (rational or decimal)")
        ->required();
    eval_cmd->add_option("--sigma2", ev.sigma2, "sigma^2 > 0 (rational or decimal)")->required();
    eval_cmd->add_flag("--exact", ev.exact, "Print the exact rational value");
    eval_cmd->add_option("--bits", ev.bits, "Working precision for the float conversion");

    LimitsArgs li;
    auto* limits_cmd = app.add_subcommand("limits", "Tabulate limit curves as CSV");
    limits_cmd->add_option("--mode", li.mode, "real|imag-even|imag-odd|scaled|curves")->required();
    limits_cmd->add_option("--sigma2", li.sigma2, "sigma^2 for single-curve modes");
    limits_cmd->add_option("--sigma-list", li.sigma_list, "sigma values for curves mode");
    auto* lo_opt = limits_cmd->add_option("--min", li.lo, "Grid start (z2 or y)");
    limits_cmd->add_option("--max", li.hi, "Grid end")->needs(lo_opt);
    limits_cmd->add_option("--points", li.points, "Grid size")->check(CLI::PositiveNumber);
    limits_cmd->add_option("--out", li.out, "Output file (default stdout)");
    limits_cmd->add_option("--format", li.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    ConvergeArgs cv;
    auto* conv_cmd = app.add_subcommand("converge", "Finite-N convergence studies");
    conv_cmd->add_option("--study", cv.study, "nthroot|scaled|sign|fixedpoint|appb")->required();
    conv_cmd->add_option("--nmax", cv.nmax, "Largest N (default: study specific)");
    conv_cmd->add_option("--nlist", cv.nlist, "Explicit comma separated N values");
    conv_cmd->add_option("--z2", cv.z2, "z^2, rational or decimal (nthroot/scaled/appb)");
    conv_cmd->add_option("--sigma2", cv.sigma2, "sigma^2, rational or decimal (all but fixedpoint)");
    conv_cmd->add_option("--y2", cv.y2, "y^2 for the fixedpoint study");
    conv_cmd->add_option("--sigma-min", cv.sigma_min, "fixedpoint sigma grid start");
    conv_cmd->add_option("--sigma-max", cv.sigma_max, "fixedpoint sigma grid end");
    conv_cmd->add_option("--sigma-points", cv.sigma_points, "fixedpoint sigma grid size")
        ->check(CLI::PositiveNumber);
    conv_cmd->add_option("--y2-min", cv.y2_min, "sign study y^2 grid start (rational)");
    conv_cmd->add_option("--y2-max", cv.y2_max, "sign study y^2 grid end (rational)");
    conv_cmd->add_option("--y2-step", cv.y2_step, "sign study y^2 grid step (rational)");
    conv_cmd->add_option("--k", cv.k, "K for the appb study (series for E_2K)");
    conv_cmd->add_option("--jmax", cv.jmax, "appb series truncation");
    conv_cmd->add_option("--bits", cv.bits, "Working precision override");
    conv_cmd->add_option("--out", cv.out, "Output file (default stdout)");
    conv_cmd->add_option("--format", cv.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    OracleArgs orc;
    auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check the independent moment oracles");
    oracle_cmd->add_option("--n-max", orc.n_max, "Largest moment order n (<= 8)");
    oracle_cmd->add_option("--sigma2-list", orc.sigma2_list, "sigma^2 values (rationals)");
    oracle_cmd->add_flag("--mc", orc.mc, "Also run the Monte Carlo consistency check");
    oracle_cmd->add_option("--samples", orc.samples, "Monte Carlo sample count");
    oracle_cmd->add_option("--seed", orc.seed, "Monte Carlo seed");
    oracle_cmd->add_option("--out", orc.out, "Output file (default stdout)");
    oracle_cmd->add_option("--format", orc.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(ev);
        if (limits_cmd->parsed()) return run_limits(li);
        if (conv_cmd->parsed()) return run_converge(cv);
        if (oracle_cmd->parsed()) return run_oracle(orc);
    } catch (const PrecisionLossError& e) {
        std::cerr << "precision insufficient: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
