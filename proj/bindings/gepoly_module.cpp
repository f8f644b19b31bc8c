#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gepoly/convergence_lab.hpp"
#include "gepoly/moments_oracle.hpp"
#include "gepoly/records.hpp"

namespace py = pybind11;
using namespace gepoly;

namespace {

py::object to_fraction(const Rational& q) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(to_string(q));  // "p/q" string form
}

Rational from_py(py::handle h) {
    if (py::isinstance<py::int_>(h)) return parse_rational(py::str(h));
    if (py::isinstance<py::float_>(h)) return Rational(h.cast<double>());
    if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
    // fractions.Fraction or anything with numerator/denominator
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
        Rational r(Integer(py::str(h.attr("numerator")).cast<std::string>()),
                   Integer(py::str(h.attr("denominator")).cast<std::string>()));
        r.canonicalize();
        return r;
    }
    throw py::type_error("expected int, float, str, or Fraction");
}

ComplexRational from_py_complex(py::handle h) {
    if (py::isinstance<py::str>(h)) return parse_complex_rational(h.cast<std::string>());
    if (py::hasattr(h, "imag") && !py::isinstance<py::int_>(h) && !py::isinstance<py::float_>(h) &&
        !py::hasattr(h, "denominator")) {
        auto z = h.cast<std::complex<double>>();
        return {Rational(z.real()), Rational(z.imag())};
    }
    return {from_py(h)};
}

py::dict record_dict(const SequenceRecord& r) {
    py::dict d;
    d["N"] = r.N;
    d["parity"] = to_string(r.parity);
    d["z2"] = r.z2;
    d["sigma2"] = r.sigma2;
    d["value"] = r.value;
    d["nth_root"] = r.nth_root;
    d["ref_limit"] = r.ref_limit;
    d["abs_err"] = r.abs_err;
    d["branch"] = to_string(r.branch.kind);
    d["sign"] = r.branch.sign;
    d["bits"] = static_cast<long>(r.bits);
    return d;
}

py::dict limit_dict(const LimitCurve& lc) {
    py::dict d;
    d["value"] = lc.value;
    d["branch"] = to_string(lc.branch.kind);
    d["sign"] = lc.branch.sign;
    py::list crossed;
    for (const auto& t : lc.thresholds_crossed) {
        py::dict c;
        c["kind"] = t.kind == ThresholdCross::SigmaGap ? "sigma_gap" : "star";
        c["z2"] = t.z2;
        crossed.append(c);
    }
    d["thresholds_crossed"] = crossed;
    return d;
}

}  // namespace

PYBIND11_MODULE(gepoly, m) {
    m.doc() = "Gaussian expected random polynomials: exact values, oracles, and limits";

    m.def("odd_double_factorial",
          [](long k) { return to_fraction(odd_double_factorial(k)); }, py::arg("k"),
          "(2k)!/(2^k k!) = (2k-1)!! as a Fraction");

    m.def(
        "expected_polynomial",
        [](int N) {
            py::dict d;
            const BivariatePoly poly = expected_polynomial(N);
            for (const auto& [key, c] : poly.coeffs())
                d[py::make_tuple(key.first, key.second)] = to_fraction(c);
            return d;
        },
        py::arg("n"),
        "Exact coefficients of E_N as {(z2_degree, sigma2_degree): Fraction}");

    m.def(
        "eval_exact",
        [](int N, py::handle z2, py::handle sigma2) {
            ComplexRational v = eval_exact(N, from_py_complex(z2), from_py(sigma2));
            if (v.is_real()) return to_fraction(v.re);
            return py::make_tuple(to_fraction(v.re), to_fraction(v.im)).cast<py::object>();
        },
        py::arg("n"), py::arg("z2"), py::arg("sigma2"),
        "Exact E_N(z; sigma) as a Fraction (real z2) or (re, im) pair");

    m.def(
        "eval_float",
        [](int N, std::complex<double> z2, double sigma2, long bits) {
            EvalFloatResult r =
                eval_float(N, z2, sigma2, bits > 0 ? bits : default_precision_bits(N));
            auto [re, im] = r.value.to_doubles();
            return py::make_tuple(std::complex<double>(re, im), static_cast<long>(r.bits),
                                  r.rel_error_bound);
        },
        py::arg("n"), py::arg("z2"), py::arg("sigma2"), py::arg("bits") = 0,
        "(value, bits, certified relative error bound); raises on precision loss");

    m.def("nth_root_value", &nth_root_value, py::arg("n"), py::arg("z2"), py::arg("sigma2"),
          py::arg("bits") = 128, "sign(E_N) |E_N|^{1/N} for real z^2");

    m.def("covariance_entry",
          [](int N, py::handle sigma2, int k, int l) {
              return to_fraction(covariance_entry(CovarianceSpec(N, from_py(sigma2)), k, l));
          },
          py::arg("n"), py::arg("sigma2"), py::arg("k"), py::arg("l"));

    m.def("isserlis_moment",
          [](int N, int n, py::handle sigma2) {
              return to_fraction(isserlis_moment(N, n, from_py(sigma2)));
          },
          py::arg("n_vars"), py::arg("n"), py::arg("sigma2"),
          "Exact Exp[X_1^2...X_n^2] by Wick pairing enumeration (n <= 8)");

    m.def("closed_form_moment",
          [](int N, int n, py::handle sigma2) {
              return to_fraction(closed_form_moment(N, n, from_py(sigma2)));
          },
          py::arg("n_vars"), py::arg("n"), py::arg("sigma2"));

    m.def(
        "mc_expected_polynomial",
        [](int N, double z2, double sigma2, std::int64_t samples, std::uint64_t seed) {
            McEstimate e = mc_expected_polynomial(N, z2, sigma2, samples, seed);
            py::dict d;
            d["mean"] = e.mean;
            d["stderr"] = e.stderr_;
            d["samples"] = e.samples;
            d["seed"] = e.seed;
            return d;
        },
        py::arg("n"), py::arg("z2"), py::arg("sigma2"), py::arg("samples") = 100000,
        py::arg("seed") = 42);

    m.def("kappa_star", &kappa_star, py::arg("tol") = 1e-14);
    m.def("z_star_squared", &z_star_squared, py::arg("sigma2"));
    m.def("limit_real", [](double z2, double s2) { return limit_dict(limit_real(z2, s2)); },
          py::arg("z2"), py::arg("sigma2"));
    m.def("scaled_limit", &scaled_limit, py::arg("z2"), py::arg("sigma2"));
    m.def("m_pm_squared", &m_pm_squared, py::arg("z2"), py::arg("sigma2"));
    m.def("mean_fixed_point_residual", &mean_fixed_point_residual, py::arg("m"), py::arg("z2"),
          py::arg("sigma2"));
    m.def("entropy_value",
          [](double z2, double s2, const std::string& branch) {
              return entropy_value(z2, s2,
                                   branch == "broken" ? BranchKind::Broken : BranchKind::Symmetric);
          },
          py::arg("z2"), py::arg("sigma2"), py::arg("branch") = "symmetric");
    m.def("entropy_gap_series", &entropy_gap_series, py::arg("z2"), py::arg("sigma2"),
          py::arg("n_terms") = 200);
    m.def(
        "conjectured_limit",
        [](double y2, double s2, const std::string& parity) {
            return limit_dict(
                conjectured_limit(y2, s2, parity == "even" ? Parity::Even : Parity::Odd));
        },
        py::arg("y2"), py::arg("sigma2"), py::arg("parity"),
        "Conjectured nth-root limit of the even/odd subsequence at z = iy");

    m.def(
        "critical_density",
        [](double z2, double s2, const std::string& branch) {
            Branch b{branch == "broken" ? BranchKind::Broken : BranchKind::Symmetric, +1};
            CriticalDensity d = critical_density(z2, s2, b);
            py::dict out;
            out["z2"] = d.z2;
            out["sigma2"] = d.sigma2;
            out["m"] = d.m;
            out["normalizer"] = d.normalizer();
            return out;
        },
        py::arg("z2"), py::arg("sigma2"), py::arg("branch") = "symmetric");

    m.def(
        "nth_root_sequence",
        [](double z2, double sigma2, int n_max, long bits) {
            StudyConfig cfg;
            cfg.n_max = n_max;
            cfg.precision_bits = bits;
            py::list out;
            for (const auto& r : nth_root_sequence(cfg, z2, sigma2)) out.append(record_dict(r));
            return out;
        },
        py::arg("z2"), py::arg("sigma2"), py::arg("n_max") = 12, py::arg("bits") = 0);

    m.def(
        "scaled_ratio_sequence",
        [](double z2, double sigma2, int n_max, long bits) {
            StudyConfig cfg;
            cfg.n_max = n_max;
            cfg.precision_bits = bits;
            py::list out;
            for (const auto& r : scaled_ratio_sequence(cfg, z2, sigma2)) out.append(record_dict(r));
            return out;
        },
        py::arg("z2"), py::arg("sigma2"), py::arg("n_max") = 12, py::arg("bits") = 0);

    m.def(
        "positivity_series",
        [](int K, py::handle z2, py::handle sigma2, int j_max) {
            PositivitySeries s = positivity_series(K, from_py(z2), from_py(sigma2), j_max);
            py::dict d;
            d["partial_sums"] = s.partial_sums;
            d["j0_lower_bound"] = s.j0_lower_bound;
            return d;
        },
        py::arg("k"), py::arg("z2"), py::arg("sigma2"), py::arg("j_max") = 60,
        "Sum-of-squares series for E_2K (sigma^2 >= 1)");

    m.def(
        "fixed_point_scan",
        [](const std::vector<double>& sigmas, double y2, int n_max) {
            py::list out;
            for (const auto& r : fixed_point_scan(sigmas, y2, n_max)) out.append(record_dict(r));
            return out;
        },
        py::arg("sigma_grid"), py::arg("y2") = 2.0, py::arg("n_max") = 10);

    m.def("plateau_window", &plateau_window, py::arg("y2") = 2.0,
          "sigma interval where the nth-root limit sits on +-(1-y^2)");

    m.def("limit_curve_l1", &limit_curve_L1, py::arg("y2"), "1 - y^2");
    m.def("limit_curve_l2", &limit_curve_L2, py::arg("y2"), py::arg("sigma2"),
          "2(sigma^2-1) exp((1-y^2)/(2(sigma^2-1)) - 1)");

    m.def(
        "sign_audit",
        [](py::handle sigma2, const std::vector<py::handle>& y2_grid, int n_max) {
            StudyConfig cfg;
            cfg.n_max = n_max;
            std::vector<Rational> grid;
            for (py::handle y2 : y2_grid) grid.push_back(from_py(y2));
            SignAuditResult res = sign_audit(cfg, from_py(sigma2), grid);
            py::list rows;
            for (const auto& r : res.rows) {
                py::dict d;
                d["N"] = r.N;
                d["y2"] = to_fraction(r.y2);
                d["sign"] = r.sign;
                rows.append(d);
            }
            py::list changes;
            for (const auto& c : res.odd_sign_changes)
                changes.append(py::make_tuple(c.N, c.y2_location));
            py::dict out;
            out["rows"] = rows;
            out["odd_sign_changes"] = changes;
            return out;
        },
        py::arg("sigma2"), py::arg("y2_grid"), py::arg("n_max") = 12,
        "Exact signs of E_N(iy; sigma) over a rational y^2 grid, with bisected "
        "odd-N sign-change locations");

    m.def(
        "fixed_point_spread",
        [](double y2, double sigma, int n_max, const std::string& parity) {
            return fixed_point_spread(y2, sigma, n_max,
                                      parity == "even" ? Parity::Even : Parity::Odd);
        },
        py::arg("y2"), py::arg("sigma"), py::arg("n_max") = 10, py::arg("parity") = "even",
        "Spread of the same-parity E_N(iy; sigma) values across N; search hook "
        "for the suspected near-common intersection close to y^2 = 2");

    py::register_exception<PrecisionLossError>(m, "PrecisionLossError");
}
