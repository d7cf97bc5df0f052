#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sendov/metrics.hpp"
#include "sendov/polynomial.hpp"
#include "sendov/precision.hpp"
#include "sendov/roots.hpp"
#include "sendov/search.hpp"

namespace sendov {

using json = nlohmann::json;

/// A complex number kept as decimal text until the working precision is known.
struct DecimalComplex {
    std::string re = "0";
    std::string im = "0";
};

enum class PolynomialForm { roots, coefficients, quadratic_factors };

/// Precision-agnostic contents of a polynomial JSON file. Three layouts:
///   {"roots": [[re, im], ...]}
///   {"coefficients": [[re, im], ...], "degree": n}   constant term first;
///       with "degree" present, n entries mean the monic leading 1 is omitted
///   {"linear_roots": [[re, im], ...], "quadratic_coefficients": [c, ...]}
///       for prod (z - r) * prod (z^2 + c z + 1)
/// Numbers may be JSON numbers, decimal strings, or (for complex entries) a
/// bare real. Optional "precision_digits" and "beta" are carried through.
struct PolynomialDocument {
    PolynomialForm form = PolynomialForm::roots;
    std::optional<int> precision_digits;
    std::optional<std::string> beta;
    std::vector<DecimalComplex> values;  ///< roots or coefficients
    std::vector<DecimalComplex> linear_roots;
    std::vector<std::string> quadratic_coefficients;

    int degree() const {
        switch (form) {
            case PolynomialForm::roots: return static_cast<int>(values.size());
            case PolynomialForm::coefficients: return static_cast<int>(values.size()) - 1;
            case PolynomialForm::quadratic_factors:
                return static_cast<int>(linear_roots.size() + 2 * quadratic_coefficients.size());
        }
        return 0;
    }
};

namespace detail {

inline std::string decimal_text(const json& j, const std::string& where) {
    if (j.is_string()) {
        std::string text = j.get<std::string>();
        real_from_string<double>(text);  // syntax check only; the text is parsed again at working precision
        return text;
    }
    if (j.is_number()) return j.dump();  // shortest round-trip text of the parsed double
    throw std::invalid_argument(where + ": expected a number or decimal string");
}

inline DecimalComplex complex_text(const json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument(where + ": complex entries are [re, im]");
        return {decimal_text(j[0], where), decimal_text(j[1], where)};
    }
    return {decimal_text(j, where), "0"};
}

inline std::vector<DecimalComplex> complex_list(const json& j, const std::string& key) {
    if (!j.is_array()) throw std::invalid_argument("'" + key + "' must be an array");
    std::vector<DecimalComplex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_text(j[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

template <class Real>
Complex<Real> parse_complex(const DecimalComplex& c) {
    return {real_from_string<Real>(c.re), real_from_string<Real>(c.im)};
}

}  // namespace detail

inline PolynomialDocument parse_polynomial_document(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("polynomial JSON must be an object");
    PolynomialDocument doc;
    if (j.contains("precision_digits")) {
        if (!j["precision_digits"].is_number_integer())
            throw std::invalid_argument("'precision_digits' must be an integer");
        doc.precision_digits = j["precision_digits"].get<int>();
    }
    if (j.contains("beta")) doc.beta = detail::decimal_text(j["beta"], "beta");

    const bool has_roots = j.contains("roots");
    const bool has_coeffs = j.contains("coefficients");
    const bool has_quad = j.contains("quadratic_coefficients");
    if (has_roots + has_coeffs + has_quad != 1)
        throw std::invalid_argument(
            "polynomial JSON needs exactly one of 'roots', 'coefficients', 'quadratic_coefficients'");

    if (has_roots) {
        doc.form = PolynomialForm::roots;
        doc.values = detail::complex_list(j["roots"], "roots");
        if (doc.values.empty()) throw std::invalid_argument("'roots' is empty");
    } else if (has_coeffs) {
        doc.form = PolynomialForm::coefficients;
        doc.values = detail::complex_list(j["coefficients"], "coefficients");
        if (j.contains("degree")) {
            if (!j["degree"].is_number_integer()) throw std::invalid_argument("'degree' must be an integer");
            const int n = j["degree"].get<int>();
            const int given = static_cast<int>(doc.values.size());
            if (given == n)
                doc.values.push_back({"1", "0"});
            else if (given != n + 1)
                throw std::invalid_argument("'coefficients' holds " + std::to_string(given) +
                                            " entries, degree " + std::to_string(n) + " needs " +
                                            std::to_string(n) + " or " + std::to_string(n + 1));
        }
        if (doc.values.size() < 2) throw std::invalid_argument("'coefficients' must describe degree >= 1");
    } else {
        doc.form = PolynomialForm::quadratic_factors;
        if (j.contains("linear_roots")) doc.linear_roots = detail::complex_list(j["linear_roots"], "linear_roots");
        const json& q = j["quadratic_coefficients"];
        if (!q.is_array()) throw std::invalid_argument("'quadratic_coefficients' must be an array");
        for (std::size_t i = 0; i < q.size(); ++i)
            doc.quadratic_coefficients.push_back(
                detail::decimal_text(q[i], "quadratic_coefficients[" + std::to_string(i) + "]"));
        if (doc.degree() < 1) throw std::invalid_argument("quadratic factor form describes no factors");
    }
    return doc;
}

inline PolynomialDocument read_polynomial_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
    return parse_polynomial_document(j);
}

/// Builds the monic polynomial described by `doc` at Real precision.
template <class Real>
Polynomial<Real> build_polynomial(const PolynomialDocument& doc) {
    switch (doc.form) {
        case PolynomialForm::roots: {
            std::vector<Complex<Real>> r;
            for (const auto& v : doc.values) r.push_back(detail::parse_complex<Real>(v));
            return from_roots(r);
        }
        case PolynomialForm::coefficients: {
            std::vector<Complex<Real>> c;
            for (const auto& v : doc.values) c.push_back(detail::parse_complex<Real>(v));
            return Polynomial<Real>::from_coefficients(std::move(c));
        }
        case PolynomialForm::quadratic_factors: {
            std::vector<Complex<Real>> lin;
            for (const auto& v : doc.linear_roots) lin.push_back(detail::parse_complex<Real>(v));
            std::vector<Real> q;
            for (const auto& s : doc.quadratic_coefficients) q.push_back(real_from_string<Real>(s));
            return from_quadratic_factors(lin, q);
        }
    }
    throw std::logic_error("build_polynomial: unknown form");
}

/// Roots of the described polynomial rounded to double, computed at the
/// document's precision (or `ctx`) when they are not given directly.
inline std::vector<Complex<double>> document_roots(const PolynomialDocument& doc, const PrecisionContext& ctx) {
    PrecisionContext local = ctx;
    if (doc.precision_digits) local.significant_digits = *doc.precision_digits;
    local.validate();
    return with_precision(local, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        auto p = build_polynomial<Real>(doc);
        auto rs = roots_of(p, local);
        if (!rs.converged) throw convergence_error("document_roots: root finding did not converge");
        std::vector<Complex<double>> out;
        for (const auto& z : rs.points) out.push_back(complex_cast<double>(z));
        return out;
    });
}

/// Drops the root nearest `beta`, leaving the n - 1 free roots a search expects.
inline std::vector<Complex<double>> free_roots(std::vector<Complex<double>> roots, double beta) {
    if (roots.empty()) return roots;
    std::size_t k = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (abs(roots[i] - Complex<double>(beta)) < abs(roots[k] - Complex<double>(beta))) k = i;
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(k));
    return roots;
}

template <class Real>
json complex_to_json(const Complex<Real>& z, int digits) {
    return json::array({to_decimal(z.re, digits), to_decimal(z.im, digits)});
}

/// Roots layout when roots are known, coefficient layout otherwise.
template <class Real>
json polynomial_to_json(const Polynomial<Real>& p, int digits) {
    json j;
    j["precision_digits"] = digits;
    json arr = json::array();
    if (p.known_roots()) {
        for (const auto& z : *p.known_roots()) arr.push_back(complex_to_json(z, digits));
        j["roots"] = std::move(arr);
    } else {
        for (const auto& c : p.coefficients()) arr.push_back(complex_to_json(c, digits));
        j["coefficients"] = std::move(arr);
    }
    return j;
}

/// Roots layout for a double-precision configuration (17 digits round-trip).
inline json roots_to_json(const std::vector<Complex<double>>& roots, std::optional<double> beta = std::nullopt) {
    json j;
    j["precision_digits"] = 17;
    if (beta) j["beta"] = to_decimal(*beta, 17);
    json arr = json::array();
    for (const auto& z : roots) arr.push_back(complex_to_json(z, 17));
    j["roots"] = std::move(arr);
    return j;
}

inline const std::vector<std::string>& sweep_csv_columns() {
    static const std::vector<std::string> cols{"beta",    "degree",      "d_value", "bound_name",
                                               "bound_value", "margin",  "verdict", "starts",
                                               "evaluations", "seed",    "constraint", "verified"};
    return cols;
}

/// Verdict of a sweep row against the quadratic bound: a verified estimate
/// above it is a finding.
inline std::string sweep_verdict(const SweepRow& row) {
    if (!row.record.verified) return "unverified";
    return row.finding ? "finding" : "holds";
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    const auto& cols = sweep_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    const std::string bound_name = conjecture_bound<double>().name;
    for (const auto& row : rows) {
        const auto& r = row.record;
        const std::string d = r.verified ? r.best_d_text : "nan";
        const std::string margin = r.verified ? to_decimal(row.margin, 17) : "nan";
        out << to_decimal(r.config.beta, 17) << ',' << r.config.degree << ',' << d << ',' << bound_name << ','
            << to_decimal(row.conjecture_bound, 17) << ',' << margin << ',' << sweep_verdict(row) << ','
            << r.config.starts << ',' << r.evaluations << ',' << r.config.seed << ','
            << to_string(r.config.constraint) << ',' << (r.verified ? 1 : 0) << "\n";
    }
}

/// Everything needed to re-run a command that produced an output file.
struct RunManifest {
    std::string command;
    std::vector<std::string> arguments;
    std::vector<std::string> inputs;
    std::optional<int> precision;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::map<std::string, long> emitted_records;
    int exit_code = 0;

    json to_json() const {
        json j;
        j["command"] = command;
        j["arguments"] = arguments;
        j["inputs"] = inputs;
        j["precision"] = precision ? json(*precision) : json(nullptr);
        j["seed"] = seed ? json(*seed) : json(nullptr);
        j["output"] = output;
        j["emitted_records"] = emitted_records;
        j["exit_code"] = exit_code;
        j["created_utc"] = utc_timestamp();
        return j;
    }

    static std::string utc_timestamp() {
        std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }
};

inline std::filesystem::path manifest_path(const std::filesystem::path& output) {
    return std::filesystem::path(output.string() + ".manifest.json");
}

inline void write_manifest(const RunManifest& m) {
    std::ofstream out(manifest_path(m.output));
    if (!out) throw std::runtime_error("cannot write manifest for " + m.output);
    out << m.to_json().dump(2) << "\n";
}

}  // namespace sendov
