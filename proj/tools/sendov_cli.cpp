// Command-line front end: reproduction checks, single distances and sweeps.
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sendov/sendov.hpp"

namespace {

using namespace sendov;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kNonConvergence = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> g_arguments;

RunManifest manifest_for(const std::string& command, const std::string& output) {
    RunManifest m;
    m.command = command;
    m.arguments = g_arguments;
    m.output = output;
    return m;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<int> parse_degrees(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            int n = std::stoi(tok, &pos);
            if (pos != tok.size() || n < 2) throw std::invalid_argument("");
            out.push_back(n);
        } catch (const std::exception&) {
            throw UsageError("--degrees: '" + tok + "' is not an integer >= 2");
        }
    }
    if (out.empty()) throw UsageError("--degrees: empty list");
    return out;
}

double parse_double(const std::string& s, const std::string& flag) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw UsageError(flag + ": '" + s + "' is not a number");
    }
}

/// START:END:STEP (inclusive), a comma list, or one value; all within [0, 1].
std::vector<double> parse_betas(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 3) throw UsageError("--betas: expected START:END:STEP");
        double a = parse_double(parts[0], "--betas"), b = parse_double(parts[1], "--betas");
        double h = parse_double(parts[2], "--betas");
        if (!(h > 0) || b < a) throw UsageError("--betas: need END >= START and STEP > 0");
        const long count = std::lround(std::floor((b - a) / h + 1e-9));
        // Snap to 12 decimals so 0:1:0.1 yields 0.3 rather than 0.30000000000000004.
        for (long i = 0; i <= count; ++i)
            out.push_back(std::min(b, std::round((a + static_cast<double>(i) * h) * 1e12) / 1e12));
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(parse_double(tok, "--betas"));
    }
    for (double b : out)
        if (!(b >= 0.0 && b <= 1.0)) throw UsageError("--betas: values must lie in [0, 1]");
    if (out.empty()) throw UsageError("--betas: empty list");
    return out;
}

/// 0 means "default"; otherwise the precision tiers need 16..118 digits.
void require_precision(int digits, bool allow_default) {
    if (allow_default && digits == 0) return;
    if (digits < 16 || digits > 118) throw UsageError("--precision must lie in [16, 118]");
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    int precision = 0;
    std::uint64_t seed = 1;
    int samples = 1000;
    std::string only;
    std::string out;
    std::string data = default_data_dir().string();
};

int cmd_verify(const VerifyArgs& a) {
    require_precision(a.precision, true);
    ClaimOptions opt;
    opt.precision = a.precision;
    opt.seed = a.seed;
    opt.samples = a.samples;
    opt.data_dir = a.data;
    std::vector<CheckResult> results;
    try {
        results = run_claims(opt, a.only);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool failed = false, nonconv = false;
    json report = json::array();
    for (const auto& r : results) {
        std::printf("%-4s %-24s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.summary.c_str());
        failed = failed || !r.passed;
        nonconv = nonconv || r.nonconvergence;
        report.push_back({{"name", r.name}, {"passed", r.passed}, {"nonconvergence", r.nonconvergence},
                          {"summary", r.summary}, {"seconds", r.seconds}, {"details", r.details}});
    }
    const int code = !failed ? kPass : (nonconv ? kNonConvergence : kFail);
    if (!a.out.empty()) {
        write_text(a.out, json{{"checks", report}, {"passed", !failed}}.dump(2) + "\n");
        auto m = manifest_for("verify", a.out);
        m.inputs = {deg52_data_file(a.data).string()};
        if (a.precision) m.precision = a.precision;
        m.seed = a.seed;
        m.emitted_records["checks"] = static_cast<long>(results.size());
        m.exit_code = code;
        write_manifest(m);
    }
    return code;
}

// ---------------------------------------------------------------------------

struct DistanceArgs {
    std::string file;
    std::string beta;
    int precision = 0;
    std::string out;
};

int cmd_distance(const DistanceArgs& a) {
    require_precision(a.precision, true);
    PolynomialDocument doc;
    try {
        doc = read_polynomial_document(a.file);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::string beta_text = !a.beta.empty() ? a.beta : doc.beta.value_or("");
    if (beta_text.empty()) throw UsageError("distance: no --beta given and the file carries none");
    const int digits = a.precision ? a.precision
                                   : doc.precision_digits.value_or(PrecisionContext::for_degree(doc.degree()).significant_digits);
    PrecisionContext ctx(std::max(digits, 16));

    return with_precision(ctx, [&](auto tag) -> int {
        using Real = typename decltype(tag)::type;
        auto p = build_polynomial<Real>(doc);
        Complex<Real> beta;
        try {
            beta = Complex<Real>(real_from_string<Real>(beta_text));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--beta: ") + e.what());
        }
        auto inst = check_membership(p, beta, ctx, std::optional<Real>{}, true);
        json out{{"degree", p.degree()}, {"beta", beta_text}, {"digits", ctx.significant_digits},
                 {"member", inst.membership_verified}};
        if (!inst.membership_verified) {
            std::printf("not in S(beta): %s\n", inst.membership_diagnostic.c_str());
            out["diagnostic"] = inst.membership_diagnostic;
        } else {
            critical_distance(inst, ctx);
            const int dg = ctx.significant_digits;
            std::printf("degree            %d\n", p.degree());
            std::printf("beta              %s\n", beta_text.c_str());
            std::printf("d(P, beta)        %s\n", to_decimal(*inst.d_value, dg).c_str());
            std::printf("nearest critical  %s %s i\n", to_decimal(inst.nearest_critical_point.re, dg).c_str(),
                        to_decimal(inst.nearest_critical_point.im, dg).c_str());
            std::printf("max |root|        %s\n", to_decimal(inst.max_root_modulus(), 20).c_str());
            std::printf("S(beta)           member\n");
            out["d"] = to_decimal(*inst.d_value, dg);
            out["nearest_critical_point"] = complex_to_json(inst.nearest_critical_point, dg);
            json bounds = json::array();
            std::vector<BoundSpec<Real>> specs{conjecture_bound<Real>(), degree2_bound<Real>(), degree3_bound<Real>(),
                                               line_bound<Real>(), real_quartic_bound<Real>(),
                                               all_real_bound<Real>(p.degree())};
            for (const auto& b : specs) {
                auto chk = check_bound(inst, b);
                if (chk.verdict == Verdict::not_applicable) continue;
                std::printf("bound %-20s %s (margin %s)\n", b.name.c_str(), to_string(chk.verdict),
                            to_decimal(chk.margin, 6).c_str());
                bounds.push_back({{"name", b.name}, {"verdict", to_string(chk.verdict)},
                                  {"value", to_decimal(chk.bound_value, dg)}, {"margin", to_decimal(chk.margin, dg)}});
            }
            out["bounds"] = bounds;
        }
        if (!a.out.empty()) {
            write_text(a.out, out.dump(2) + "\n");
            auto m = manifest_for("distance", a.out);
            m.inputs = {a.file};
            m.precision = ctx.significant_digits;
            m.emitted_records["instances"] = 1;
            m.exit_code = inst.membership_verified ? kPass : kFail;
            write_manifest(m);
        }
        return inst.membership_verified ? kPass : kFail;
    });
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string degrees = "2,3";
    std::string betas = "0:1:0.05";
    int starts = 6;
    std::uint64_t seed = 1;
    std::string constraint = "none";
    std::string warm_start;
    std::string out;
    int threads = 0;
    long max_steps = 20000;
    int precision = 30;
};

int cmd_sweep(const SweepArgs& a) {
    SearchConfig tmpl;
    tmpl.starts = a.starts;
    tmpl.seed = a.seed;
    tmpl.threads = a.threads;
    tmpl.max_steps = a.max_steps;
    tmpl.verify_digits = a.precision;
    try {
        tmpl.constraint = constraint_from_string(a.constraint);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto degrees = parse_degrees(a.degrees);
    const auto betas = parse_betas(a.betas);

    std::vector<SweepRow> rows;
    if (!a.warm_start.empty()) {
        PolynomialDocument doc;
        try {
            doc = read_polynomial_document(a.warm_start);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        auto roots = document_roots(doc, PrecisionContext::for_degree(doc.degree()));
        // The warm start is re-anchored at each beta by dropping its root nearest beta.
        for (int n : degrees)
            for (double b : betas) {
                SearchConfig cfg = tmpl;
                if (static_cast<int>(roots.size()) == n) cfg.warm_start = free_roots(roots, b);
                auto part = sweep({n}, {b}, cfg);
                rows.insert(rows.end(), part.begin(), part.end());
            }
    } else {
        rows = sweep(degrees, betas, tmpl);
    }

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    long unverified = 0, findings = 0;
    for (const auto& r : rows) {
        unverified += !r.record.verified;
        findings += r.finding;
    }
    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(a.out, csv.str());
        auto m = manifest_for("sweep", a.out);
        if (!a.warm_start.empty()) m.inputs = {a.warm_start};
        m.precision = a.precision;
        m.seed = a.seed;
        m.emitted_records["rows"] = static_cast<long>(rows.size());
        m.emitted_records["findings"] = findings;
        m.emitted_records["unverified"] = unverified;
        m.exit_code = unverified ? kNonConvergence : kPass;
        write_manifest(m);
    }
    if (findings) std::fprintf(stderr, "%ld row(s) above the 3/10 bound; see verdict column\n", findings);
    if (unverified) std::fprintf(stderr, "%ld row(s) could not be verified at high precision\n", unverified);
    return unverified ? kNonConvergence : kPass;
}

// ---------------------------------------------------------------------------

int cmd_deg52(int precision, const std::string& data, const std::string& out) {
    require_precision(precision, true);
    auto doc = read_polynomial_document(deg52_data_file(data));
    PrecisionContext ctx(precision ? precision : PrecisionContext::for_degree(52).significant_digits);
    std::string text = with_precision(ctx, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        auto j = polynomial_to_json(build_polynomial<Real>(doc), ctx.significant_digits);
        j["beta"] = doc.beta.value_or("0.09");
        return j.dump(2) + "\n";
    });
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text(out, text);
        auto m = manifest_for("deg52", out);
        m.inputs = {deg52_data_file(data).string()};
        m.precision = ctx.significant_digits;
        m.emitted_records["polynomials"] = 1;
        write_manifest(m);
    }
    return kPass;
}

int cmd_counterexample(int precision, const std::string& format, const std::string& out) {
    require_precision(precision, true);
    ClaimOptions opt;
    opt.precision = precision;
    auto r = check_quartic_counterexample(opt);
    std::string text;
    if (format == "json") {
        text = json{{"passed", r.passed}, {"summary", r.summary}, {"record", r.details}}.dump(2) + "\n";
    } else {
        std::ostringstream os;
        const auto& d = r.details;
        if (d.contains("d")) {
            os << "beta                " << d["beta"].get<std::string>() << "\n"
               << "member of S(beta)   " << (d["member"].get<bool>() ? "yes" : "no") << "\n"
               << "d(P, beta)          " << d["d"].get<std::string>() << "\n"
               << "(1 + beta)/2        " << d["threshold"].get<std::string>() << "\n"
               << "|P'(beta)|          " << d["derivative_at_beta"].get<std::string>() << "\n"
               << "(1 + beta)^2        " << d["derivative_bound"].get<std::string>() << "\n";
            for (const auto& m : d["root_moduli"]) os << "root modulus        " << m.get<std::string>() << "\n";
            os << "bound fails         " << (d["exhibits_failure"].get<bool>() ? "yes" : "no") << "\n";
        } else {
            os << r.summary << "\n";
        }
        text = os.str();
    }
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text(out, text);
        auto m = manifest_for("counterexample", out);
        if (precision) m.precision = precision;
        m.emitted_records["records"] = 1;
        m.exit_code = r.passed ? kPass : kFail;
        write_manifest(m);
    }
    if (r.nonconvergence) return kNonConvergence;
    return r.passed ? kPass : kFail;
}

int cmd_report(int instances, std::uint64_t seed, int precision, const std::string& out) {
    PrecisionContext ctx(precision);
    auto rep = conjecture_report(instances, seed, ctx);
    std::printf("instances %d, findings %zu, minimum margin %s, non-converged %d\n", rep.instances,
                rep.findings.size(), to_decimal(rep.min_margin, 6).c_str(), rep.nonconverged);
    for (const auto& f : rep.findings)
        std::printf("finding: %s degree %d beta %.17g d %s margin %.3e%s\n", to_string(f.kind), f.degree, f.beta,
                    f.d.c_str(), f.margin, f.binding ? " (settled case: defect)" : "");
    const int code = rep.binding_violation() ? kFail : (rep.nonconverged ? kNonConvergence : kPass);
    if (!out.empty()) {
        write_text(out, rep.to_json().dump(2) + "\n");
        auto m = manifest_for("report", out);
        m.precision = precision;
        m.seed = seed;
        m.emitted_records["instances"] = rep.instances;
        m.emitted_records["findings"] = static_cast<long>(rep.findings.size());
        m.exit_code = code;
        write_manifest(m);
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_arguments.emplace_back(argv[i]);

    CLI::App app{"Distances from polynomial roots to critical points, bounds and extremal searches"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run the reproduction checks");
    verify->add_option("--precision", va.precision, "Significant digits (0: per-check default)")
        ;
    verify->add_option("--seed", va.seed, "Seed for the sampling checks");
    verify->add_option("--samples", va.samples, "Instances per sampling check")->check(CLI::PositiveNumber);
    verify->add_option("--only", va.only, "Run a single check by name");
    verify->add_option("--out", va.out, "Write a JSON report here");
    verify->add_option("--data", va.data, "Directory holding deg52_construction.json");
    bool list_checks = false;
    verify->add_flag("--list", list_checks, "List check names and exit");

    DistanceArgs da;
    auto* distance = app.add_subcommand("distance", "d(P, beta) for a polynomial JSON file");
    distance->add_option("file", da.file, "Polynomial JSON")->required()->check(CLI::ExistingFile);
    distance->add_option("--beta", da.beta, "Root of P (decimal); defaults to the file's beta");
    distance->add_option("--precision", da.precision, "Significant digits");
    distance->add_option("--out", da.out, "Write a JSON record here");

    SweepArgs sa;
    auto* sweep_cmd = app.add_subcommand("sweep", "Estimate r_n(beta) over a grid and write CSV");
    sweep_cmd->add_option("--degrees", sa.degrees, "Comma-separated degrees")->capture_default_str();
    sweep_cmd->add_option("--betas", sa.betas, "START:END:STEP or comma list")->capture_default_str();
    sweep_cmd->add_option("--starts", sa.starts, "Starts per grid point")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sa.seed, "Search seed");
    sweep_cmd->add_option("--constraint", sa.constraint, "none, real_rooted, collinear, real_coefficients")
        ->capture_default_str();
    sweep_cmd->add_option("--warm-start", sa.warm_start, "Polynomial JSON seeding start 0")->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", sa.out, "CSV path (stdout when omitted)");
    sweep_cmd->add_option("--threads", sa.threads, "Worker threads (0: hardware)");
    sweep_cmd->add_option("--max-steps", sa.max_steps, "Objective evaluations per start")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--precision", sa.precision, "Verification digits")->check(CLI::Range(16, 118));

    int dp = 0;
    std::string d_out, d_data = default_data_dir().string();
    auto* deg52 = app.add_subcommand("deg52", "Export the degree-52 construction as polynomial JSON");
    deg52->add_option("--precision", dp, "Significant digits");
    deg52->add_option("--out", d_out, "Output path (stdout when omitted)");
    deg52->add_option("--data", d_data, "Directory holding deg52_construction.json");

    int cp = 0;
    std::string c_format = "text", c_out;
    auto* counter = app.add_subcommand("counterexample", "Report on the non-real quartic");
    counter->add_option("--precision", cp, "Significant digits");
    counter->add_option("--format", c_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    counter->add_option("--out", c_out, "Output path (stdout when omitted)");

    int r_instances = 2000, r_precision = 30;
    std::uint64_t r_seed = 1;
    std::string r_out;
    auto* report = app.add_subcommand("report", "Margins against the 3/10 bound over random instances");
    report->add_option("--instances", r_instances, "Number of instances")->check(CLI::PositiveNumber);
    report->add_option("--seed", r_seed, "Sampling seed");
    report->add_option("--precision", r_precision, "Significant digits")->check(CLI::Range(16, 118));
    report->add_option("--out", r_out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*verify) {
            if (list_checks) {
                for (const auto& c : claim_catalog()) std::printf("%-24s %s\n", c.name.c_str(), c.description.c_str());
                return kPass;
            }
            return cmd_verify(va);
        }
        if (*distance) return cmd_distance(da);
        if (*sweep_cmd) return cmd_sweep(sa);
        if (*deg52) return cmd_deg52(dp, d_data, d_out);
        if (*counter) return cmd_counterexample(cp, c_format, c_out);
        if (*report) return cmd_report(r_instances, r_seed, r_precision, r_out);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const convergence_error& e) {
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return kNonConvergence;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    }
    return kUsage;
}
