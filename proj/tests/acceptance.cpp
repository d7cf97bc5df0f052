// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sendov/sendov.hpp"

using namespace sendov;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::vector<std::string>& details = {}) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
    for (const auto& d : details) std::printf("         %s\n", d.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Deg52Result d30, d50;

void criterion1() {
    auto t0 = Clock::now();
    d30 = deg52_distance(PrecisionContext(30), default_data_dir());
    d50 = deg52_distance(PrecisionContext(50), default_data_dir());
    auto d20 = deg52_distance(PrecisionContext(20), default_data_dir());
    double secs = seconds_since(t0);
    double rel = std::abs(d30.d - d50.d) / d50.d;
    bool pass = d20.d > 0.931 && d30.d > 0.931 && d50.d > 0.931 && rel < 1e-10 && secs < 60.0;
    report(1, pass, "degree-52 d(P, 0.09) > 0.931, stable between 30 and 50 digits, under 60 s",
           {"20 digits: " + d20.d_text, "30 digits: " + d30.d_text, "50 digits: " + d50.d_text,
            fmt("relative 30/50 gap %.2e (limit 1e-10)", rel), fmt("runtime %.2f s", secs)});
}

void criterion2() {
    double r52 = rn_at_zero<double>(52);
    bool pass = std::abs(r52 - 0.9254) <= 1e-4 && d50.d > r52;
    report(2, pass, "(1/52)^(1/51) = 0.9254 within 1e-4 and the degree-52 d exceeds it",
           {fmt("(1/52)^(1/51) = %.12f", r52), fmt("d - r52(0) = %.6e", d50.d - r52)});
}

void criterion3() {
    auto t0 = Clock::now();
    PrecisionContext ctx(30);
    auto rep = nonreal_exhibit<mp_real<48>>(ctx);
    double secs = seconds_since(t0);
    double d = static_cast<double>(rep.d);
    double dp = static_cast<double>(rep.derivative_at_beta);
    double maxmod = static_cast<double>(rep.max_root_modulus);
    bool pass = rep.member && maxmod < 1.0 && std::abs(d - 0.84197) <= 1e-4 && std::abs(dp - 2.80687) <= 1e-4 &&
                secs < 5.0;
    std::string moduli = "root moduli:";
    for (const auto& m : rep.root_moduli) moduli += " " + to_decimal(m, 10);
    report(3, pass, "non-real quartic at beta = 0.674: roots inside the disk, d = 0.84197, |P'(beta)| = 2.80687",
           {moduli, "d = " + to_decimal(rep.d, 15), "|P'(beta)| = " + to_decimal(rep.derivative_at_beta, 15),
            fmt("runtime %.3f s", secs)});
}

void criterion4() {
    auto t0 = Clock::now();
    double worst = 0.0;
    bool all_verified = true;
    for (int n : {2, 3}) {
        for (int i = 0; i <= 20; ++i) {
            const double b = i / 20.0;
            SearchConfig cfg;
            cfg.degree = n;
            cfg.beta = b;
            auto rec = estimate_rn(cfg);
            all_verified = all_verified && rec.verified;
            const double ref = n == 2 ? r2_formula(b) : r3_formula(b);
            worst = std::max(worst, rec.verified ? std::abs(rec.best_d - ref) : 1.0);
        }
    }
    double secs = seconds_since(t0);
    bool pass = all_verified && worst <= 1e-3 && secs < 300.0;
    report(4, pass, "search matches r_2 and r_3 closed forms on a 21-point grid within 1e-3, under 5 min",
           {fmt("worst error %.3e", worst), fmt("runtime %.1f s", secs)});
}

void criterion5() {
    ClaimOptions opt;
    opt.precision = 30;
    opt.samples = 1000;
    std::vector<std::string> lines;
    bool pass = true;
    auto run = [&](const char* label, CheckResult r) {
        pass = pass && r.passed;
        lines.push_back(std::string(r.passed ? "ok   " : "FAIL ") + label + ": " + r.summary);
        return r;
    };
    run("(a) Gauss-Lucas", check_gauss_lucas(opt));
    auto real = run("(b, c) interlacing and max(2/n, 1/sqrt(n))", check_all_real(opt));
    run("(d) product identity", check_identity(opt));
    run("(e) collinear bound", check_collinear(opt));
    run("(f) real quartic bounds", check_real_quartics(opt));
    run("(g) scalar inequality", check_scalar_inequality(opt, 10000));
    report(5, pass, "property suites (a)-(g), 1000 instances each, zero violations", lines);
}

void criterion6() {
    auto t0 = Clock::now();
    auto rep = conjecture_report(2000, 1, PrecisionContext(30));
    double secs = seconds_since(t0);
    int binding = 0;
    for (const auto& f : rep.findings) binding += f.binding ? 1 : 0;
    bool pass = !rep.binding_violation() && rep.instances == 2000;
    std::vector<std::string> lines{std::to_string(rep.instances) + " instances, " +
                                       std::to_string(rep.findings.size()) + " findings (" + std::to_string(binding) +
                                       " in settled cases), " + std::to_string(rep.nonconverged) + " non-converged",
                                   fmt("minimum margin %.6f", rep.min_margin), fmt("runtime %.1f s", secs)};
    for (const auto& f : rep.findings) lines.push_back("finding: " + f.witness.dump());
    report(6, pass, "2000-instance report against 1 - (3/10) beta (1 - beta), no violation in settled cases", lines);
}

void criterion7() {
    const std::vector<double> betas{0.95, 0.98, 0.99};
    std::vector<double> xs, ys;
    std::vector<std::string> lines;
    bool under = true;
    for (double b : betas) {
        SearchConfig cfg;
        cfg.degree = 5;
        cfg.beta = b;
        cfg.starts = 12;
        auto rec = estimate_rn(cfg);
        double x = 1.0 - b, y = 1.0 - rec.best_d;
        bool ok = rec.verified && y <= 0.3 * x + 1e-3;
        under = under && ok;
        xs.push_back(x);
        ys.push_back(y);
        lines.push_back("beta " + fmt("%.2f", b) + ": r5 >= " + rec.best_d_text + fmt(", (1 - r5)/(1 - beta) = %.6f", y / x) +
                        fmt(", expansion %.12f", r5_expansion(b)));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / xs.size();
        my += ys[i] / xs.size();
    }
    double sxy = 0, sxx = 0, sxy0 = 0, sxx0 = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy0 += xs[i] * ys[i];
        sxx0 += xs[i] * xs[i];
    }
    double slope = sxy / sxx;
    lines.push_back(fmt("least-squares slope %.6f (allowed [0.22, 0.30])", slope));
    lines.push_back(fmt("slope through the origin %.6f", sxy0 / sxx0));
    bool pass = under && slope >= 0.22 && slope <= 0.30;
    report(7, pass, "r_5 near beta = 1: 1 - r5 <= 0.3(1 - beta) + 1e-3 and fitted slope in [0.22, 0.30]", lines);
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
    } catch (const std::exception& e) {
        std::printf("[FAIL] aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
