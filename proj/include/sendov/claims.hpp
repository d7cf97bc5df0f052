#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sendov/io.hpp"
#include "sendov/line_case.hpp"
#include "sendov/metrics.hpp"
#include "sendov/quartic.hpp"
#include "sendov/sampling.hpp"
#include "sendov/search.hpp"

#ifndef SENDOV_DATA_DIR
#define SENDOV_DATA_DIR "data"
#endif

namespace sendov {

inline std::filesystem::path default_data_dir() { return SENDOV_DATA_DIR; }

inline std::filesystem::path deg52_data_file(const std::filesystem::path& data_dir = default_data_dir()) {
    return data_dir / "deg52_construction.json";
}

/// Settings shared by the reproduction checks.
struct ClaimOptions {
    int precision = 0;  ///< significant digits; 0 picks the per-check default
    std::uint64_t seed = 1;
    int samples = 1000;
    std::filesystem::path data_dir = default_data_dir();

    PrecisionContext context(int degree = 0) const {
        return precision > 0 ? PrecisionContext(precision) : PrecisionContext::for_degree(degree);
    }
};

struct CheckResult {
    std::string name;
    bool passed = false;
    bool nonconvergence = false;  ///< failed because a root finder gave up
    std::string summary;
    json details = json::object();
    double seconds = 0.0;
};

/// d(P, 0.09) for the stored degree-52 construction.
struct Deg52Result {
    int digits = 0;
    std::string d_text;
    double d = 0.0;
    std::string nearest_critical_re;
    std::string nearest_critical_im;
    double rn_at_zero = 0.0;
};

inline Deg52Result deg52_distance(const PrecisionContext& ctx, const std::filesystem::path& data_dir) {
    auto doc = read_polynomial_document(deg52_data_file(data_dir));
    const std::string beta_text = doc.beta.value_or("0.09");
    return with_precision(ctx, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        auto p = build_polynomial<Real>(doc);
        auto inst = make_instance(p, Complex<Real>(real_from_string<Real>(beta_text)), ctx);
        Deg52Result r;
        r.digits = ctx.significant_digits;
        r.d_text = to_decimal(*inst.d_value, ctx.significant_digits);
        r.d = static_cast<double>(*inst.d_value);
        r.nearest_critical_re = to_decimal(inst.nearest_critical_point.re, ctx.significant_digits);
        r.nearest_critical_im = to_decimal(inst.nearest_critical_point.im, ctx.significant_digits);
        r.rn_at_zero = static_cast<double>(rn_at_zero<Real>(p.degree()));
        return r;
    });
}

namespace detail {

template <class F>
CheckResult timed_check(std::string name, F&& body) {
    CheckResult res;
    res.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(res);
    } catch (const convergence_error& e) {
        res.passed = false;
        res.nonconvergence = true;
        res.summary = std::string("non-convergence: ") + e.what();
    } catch (const std::exception& e) {
        res.passed = false;
        res.summary = std::string("error: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline std::mt19937_64 check_rng(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

inline std::string fixed(double x, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << x;
    return os.str();
}

template <class Rng>
int random_degree(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace detail

inline CheckResult check_deg52(const ClaimOptions& opt) {
    return detail::timed_check("deg52", [&](CheckResult& res) {
        auto r = deg52_distance(opt.context(52), opt.data_dir);
        res.passed = r.d > 0.931;
        res.summary = "d(P, 0.09) = " + r.d_text + " at " + std::to_string(r.digits) + " digits (needs > 0.931)";
        res.details = {{"digits", r.digits},
                       {"d", r.d_text},
                       {"nearest_critical_point", {r.nearest_critical_re, r.nearest_critical_im}},
                       {"rn_at_zero_52", to_decimal(r.rn_at_zero, 17)},
                       {"exceeds_rn_at_zero", r.d > r.rn_at_zero}};
    });
}

inline CheckResult check_quartic_counterexample(const ClaimOptions& opt) {
    return detail::timed_check("quartic_counterexample", [&](CheckResult& res) {
        auto ctx = opt.context(4);
        with_precision(ctx, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            auto rep = nonreal_exhibit<Real>(ctx);
            const double d = static_cast<double>(rep.d);
            const double dp = static_cast<double>(rep.derivative_at_beta);
            const double maxmod = static_cast<double>(rep.max_root_modulus);
            res.passed = rep.member && maxmod < 1.0 && std::abs(d - 0.84197) <= 1e-4 &&
                         std::abs(dp - 2.80687) <= 1e-4 && rep.exhibits_failure;
            res.summary = "d = " + detail::fixed(d, 8) + ", |P'(beta)| = " + detail::fixed(dp, 8) +
                          " > (1+beta)^2 = " + detail::fixed(static_cast<double>(rep.derivative_bound), 8) +
                          ", max |root| = " + detail::fixed(maxmod, 8);
            json moduli = json::array();
            for (const auto& m : rep.root_moduli) moduli.push_back(to_decimal(m, 20));
            res.details = {{"beta", to_decimal(rep.beta, 20)},
                           {"member", rep.member},
                           {"d", to_decimal(rep.d, ctx.significant_digits)},
                           {"threshold", to_decimal(rep.threshold, 20)},
                           {"derivative_at_beta", to_decimal(rep.derivative_at_beta, ctx.significant_digits)},
                           {"derivative_bound", to_decimal(rep.derivative_bound, 20)},
                           {"root_moduli", moduli},
                           {"polynomial", polynomial_to_json(rep.polynomial, ctx.significant_digits)},
                           {"exhibits_failure", rep.exhibits_failure}};
        });
    });
}

/// Search estimates of r_2 and r_3 on beta = 0, 0.05, ..., 1 against the closed forms.
inline CheckResult check_closed_forms(const ClaimOptions& opt) {
    return detail::timed_check("closed_forms", [&](CheckResult& res) {
        double worst = 0.0;
        bool all_verified = true;
        json rows = json::array();
        for (int n : {2, 3}) {
            for (int i = 0; i <= 20; ++i) {
                const double b = i / 20.0;
                SearchConfig cfg;
                cfg.degree = n;
                cfg.beta = b;
                cfg.seed = opt.seed;
                auto rec = estimate_rn(cfg);
                const double ref = n == 2 ? r2_formula(b) : r3_formula(b);
                all_verified = all_verified && rec.verified;
                const double err = rec.verified ? std::abs(rec.best_d - ref) : 1.0;
                worst = std::max(worst, err);
                rows.push_back({{"degree", n}, {"beta", b}, {"estimate", rec.best_d_text}, {"closed_form", ref},
                                {"error", err}});
            }
        }
        res.passed = all_verified && worst <= 1e-3;
        res.summary = "42 grid points, worst |estimate - closed form| = " + to_decimal(worst, 3) + " (limit 1e-3)";
        res.details = {{"worst_error", worst}, {"rows", rows}};
    });
}

/// Real-rooted members: Rolle interlacing and d <= max(2/n, 1/sqrt(n)).
inline CheckResult check_all_real(const ClaimOptions& opt) {
    return detail::timed_check("all_real_bound", [&](CheckResult& res) {
        auto ctx = opt.context();
        auto rng = detail::check_rng(opt.seed, 11);
        int interlace_fail = 0, bound_fail = 0;
        double worst_margin = 1e300;
        with_precision(ctx, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            for (int s = 0; s < opt.samples; ++s) {
                const int n = detail::random_degree(rng, 2, 12);
                auto ri = random_real_rooted(n, rng);
                auto p = from_roots(lift<Real>(ri.roots));
                const Real beta(ri.beta());
                auto w = verify_interlacing(p, ctx, std::optional<Real>(beta));
                if (!w.interlaced) ++interlace_fail;
                auto inst = make_instance(p, Complex<Real>(beta), ctx);
                auto chk = check_bound(inst, all_real_bound<Real>(n));
                if (chk.verdict != Verdict::holds) ++bound_fail;
                worst_margin = std::min(worst_margin, static_cast<double>(chk.margin));
            }
        });
        res.passed = interlace_fail == 0 && bound_fail == 0;
        res.summary = std::to_string(opt.samples) + " real-rooted instances, " + std::to_string(interlace_fail) +
                      " interlacing failures, " + std::to_string(bound_fail) + " bound violations, worst margin " +
                      to_decimal(worst_margin, 4);
        res.details = {{"samples", opt.samples},
                       {"interlacing_failures", interlace_fail},
                       {"bound_violations", bound_fail},
                       {"worst_margin", worst_margin}};
    });
}

/// Collinear roots: rigid normalization onto [-1, 1] preserves d, and
/// d <= 1 - beta(1 - beta)/2.
inline CheckResult check_collinear(const ClaimOptions& opt) {
    return detail::timed_check("collinear_bound", [&](CheckResult& res) {
        auto ctx = opt.context();
        auto rng = detail::check_rng(opt.seed, 12);
        int bound_fail = 0, rigid_fail = 0, interval_fail = 0;
        double worst_margin = 1e300, worst_shift = 0.0;
        with_precision(ctx, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            const Real tol = effective_cluster_tolerance<Real>(ctx, 12);
            for (int s = 0; s < opt.samples; ++s) {
                const int n = detail::random_degree(rng, 2, 12);
                auto ri = random_collinear(n, rng);
                auto p = from_roots(lift<Real>(ri.roots));
                const Complex<Real> beta(Real(ri.beta()));
                auto inst = make_instance(p, beta, ctx);
                auto chk = check_bound(inst, line_bound<Real>());
                if (chk.verdict != Verdict::holds) ++bound_fail;
                worst_margin = std::min(worst_margin, static_cast<double>(chk.margin));

                auto norm = normalize_collinear(p, beta, tol, ctx);
                auto moved = make_instance(norm.polynomial, Complex<Real>(norm.beta), ctx);
                const double shift = static_cast<double>(abs(*moved.d_value - *inst.d_value));
                worst_shift = std::max(worst_shift, shift);
                if (shift > static_cast<double>(tol)) ++rigid_fail;
                for (const auto& z : moved.roots.points)
                    if (abs(z.re) > Real(1) + tol || abs(z.im) > tol) {
                        ++interval_fail;
                        break;
                    }
                if (n >= 3 && *moved.d_value > allreal_bound<Real>(n) + tol) ++bound_fail;
            }
        });
        res.passed = bound_fail == 0 && rigid_fail == 0 && interval_fail == 0;
        res.summary = std::to_string(opt.samples) + " collinear instances, " + std::to_string(bound_fail) +
                      " bound violations, worst margin " + to_decimal(worst_margin, 4) + ", max d shift " +
                      to_decimal(worst_shift, 2);
        res.details = {{"samples", opt.samples},
                       {"bound_violations", bound_fail},
                       {"rigidity_failures", rigid_fail},
                       {"interval_failures", interval_fail},
                       {"worst_margin", worst_margin},
                       {"max_d_shift", worst_shift}};
    });
}

/// Real quartics: the derivative bound at beta and d <= 1 - beta(1 - beta)/3.
inline CheckResult check_real_quartics(const ClaimOptions& opt) {
    return detail::timed_check("real_quartic", [&](CheckResult& res) {
        auto ctx = opt.context(4);
        auto rng = detail::check_rng(opt.seed, 13);
        int fail = 0, applicable = 0;
        double worst_margin = 1e300;
        with_precision(ctx, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            for (int s = 0; s < opt.samples; ++s) {
                auto ri = random_real_quartic(rng);
                auto p = from_roots(lift<Real>(ri.roots));
                auto rec = check_real_quartic(p, Real(ri.beta()), ctx);
                auto lem = check_derivative_bound(p, Real(ri.beta()), ctx);
                if (!rec.holds() || !lem.holds()) ++fail;
                if (rec.applicable) ++applicable;
                worst_margin = std::min(worst_margin, static_cast<double>(rec.distance_bound - rec.d));
            }
        });
        res.passed = fail == 0;
        res.summary = std::to_string(opt.samples) + " real quartics (" + std::to_string(applicable) +
                      " with d > (1+beta)/2), " + std::to_string(fail) + " violations, worst margin " +
                      to_decimal(worst_margin, 4);
        res.details = {{"samples", opt.samples},
                       {"applicable", applicable},
                       {"violations", fail},
                       {"worst_margin", worst_margin}};
    });
}

/// n prod |beta - zeta_i| = prod_{i != k} |beta - z_i| to relative 1e-20.
inline CheckResult check_identity(const ClaimOptions& opt) {
    return detail::timed_check("product_identity", [&](CheckResult& res) {
        auto ctx = opt.context();
        auto rng = detail::check_rng(opt.seed, 14);
        int fail = 0;
        double worst = 0.0;
        const double limit = std::max(1e-20, std::pow(10.0, -ctx.significant_digits + 10));
        with_precision(ctx, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            for (int s = 0; s < opt.samples; ++s) {
                const int n = detail::random_degree(rng, 2, 12);
                auto ri = random_general_instance(n, rng);
                auto p = from_roots(lift<Real>(ri.roots));
                auto id = check_product_identity(p, Complex<Real>(Real(ri.beta())), ctx);
                const double rel = static_cast<double>(abs(id.lhs - id.rhs) / id.rhs);
                worst = std::max(worst, rel);
                if (!(rel <= limit)) ++fail;
            }
        });
        res.passed = fail == 0;
        res.summary = std::to_string(opt.samples) + " instances, worst relative gap " + to_decimal(worst, 3) +
                      " (limit " + to_decimal(limit, 1) + ")";
        res.details = {{"samples", opt.samples}, {"failures", fail}, {"worst_relative_gap", worst}, {"limit", limit}};
    });
}

/// 1 - x <= (1 - x/3)^3 on a uniform grid of [0, 1].
inline CheckResult check_scalar_inequality(const ClaimOptions& opt, int points = 10000) {
    return detail::timed_check("scalar_inequality", [&](CheckResult& res) {
        auto ctx = opt.context();
        int fail = 0;
        double min_gap = 1e300;
        with_precision(ctx, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            for (int i = 0; i < points; ++i) {
                Real x = Real(i) / Real(points - 1);
                auto [lhs, rhs] = cube_inequality(x);
                if (lhs > rhs) ++fail;
                min_gap = std::min(min_gap, static_cast<double>(rhs - lhs));
            }
        });
        res.passed = fail == 0;
        res.summary = std::to_string(points) + " grid points, " + std::to_string(fail) + " violations, min gap " +
                      to_decimal(min_gap, 3);
        res.details = {{"points", points}, {"violations", fail}, {"min_gap", min_gap}};
    });
}

namespace detail {

/// Distance from z to the convex hull of pts (0 inside). Monotone-chain hull;
/// hulls with fewer than three vertices are treated as a point or segment.
inline double distance_to_hull(std::vector<Complex<double>> pts, const Complex<double>& z) {
    auto cross = [](const Complex<double>& o, const Complex<double>& a, const Complex<double>& b) {
        return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
    };
    auto segment = [](const Complex<double>& a, const Complex<double>& b, const Complex<double>& q) {
        Complex<double> ab = b - a;
        double len2 = norm(ab);
        double t = len2 > 0 ? std::clamp(((q.re - a.re) * ab.re + (q.im - a.im) * ab.im) / len2, 0.0, 1.0) : 0.0;
        return abs(q - (a + ab * t));
    };
    std::sort(pts.begin(), pts.end(), lex_less<double>);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return abs(z - pts[0]);
    std::vector<Complex<double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) return segment(hull[0], hull.back(), z);
    bool inside = true;
    double best = 1e300;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, z) < 0) inside = false;
        best = std::min(best, segment(a, b, z));
    }
    return inside ? 0.0 : best;
}

}  // namespace detail

/// Critical points stay inside the convex hull of the roots.
inline CheckResult check_gauss_lucas(const ClaimOptions& opt) {
    return detail::timed_check("gauss_lucas", [&](CheckResult& res) {
        auto ctx = opt.context();
        auto rng = detail::check_rng(opt.seed, 15);
        int fail = 0;
        double worst = 0.0;
        const double tol = 1e-12;
        with_precision(ctx, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            for (int s = 0; s < opt.samples; ++s) {
                const int n = detail::random_degree(rng, 2, 12);
                auto ri = random_general_instance(n, rng);
                auto p = from_roots(lift<Real>(ri.roots));
                auto cs = critical_points(p, ctx);
                if (!cs.converged) throw convergence_error("gauss_lucas: critical points did not converge");
                double out = 0.0;
                for (const auto& z : cs.points) out = std::max(out, detail::distance_to_hull(ri.roots, complex_cast<double>(z)));
                worst = std::max(worst, out);
                if (out > tol) ++fail;
            }
        });
        res.passed = fail == 0;
        res.summary = std::to_string(opt.samples) + " instances, " + std::to_string(fail) +
                      " critical points outside the root hull, worst distance " + to_decimal(worst, 2);
        res.details = {{"samples", opt.samples}, {"failures", fail}, {"worst_distance", worst}, {"tolerance", tol}};
    });
}

struct ClaimCheck {
    std::string name;
    std::string description;
    std::function<CheckResult(const ClaimOptions&)> run;
};

/// Reproduction checks in run order.
inline const std::vector<ClaimCheck>& claim_catalog() {
    static const std::vector<ClaimCheck> checks{
        {"deg52", "degree-52 construction has d(P, 0.09) > 0.931", check_deg52},
        {"quartic_counterexample", "non-real quartic breaks the real-quartic derivative bound",
         check_quartic_counterexample},
        {"closed_forms", "search matches the r_2 and r_3 closed forms", check_closed_forms},
        {"all_real_bound", "interlacing and max(2/n, 1/sqrt(n)) for real roots", check_all_real},
        {"collinear_bound", "1 - beta(1 - beta)/2 for collinear roots", check_collinear},
        {"real_quartic", "derivative bound and 1 - beta(1 - beta)/3 for real quartics", check_real_quartics},
        {"product_identity", "n prod |beta - zeta_i| = prod |beta - z_i|", check_identity},
        {"scalar_inequality", "1 - x <= (1 - x/3)^3 on [0, 1]",
         [](const ClaimOptions& o) { return check_scalar_inequality(o); }},
        {"gauss_lucas", "critical points inside the convex hull of the roots", check_gauss_lucas},
    };
    return checks;
}

/// Runs the catalog, or the single check named `only`.
inline std::vector<CheckResult> run_claims(const ClaimOptions& opt, const std::string& only = "") {
    std::vector<CheckResult> out;
    bool found = only.empty();
    for (const auto& c : claim_catalog()) {
        if (!only.empty() && c.name != only) continue;
        found = true;
        out.push_back(c.run(opt));
    }
    if (!found) throw std::invalid_argument("unknown check '" + only + "'");
    return out;
}

// ---------------------------------------------------------------------------
// Report mode for the 3/10 bound over random instances.

enum class InstanceKind { general, real_rooted, real_quartic, collinear };

inline const char* to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::general: return "general";
        case InstanceKind::real_rooted: return "real_rooted";
        case InstanceKind::real_quartic: return "real_quartic";
        case InstanceKind::collinear: return "collinear";
    }
    return "?";
}

/// A negative margin against 1 - (3/10) beta (1 - beta), with its witness.
struct ConjectureFinding {
    InstanceKind kind = InstanceKind::general;
    int degree = 0;
    double beta = 0.0;
    std::string d;
    double margin = 0.0;
    /// Degree <= 3, real quartics and roots on a line (real-rooted included) are
    /// settled cases where a violation is a defect rather than a discovery.
    bool binding = false;
    json witness;
};

struct ConjectureReport {
    int instances = 0;
    std::map<std::string, int> per_kind;
    double min_margin = 1e300;
    std::vector<ConjectureFinding> findings;
    int nonconverged = 0;

    bool binding_violation() const {
        for (const auto& f : findings)
            if (f.binding) return true;
        return false;
    }

    json to_json() const {
        json f = json::array();
        for (const auto& x : findings)
            f.push_back({{"kind", to_string(x.kind)},
                         {"degree", x.degree},
                         {"beta", x.beta},
                         {"d", x.d},
                         {"margin", x.margin},
                         {"binding", x.binding},
                         {"witness", x.witness}});
        return {{"instances", instances}, {"per_kind", per_kind}, {"min_margin", min_margin},
                {"nonconverged", nonconverged}, {"findings", f}};
    }
};

/// `instances` random members of S(beta) with degrees 2..12, cycling through
/// general, real-rooted, real-quartic and collinear configurations.
inline ConjectureReport conjecture_report(int instances, std::uint64_t seed, const PrecisionContext& ctx) {
    ConjectureReport rep;
    auto rng = detail::check_rng(seed, 21);
    with_precision(ctx, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        const auto bound = conjecture_bound<Real>();
        for (int s = 0; s < instances; ++s) {
            const auto kind = static_cast<InstanceKind>(s % 4);
            int n = detail::random_degree(rng, 2, 12);
            RandomInstance ri;
            switch (kind) {
                case InstanceKind::general: ri = random_general_instance(n, rng); break;
                case InstanceKind::real_rooted: ri = random_real_rooted(n, rng); break;
                case InstanceKind::real_quartic: ri = random_real_quartic(rng); break;
                case InstanceKind::collinear: ri = random_collinear(n, rng); break;
            }
            n = static_cast<int>(ri.roots.size());
            ++rep.instances;
            ++rep.per_kind[to_string(kind)];
            try {
                auto p = from_roots(lift<Real>(ri.roots));
                auto inst = make_instance(p, Complex<Real>(Real(ri.beta())), ctx);
                auto chk = check_bound(inst, bound);
                const double margin = static_cast<double>(chk.margin);
                rep.min_margin = std::min(rep.min_margin, margin);
                if (chk.verdict == Verdict::violated) {
                    ConjectureFinding f;
                    f.kind = kind;
                    f.degree = n;
                    f.beta = ri.beta();
                    f.d = to_decimal(*inst.d_value, ctx.significant_digits);
                    f.margin = margin;
                    f.binding = n <= 3 || kind != InstanceKind::general;
                    f.witness = roots_to_json(ri.roots, ri.beta());
                    rep.findings.push_back(std::move(f));
                }
            } catch (const convergence_error&) {
                ++rep.nonconverged;
            }
        }
    });
    return rep;
}

}  // namespace sendov
