#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sendov/roots.hpp"

namespace sendov {

/// Thrown when a root or critical-point computation fails to converge.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pair (P, beta) together with the evidence for P in S(beta) and, once
/// computed, the distance d(P, beta) to the nearest critical point.
template <class Real>
struct SendovInstance {
    Polynomial<Real> polynomial;
    Complex<Real> beta;
    Real disk_tolerance{0};
    bool membership_verified = false;
    std::string membership_diagnostic;
    RootSet<Real> roots;
    /// Index into roots.points of the root identified with beta.
    std::size_t beta_index = 0;

    std::optional<Real> d_value;
    Complex<Real> nearest_critical_point;
    CriticalSet<Real> critical;

    int degree() const { return polynomial.degree(); }
    Real max_root_modulus() const {
        Real m(0);
        for (const auto& z : roots.points) m = std::max(m, Real(abs(z)));
        return m;
    }
};

/// Rotates every root and beta by e^{-i arg beta}, so beta lands on [0, 1].
/// Needs known roots (rotation acts on the root set).
template <class Real>
std::pair<Polynomial<Real>, Complex<Real>> rotate_to_real_beta(const Polynomial<Real>& p, const Complex<Real>& beta,
                                                               const PrecisionContext& ctx) {
    Real r = abs(beta);
    if (r == 0 || (beta.im == 0 && beta.re >= 0)) return {p, beta};
    Complex<Real> u = conj(beta) / r;
    auto rs = roots_of(p, ctx);
    std::vector<Complex<Real>> rotated;
    rotated.reserve(rs.points.size());
    for (const auto& z : rs.points) rotated.push_back(z * u);
    return {from_roots(rotated), Complex<Real>(r)};
}

/// Decides P in S(beta): degree >= 2, all roots within the disk of radius
/// 1 + disk_tolerance and one root within disk_tolerance of beta.
///
/// With `normalize_rotation`, a non-real beta is first rotated onto [0, 1].
/// Throws convergence_error when the roots of P cannot be found.
template <class Real>
SendovInstance<Real> check_membership(const Polynomial<Real>& p, const Complex<Real>& beta,
                                      const PrecisionContext& ctx, std::optional<Real> disk_tolerance = {},
                                      bool normalize_rotation = false) {
    SendovInstance<Real> inst;
    inst.polynomial = p;
    inst.beta = beta;
    if (normalize_rotation) std::tie(inst.polynomial, inst.beta) = rotate_to_real_beta(p, beta, ctx);
    inst.disk_tolerance = disk_tolerance ? *disk_tolerance : effective_cluster_tolerance<Real>(ctx, p.degree());

    inst.roots = roots_of(inst.polynomial, ctx);
    if (!inst.roots.converged)
        throw convergence_error("check_membership: root finding did not converge (max scaled residual " +
                                to_decimal(inst.roots.max_residual(), 6) + ")");

    const Real one = Real(1);
    if (abs(inst.beta) > one + inst.disk_tolerance) {
        inst.membership_diagnostic = "|beta| = " + to_decimal(Real(abs(inst.beta)), 12) + " exceeds 1";
        return inst;
    }
    if (inst.polynomial.degree() < 2) {
        inst.membership_diagnostic = "degree < 2";
        return inst;
    }
    for (const auto& z : inst.roots.points) {
        if (abs(z) > one + inst.disk_tolerance) {
            inst.membership_diagnostic = "root " + to_decimal(z.re, 12) + (z.im < 0 ? "" : "+") +
                                         to_decimal(z.im, 12) + "i has modulus " + to_decimal(Real(abs(z)), 12) +
                                         " > 1";
            return inst;
        }
    }
    std::size_t best = 0;
    Real best_dist = abs(inst.roots.points[0] - inst.beta);
    for (std::size_t i = 1; i < inst.roots.size(); ++i) {
        Real dist = abs(inst.roots.points[i] - inst.beta);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    inst.beta_index = best;
    if (best_dist > inst.disk_tolerance) {
        inst.membership_diagnostic = "beta is not a root (nearest root at distance " + to_decimal(best_dist, 6) + ")";
        return inst;
    }
    inst.membership_verified = true;
    return inst;
}

/// d(P, beta): distance from beta to the closest critical point of P.
///
/// Clusters of critical points are measured at their centroid. Ties go to the
/// lexicographically smallest point, which leaves the distance unaffected.
template <class Real>
Real critical_distance(SendovInstance<Real>& inst, const PrecisionContext& ctx) {
    if (!inst.membership_verified)
        throw std::logic_error("critical_distance: instance is not a verified member of S(beta)");
    inst.critical = critical_points(inst.polynomial, ctx);
    if (!inst.critical.converged)
        throw convergence_error("critical_distance: derivative root finding did not converge (max scaled residual " +
                                to_decimal(inst.critical.max_residual(), 6) + ")");
    std::vector<Complex<Real>> pts;
    for (const auto& c : inst.critical.clusters) pts.push_back(c.centroid);
    std::sort(pts.begin(), pts.end(), lex_less<Real>);
    std::size_t best = 0;
    Real best_d = abs(pts[0] - inst.beta);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Real d = abs(pts[i] - inst.beta);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    inst.d_value = best_d;
    inst.nearest_critical_point = pts[best];
    return best_d;
}

/// Membership plus critical distance in one call; throws std::domain_error
/// when P is not in S(beta).
template <class Real>
SendovInstance<Real> make_instance(const Polynomial<Real>& p, const Complex<Real>& beta, const PrecisionContext& ctx,
                                   std::optional<Real> disk_tolerance = {}) {
    auto inst = check_membership(p, beta, ctx, disk_tolerance);
    if (!inst.membership_verified) throw std::domain_error("not a member of S(beta): " + inst.membership_diagnostic);
    critical_distance(inst, ctx);
    return inst;
}

// ---------------------------------------------------------------------------
// Closed-form bounds and extremal values.

namespace detail {
template <class Real>
void require_unit_interval(const Real& beta, const char* who) {
    if (!(beta >= Real(0) && beta <= Real(1))) throw std::domain_error(std::string(who) + ": beta must lie in [0, 1]");
}
}  // namespace detail

/// 1 - c beta (1 - beta). c = 3/10 is the conjectured best quadratic constant.
template <class Real>
Real bound_quadratic(const Real& beta, const Real& c) {
    detail::require_unit_interval(beta, "bound_quadratic");
    return Real(1) - c * beta * (Real(1) - beta);
}

template <class Real>
Real bound_quadratic(const Real& beta) {
    return bound_quadratic(beta, Real(3) / Real(10));
}

/// r_2(beta) = (1 + beta) / 2.
template <class Real>
Real r2_formula(const Real& beta) {
    detail::require_unit_interval(beta, "r2_formula");
    return (Real(1) + beta) / Real(2);
}

/// r_3(beta) = [3 beta + sqrt(12 - 3 beta^2)] / 6.
template <class Real>
Real r3_formula(const Real& beta) {
    using std::sqrt;
    detail::require_unit_interval(beta, "r3_formula");
    return (Real(3) * beta + sqrt(Real(12) - Real(3) * beta * beta)) / Real(6);
}

/// r_n(0) = (1/n)^{1/(n-1)}.
template <class Real>
Real rn_at_zero(int n) {
    using std::pow;
    if (n < 2) throw std::domain_error("rn_at_zero: n must be >= 2");
    return pow(Real(1) / Real(n), Real(1) / Real(n - 1));
}

/// Two-term expansion of r_5 near beta = 1: 1 - (3/10)(1-beta) + (1/200)(1-beta)^2.
template <class Real>
Real r5_expansion(const Real& beta) {
    Real x = Real(1) - beta;
    return Real(1) - Real(3) / Real(10) * x + x * x / Real(200);
}

enum class Applicability {
    any,
    degree_equals,         ///< degree == BoundSpec::degree
    all_real_roots,        ///< every root real
    collinear_roots,       ///< all roots on one line
    real_coefficients_deg  ///< real coefficients and degree == BoundSpec::degree
};

/// A named bound beta -> value together with the class of instances it covers.
template <class Real>
struct BoundSpec {
    std::string name;
    std::function<Real(const Real&)> eval;
    Applicability applicability = Applicability::any;
    int degree = 0;
};

template <class Real>
BoundSpec<Real> conjecture_bound(Real c = Real(3) / Real(10)) {
    return {"quadratic_c=" + to_decimal(c, 6), [c](const Real& b) { return bound_quadratic(b, c); },
            Applicability::any, 0};
}

template <class Real>
BoundSpec<Real> degree2_bound() {
    return {"degree2_half", [](const Real& b) { return bound_quadratic(b, Real(1) / Real(2)); },
            Applicability::degree_equals, 2};
}

template <class Real>
BoundSpec<Real> degree3_bound() {
    return {"degree3_third", [](const Real& b) { return bound_quadratic(b, Real(1) / Real(3)); },
            Applicability::degree_equals, 3};
}

template <class Real>
BoundSpec<Real> r2_bound() {
    return {"r2_closed_form", [](const Real& b) { return r2_formula(b); }, Applicability::degree_equals, 2};
}

template <class Real>
BoundSpec<Real> r3_bound() {
    return {"r3_closed_form", [](const Real& b) { return r3_formula(b); }, Applicability::degree_equals, 3};
}

template <class Real>
BoundSpec<Real> line_bound() {
    return {"collinear_half", [](const Real& b) { return bound_quadratic(b, Real(1) / Real(2)); },
            Applicability::collinear_roots, 0};
}

template <class Real>
BoundSpec<Real> real_quartic_bound() {
    return {"real_quartic_third", [](const Real& b) { return bound_quadratic(b, Real(1) / Real(3)); },
            Applicability::real_coefficients_deg, 4};
}

/// max(2/n, 1/sqrt(n)) for real-rooted polynomials of degree n.
template <class Real>
BoundSpec<Real> all_real_bound(int n) {
    using std::sqrt;
    if (n < 2) throw std::domain_error("all_real_bound: n must be >= 2");
    Real v = std::max(Real(2) / Real(n), Real(Real(1) / sqrt(Real(n))));
    return {"all_real_n=" + std::to_string(n), [v](const Real&) { return v; }, Applicability::all_real_roots, n};
}

template <class Real>
BoundSpec<Real> constant_bound(std::string name, Real value) {
    return {std::move(name), [value](const Real&) { return value; }, Applicability::any, 0};
}

enum class Verdict { holds, violated, not_applicable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::not_applicable: return "not_applicable";
    }
    return "?";
}

template <class Real>
struct BoundCheck {
    Verdict verdict = Verdict::not_applicable;
    Real bound_value{0};
    Real margin{0};
};

namespace detail {

template <class Real>
bool all_roots_real(const SendovInstance<Real>& inst) {
    using std::abs;
    for (const auto& z : inst.roots.resolved())
        if (abs(z.im) > inst.disk_tolerance) return false;
    return true;
}

/// Largest distance of a root from the principal axis of the root cloud.
template <class Real>
Real collinearity_defect(std::span<const Complex<Real>> pts) {
    using std::abs;
    using std::atan2;
    Complex<Real> m;
    for (const auto& z : pts) m += z;
    m /= Real(static_cast<double>(pts.size()));
    Real sxx(0), syy(0), sxy(0);
    for (const auto& z : pts) {
        Complex<Real> d = z - m;
        sxx += d.re * d.re;
        syy += d.im * d.im;
        sxy += d.re * d.im;
    }
    Real theta = atan2(Real(2) * sxy, sxx - syy) / Real(2);
    Complex<Real> u = conj(polar(Real(1), theta));
    Real worst(0);
    for (const auto& z : pts) worst = std::max(worst, Real(abs(((z - m) * u).im)));
    return worst;
}

}  // namespace detail

template <class Real>
bool is_applicable(const BoundSpec<Real>& bound, const SendovInstance<Real>& inst) {
    switch (bound.applicability) {
        case Applicability::any: return true;
        case Applicability::degree_equals: return inst.degree() == bound.degree;
        case Applicability::all_real_roots:
            return detail::all_roots_real(inst) && (bound.degree == 0 || inst.degree() == bound.degree);
        case Applicability::collinear_roots: {
            auto pts = inst.roots.resolved();
            return detail::collinearity_defect<Real>(pts) <= inst.disk_tolerance;
        }
        case Applicability::real_coefficients_deg:
            return inst.degree() == bound.degree && inst.polynomial.has_real_coefficients(inst.disk_tolerance);
    }
    return false;
}

/// margin = bound(|beta|) - d(P, beta); holds iff margin >= -disk_tolerance.
template <class Real>
BoundCheck<Real> check_bound(const SendovInstance<Real>& inst, const BoundSpec<Real>& bound) {
    if (!inst.d_value) throw std::logic_error("check_bound: critical distance not computed");
    BoundCheck<Real> out;
    if (!is_applicable(bound, inst)) return out;
    Real b = abs(inst.beta);
    if (b > Real(1)) b = Real(1);
    out.bound_value = bound.eval(b);
    out.margin = out.bound_value - *inst.d_value;
    out.verdict = out.margin >= -inst.disk_tolerance ? Verdict::holds : Verdict::violated;
    return out;
}

}  // namespace sendov
