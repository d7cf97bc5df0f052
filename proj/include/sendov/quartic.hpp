#pragma once

#include <string>
#include <vector>

#include "sendov/metrics.hpp"

namespace sendov {

/// A polynomial described by its root beta and the roots of its derivative.
template <class Real>
struct CriticalPrescription {
    Complex<Real> beta;
    std::vector<Complex<Real>> critical_points;  ///< n - 1 points, with multiplicity
    int degree() const { return static_cast<int>(critical_points.size()) + 1; }
};

/// P(z) = n * integral_beta^z prod (w - zeta_i) dw, integrated term by term.
/// P is monic, P(beta) = 0 and P' = n prod (z - zeta_i).
template <class Real>
Polynomial<Real> from_critical_points(const CriticalPrescription<Real>& spec) {
    if (spec.critical_points.empty()) throw std::invalid_argument("from_critical_points: need at least one point");
    const int n = spec.degree();
    auto integrand = from_roots(spec.critical_points).without_known_roots();
    auto prim = antiderivative(integrand);
    std::vector<Complex<Real>> c(prim.coefficients().begin(), prim.coefficients().end());
    for (auto& x : c) x *= Real(n);
    auto scaled = Polynomial<Real>::from_raw(std::move(c));
    Complex<Real> at_beta = scaled.evaluate_horner(spec.beta);
    std::vector<Complex<Real>> d(scaled.coefficients().begin(), scaled.coefficients().end());
    d[0] -= at_beta;
    d.back() = Complex<Real>(Real(1));  // n * (1/n), exactly
    return Polynomial<Real>::from_raw(std::move(d));
}

/// 1 - x <= (1 - x/3)^3 on [0, 1]; returns both sides.
template <class Real>
std::pair<Real, Real> cube_inequality(const Real& x) {
    Real t = Real(1) - x / Real(3);
    return {Real(1) - x, t * t * t};
}

template <class Real>
struct QuarticRecord {
    Real beta{0};
    Real d{0};
    Real threshold{0};   ///< (1 + beta) / 2
    Real derivative_at_beta{0};  ///< |P'(beta)|
    Real derivative_bound{0};    ///< (1 + beta)^2
    Real distance_bound{0};       ///< 1 - beta(1 - beta)/3
    Real product_lower{0};       ///< 4 d^3
    bool applicable = false;     ///< d > (1 + beta)/2
    bool derivative_holds = true;
    bool distance_holds = true;
    bool chain_holds = true;     ///< 4 d^3 <= |P'(beta)| <= (1 + beta)^2 when applicable
    bool holds() const { return derivative_holds && distance_holds && chain_holds; }
};

namespace detail {

template <class Real>
SendovInstance<Real> real_quartic_instance(const Polynomial<Real>& p, const Real& beta, const PrecisionContext& ctx) {
    if (p.degree() != 4) throw std::domain_error("expected a quartic, got degree " + std::to_string(p.degree()));
    const Real tol = effective_cluster_tolerance<Real>(ctx, 4);
    if (!p.has_real_coefficients(tol)) throw std::domain_error("expected real coefficients");
    detail::require_unit_interval(beta, "real quartic check");
    Polynomial<Real> monic = p.is_monic() ? p
                                         : Polynomial<Real>::from_coefficients(std::vector<Complex<Real>>(
                                               p.coefficients().begin(), p.coefficients().end()));
    return make_instance(monic, Complex<Real>(beta), ctx);
}

template <class Real>
QuarticRecord<Real> quartic_record(const SendovInstance<Real>& inst, const Real& beta) {
    QuarticRecord<Real> r;
    r.beta = beta;
    r.d = *inst.d_value;
    r.threshold = (Real(1) + beta) / Real(2);
    r.derivative_at_beta = abs(derivative(inst.polynomial).evaluate_horner(Complex<Real>(beta)));
    r.derivative_bound = (Real(1) + beta) * (Real(1) + beta);
    r.distance_bound = bound_quadratic(beta, Real(1) / Real(3));
    r.product_lower = Real(4) * r.d * r.d * r.d;
    r.applicable = r.d > r.threshold;
    return r;
}

}  // namespace detail

/// For a real monic quartic in S(beta) with d > (1 + beta)/2, checks
/// |P'(beta)| <= (1 + beta)^2. Otherwise the record is marked not applicable.
template <class Real>
QuarticRecord<Real> check_derivative_bound(const Polynomial<Real>& p, const Real& beta, const PrecisionContext& ctx) {
    auto inst = detail::real_quartic_instance(p, beta, ctx);
    auto r = detail::quartic_record(inst, beta);
    const Real tol = inst.disk_tolerance;
    if (r.applicable) r.derivative_holds = r.derivative_at_beta <= r.derivative_bound + tol;
    return r;
}

/// d <= 1 - beta(1 - beta)/3, and when d > (1 + beta)/2 also the chain
/// 4 d^3 <= |P'(beta)| <= (1 + beta)^2.
template <class Real>
QuarticRecord<Real> check_real_quartic(const Polynomial<Real>& p, const Real& beta, const PrecisionContext& ctx) {
    auto inst = detail::real_quartic_instance(p, beta, ctx);
    auto r = detail::quartic_record(inst, beta);
    const Real tol = inst.disk_tolerance;
    r.distance_holds = r.d <= r.distance_bound + tol;
    if (r.applicable) {
        r.derivative_holds = r.derivative_at_beta <= r.derivative_bound + tol;
        r.chain_holds = r.product_lower <= r.derivative_at_beta + tol && r.derivative_holds;
    }
    return r;
}

/// The non-real quartic with beta = 0.674 and critical points
/// -0.24 + 0.38i, -0.13 - 0.25i (double).
template <class Real>
CriticalPrescription<Real> nonreal_prescription() {
    auto R = [](const char* s) { return real_from_string<Real>(s); };
    Complex<Real> a(R("-0.24"), R("0.38"));
    Complex<Real> b(R("-0.13"), R("-0.25"));
    return {Complex<Real>(R("0.674")), {a, b, b}};
}

template <class Real>
struct NonrealReport {
    Polynomial<Real> polynomial;
    Real beta{0};
    std::vector<Complex<Real>> roots;
    std::vector<Real> root_moduli;
    Real max_root_modulus{0};
    bool member = false;
    Real d{0};
    Real threshold{0};
    Real derivative_at_beta{0};
    Real derivative_bound{0};
    /// d > (1 + beta)/2 and |P'(beta)| > (1 + beta)^2: the real-quartic derivative bound fails.
    bool exhibits_failure = false;
};

/// Builds the beta = 0.674 quartic, verifies it lies in S(beta), and reports
/// d(P, beta) against (1 + beta)/2 and |P'(beta)| against (1 + beta)^2.
template <class Real>
NonrealReport<Real> nonreal_exhibit(const PrecisionContext& ctx) {
    auto spec = nonreal_prescription<Real>();
    NonrealReport<Real> rep;
    rep.polynomial = from_critical_points(spec);
    rep.beta = spec.beta.re;
    auto inst = check_membership(rep.polynomial, spec.beta, ctx);
    rep.member = inst.membership_verified;
    rep.roots = inst.roots.points;
    for (const auto& z : rep.roots) rep.root_moduli.push_back(abs(z));
    rep.max_root_modulus = inst.max_root_modulus();
    if (rep.member) rep.d = critical_distance(inst, ctx);
    rep.threshold = (Real(1) + rep.beta) / Real(2);
    rep.derivative_at_beta = abs(derivative(rep.polynomial).evaluate_horner(spec.beta));
    rep.derivative_bound = (Real(1) + rep.beta) * (Real(1) + rep.beta);
    rep.exhibits_failure = rep.member && rep.d > rep.threshold && rep.derivative_at_beta > rep.derivative_bound;
    return rep;
}

}  // namespace sendov
