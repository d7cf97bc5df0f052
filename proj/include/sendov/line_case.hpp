#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sendov/metrics.hpp"

namespace sendov {

/// Ordering evidence z_1 <= zeta_1 <= z_2 <= ... <= zeta_{n-1} <= z_n for a
/// real-rooted polynomial.
template <class Real>
struct InterlacingWitness {
    std::vector<Real> sorted_roots;
    std::vector<Real> sorted_critical;
    /// Index in sorted_roots of the root nearest beta (only meaningful when a beta was given).
    std::size_t k = 0;
    bool interlaced = false;
};

namespace detail {

template <class Real>
std::vector<Real> real_parts_or_throw(const std::vector<Complex<Real>>& pts, const Real& tol, const char* what) {
    using std::abs;
    std::vector<Real> out;
    out.reserve(pts.size());
    for (const auto& z : pts) {
        if (abs(z.im) > tol)
            throw std::domain_error(std::string("verify_interlacing: non-real ") + what + " with imaginary part " +
                                    to_decimal(z.im, 6));
        out.push_back(z.re);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Checks Rolle interlacing of the roots of p and of p'. Non-real roots are
/// rejected. Multiple roots are compared at their cluster centroid, so ties
/// count as interlaced.
template <class Real>
InterlacingWitness<Real> verify_interlacing(const Polynomial<Real>& p, const PrecisionContext& ctx,
                                            std::optional<Real> beta = {}) {
    if (p.degree() < 2) throw std::invalid_argument("verify_interlacing: degree must be >= 2");
    const Real tol = effective_cluster_tolerance<Real>(ctx, p.degree());
    auto rs = roots_of(p, ctx);
    if (!rs.converged) throw convergence_error("verify_interlacing: roots did not converge");
    auto cs = critical_points(p, ctx);
    if (!cs.converged) throw convergence_error("verify_interlacing: critical points did not converge");

    InterlacingWitness<Real> w;
    w.sorted_roots = detail::real_parts_or_throw(rs.resolved(), tol, "root");
    w.sorted_critical = detail::real_parts_or_throw(cs.resolved(), tol, "critical point");
    if (beta) {
        using std::abs;
        Real best = abs(w.sorted_roots[0] - *beta);
        for (std::size_t i = 1; i < w.sorted_roots.size(); ++i)
            if (abs(w.sorted_roots[i] - *beta) < best) {
                best = abs(w.sorted_roots[i] - *beta);
                w.k = i;
            }
    }
    bool ok = true;
    for (std::size_t i = 0; i < w.sorted_critical.size(); ++i) {
        ok = ok && w.sorted_roots[i] <= w.sorted_critical[i] + tol;
        ok = ok && w.sorted_critical[i] <= w.sorted_roots[i + 1] + tol;
    }
    w.interlaced = ok;
    return w;
}

/// max(2/n, 1/sqrt(n)); 2/n dominates for n <= 4, 1/sqrt(n) from n = 4 on.
template <class Real>
Real allreal_bound(int n) {
    using std::sqrt;
    if (n < 2) throw std::domain_error("allreal_bound: n must be >= 2");
    Real a = Real(2) / Real(n);
    Real b = Real(1) / sqrt(Real(n));
    return a > b ? a : b;
}

template <class Real>
struct ProductIdentity {
    Real lhs{0};  ///< n prod |beta - zeta_i|
    Real rhs{0};  ///< prod_{i != k} |beta - z_i|
};

/// Both sides of n prod |beta - zeta_i| = |P'(beta)| = prod_{i != k} |beta - z_i|
/// for monic P with P(beta) = 0.
template <class Real>
ProductIdentity<Real> check_product_identity(const Polynomial<Real>& p, const Complex<Real>& beta,
                                             const PrecisionContext& ctx) {
    auto rs = roots_of(p, ctx);
    if (!rs.converged) throw convergence_error("check_product_identity: roots did not converge");
    std::size_t k = 0;
    for (std::size_t i = 1; i < rs.size(); ++i)
        if (abs(rs.points[i] - beta) < abs(rs.points[k] - beta)) k = i;
    if (abs(rs.points[k] - beta) > effective_cluster_tolerance<Real>(ctx, p.degree()))
        throw std::domain_error("check_product_identity: beta is not a root of P");
    auto cs = critical_points(p, ctx);
    if (!cs.converged) throw convergence_error("check_product_identity: critical points did not converge");

    ProductIdentity<Real> out;
    Complex<Real> lc = p.leading();
    out.lhs = Real(p.degree()) * abs(lc);
    for (const auto& z : cs.resolved()) out.lhs *= abs(beta - z);
    out.rhs = abs(lc);
    for (std::size_t i = 0; i < rs.size(); ++i)
        if (i != k) out.rhs *= abs(beta - rs.points[i]);
    return out;
}

template <class Real>
struct CollinearNormalization {
    Polynomial<Real> polynomial;  ///< real roots in [-1, 1]
    Real beta{0};                 ///< image of beta, >= 0
    Real line_angle{0};           ///< direction of the fitted line before rotation
    Complex<Real> center;         ///< the point mapped to 0
};

/// Rigidly moves collinear roots onto [-1, 1]: rotate the total-least-squares
/// line onto the real axis, then translate the midpoint of the extreme roots
/// to 0. A final half-turn makes the image of beta non-negative.
///
/// No scaling is applied, so all pairwise distances and d(P, beta) survive.
template <class Real>
CollinearNormalization<Real> normalize_collinear(const Polynomial<Real>& p, const Complex<Real>& beta,
                                                 const Real& collinearity_tolerance, const PrecisionContext& ctx) {
    using std::atan2;
    auto rs = roots_of(p, ctx);
    if (!rs.converged) throw convergence_error("normalize_collinear: roots did not converge");
    std::vector<Complex<Real>> pts = rs.resolved();

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
    Real theta(0);
    if (sxx + syy > Real(0)) theta = atan2(Real(2) * sxy, sxx - syy) / Real(2);
    Complex<Real> u = conj(polar(Real(1), theta));

    std::vector<Real> t;
    t.reserve(pts.size());
    for (const auto& z : pts) {
        Complex<Real> w = (z - m) * u;
        using std::abs;
        if (abs(w.im) > collinearity_tolerance)
            throw std::domain_error("normalize_collinear: roots are not collinear (offset " + to_decimal(w.im, 6) + ")");
        t.push_back(w.re);
    }
    Complex<Real> wb = (beta - m) * u;
    {
        using std::abs;
        if (abs(wb.im) > collinearity_tolerance)
            throw std::domain_error("normalize_collinear: beta is off the root line");
    }
    auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    Real mid = (*lo + *hi) / Real(2);
    Real b = wb.re - mid;
    Real sign = b < Real(0) ? Real(-1) : Real(1);

    std::vector<Complex<Real>> moved;
    moved.reserve(t.size());
    for (const auto& x : t) moved.emplace_back(sign * (x - mid), Real(0));

    CollinearNormalization<Real> out{from_roots(moved), sign * b, theta, m + polar(mid, theta)};
    return out;
}

}  // namespace sendov
