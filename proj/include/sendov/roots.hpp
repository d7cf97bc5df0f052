#pragma once

#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "sendov/polynomial.hpp"

namespace sendov {

enum class InitStrategy {
    automatic,  ///< companion eigenvalues for degree <= 64, circle otherwise
    companion,
    circle,
};

/// A group of approximations closer than the cluster tolerance, read as one
/// root of multiplicity `members.size()`.
template <class Real>
struct RootCluster {
    Complex<Real> centroid;
    std::vector<std::size_t> members;
    int multiplicity() const { return static_cast<int>(members.size()); }
};

/// Roots of a polynomial with convergence metadata. For a derivative P' this
/// is the critical set of P.
template <class Real>
struct RootSet {
    std::vector<Complex<Real>> points;
    /// |p(z)| / (sum |a_k| |z|^k + machine_eps max |a_k|) at each point.
    std::vector<Real> residuals;
    /// Size of the last Aberth correction, relative to max(1, |z|).
    std::vector<Real> corrections;
    std::vector<RootCluster<Real>> clusters;
    bool converged = false;
    int iterations = 0;

    std::size_t size() const { return points.size(); }

    /// Points with each cluster collapsed to its centroid (repeated by multiplicity).
    std::vector<Complex<Real>> resolved() const {
        std::vector<Complex<Real>> out(points.size());
        for (const auto& c : clusters)
            for (std::size_t m : c.members) out[m] = c.centroid;
        return out;
    }

    Real max_residual() const {
        Real w(0);
        for (const auto& r : residuals) w = std::max(w, r);
        return w;
    }
};

template <class Real>
using CriticalSet = RootSet<Real>;

namespace detail {

template <class Real>
struct HornerPair {
    Complex<Real> value;
    Complex<Real> slope;
    Real scale;  // sum |a_k| |z|^k
};

template <class Real>
HornerPair<Real> horner_with_derivative(std::span<const Complex<Real>> a, const Complex<Real>& z) {
    const int n = static_cast<int>(a.size()) - 1;
    Complex<Real> p = a[static_cast<std::size_t>(n)];
    Complex<Real> dp;
    Real az = abs(z);
    Real scale = abs(p);
    for (int k = n - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + a[static_cast<std::size_t>(k)];
        scale = scale * az + abs(a[static_cast<std::size_t>(k)]);
    }
    return {p, dp, scale};
}

/// Eigenvalues of the companion matrix, in double precision.
template <class Real>
std::vector<std::complex<double>> companion_eigenvalues(const Polynomial<Real>& p) {
    const int n = p.degree();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    const auto lc = complex_cast<double>(p.leading());
    const std::complex<double> lcd(lc.re, lc.im);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) {
        auto c = complex_cast<double>(p.coefficient(i));
        m(i, n - 1) = -std::complex<double>(c.re, c.im) / lcd;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(n));
    if (es.info() != Eigen::Success) return out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

/// n points on a circle whose radius is the geometric mean root modulus.
template <class Real>
std::vector<Complex<Real>> circle_guesses(const Polynomial<Real>& p) {
    using std::pow;
    const int n = p.degree();
    Real a0 = abs(p.coefficient(0));
    Real an = abs(p.leading());
    Real radius = a0 == 0 ? Real(0.5) : Real(pow(a0 / an, Real(1) / Real(n)));
    if (radius == 0) radius = Real(0.5);
    std::vector<Complex<Real>> g;
    g.reserve(static_cast<std::size_t>(n));
    const double two_pi = 2 * std::numbers::pi;
    for (int k = 0; k < n; ++k) {
        double theta = two_pi * k / n + 0.4;
        g.push_back(polar(radius, Real(theta)));
    }
    return g;
}

/// Aberth needs pairwise distinct starting points, and real guesses for a
/// real polynomial never leave the real axis. Every guess gets a tiny
/// deterministic complex offset; coincident guesses are pushed apart.
template <class Real>
void prepare_guesses(std::vector<Complex<Real>>& g) {
    Real scale(0);
    for (const auto& z : g) scale = std::max(scale, Real(abs(z)));
    if (scale == 0) scale = Real(1);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] += polar(scale * Real(1e-11), Real(0.9 + 2.3 * static_cast<double>(i)));
    const Real min_gap = scale * Real(1e-9);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs(g[i] - g[j]) < min_gap) {
                g[i] += polar(scale * Real(1e-6) * Real(static_cast<double>(i + 1)), Real(0.7 + 2.1 * i));
                j = static_cast<std::size_t>(-1);  // rescan against all earlier points
            }
}

template <class Real>
std::vector<RootCluster<Real>> build_clusters(const std::vector<Complex<Real>>& pts, const Real& tol) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (abs(pts[i] - pts[j]) < tol) parent[find(i)] = find(j);
    std::vector<RootCluster<Real>> clusters;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(clusters.size());
            clusters.push_back({});
        }
        clusters[static_cast<std::size_t>(slot[r])].members.push_back(i);
    }
    for (auto& c : clusters) {
        Complex<Real> sum;
        for (std::size_t m : c.members) sum += pts[m];
        c.centroid = sum / Real(static_cast<double>(c.members.size()));
    }
    return clusters;
}

}  // namespace detail

namespace detail {

template <class Real>
RootSet<Real> aberth(const Polynomial<Real>& p, const PrecisionContext& ctx, std::vector<Complex<Real>> z);

template <class Real>
RootSet<Real> linear_root(const Polynomial<Real>& p, const PrecisionContext& ctx) {
    const auto a = p.coefficients();
    RootSet<Real> out;
    Complex<Real> z = -a[0] / a[1];
    auto h = horner_with_derivative<Real>(a, z);
    out.points = {z};
    out.residuals = {h.scale == 0 ? Real(0) : Real(abs(h.value) / h.scale)};
    out.corrections = {Real(0)};
    out.converged = true;
    out.clusters = build_clusters(out.points, effective_cluster_tolerance<Real>(ctx, 1));
    return out;
}

}  // namespace detail

/// All roots of `p` by simultaneous Aberth–Ehrlich iteration.
///
/// A root is accepted when its scaled residual |p(z)| / sum|a_k||z|^k is below
/// the convergence epsilon and its last correction is below epsilon too; for
/// points inside a cluster (a numerically multiple root) the correction only
/// has to fall below the cluster tolerance. A root whose residual is below
/// epsilon and whose correction stays below the cluster tolerance without
/// shrinking for three sweeps has reached its attainable accuracy and is also
/// accepted. Non-convergence is reported via
/// `converged == false` together with the best iterates.
template <class Real>
RootSet<Real> find_roots(const Polynomial<Real>& p, const PrecisionContext& ctx,
                         InitStrategy init = InitStrategy::automatic) {
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("find_roots: degree must be >= 1");
    if (n == 1) return detail::linear_root(p, ctx);

    std::vector<Complex<Real>> z;
    bool use_companion = init == InitStrategy::companion || (init == InitStrategy::automatic && n <= 64);
    if (use_companion) {
        for (const auto& e : detail::companion_eigenvalues(p)) z.emplace_back(Real(e.real()), Real(e.imag()));
        bool finite = z.size() == static_cast<std::size_t>(n);
        for (const auto& w : z) finite = finite && std::isfinite(static_cast<double>(w.re)) &&
                                         std::isfinite(static_cast<double>(w.im));
        if (!finite) z.clear();
    }
    if (z.empty()) z = detail::circle_guesses(p);
    return detail::aberth(p, ctx, std::move(z));
}

/// find_roots starting from caller-supplied guesses (one per root).
template <class Real>
RootSet<Real> find_roots_from(const Polynomial<Real>& p, const PrecisionContext& ctx,
                              std::vector<Complex<Real>> guesses) {
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("find_roots: degree must be >= 1");
    if (n == 1) return detail::linear_root(p, ctx);
    if (static_cast<int>(guesses.size()) != n) return find_roots(p, ctx);
    return detail::aberth(p, ctx, std::move(guesses));
}

namespace detail {

/// One Newton evaluation f/f' at a point, with a scaled residual of f.
template <class Real>
struct NewtonRatio {
    Complex<Real> ratio;
    Real residual{0};
    bool exact_zero = false;  ///< f(z) == 0
    bool stationary = false;  ///< f'(z) == 0
};

/// Aberth–Ehrlich iteration for the n zeros of whatever `eval` describes.
template <class Real, class Eval>
RootSet<Real> aberth_iterate(Eval&& eval, int n, const PrecisionContext& ctx, std::vector<Complex<Real>> z) {
    const Real eps = effective_epsilon<Real>(ctx, n);
    const Real cluster_tol = effective_cluster_tolerance<Real>(ctx, n);
    RootSet<Real> out;
    prepare_guesses(z);

    std::vector<Real> residual(static_cast<std::size_t>(n), Real(1));
    std::vector<Real> correction(static_cast<std::size_t>(n), Real(1));
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    std::vector<int> stalled(static_cast<std::size_t>(n), 0);

    auto in_cluster = [&](std::size_t i) {
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != i && abs(z[i] - z[j]) < cluster_tol) return true;
        return false;
    };

    int iter = 0;
    bool all_done = false;
    for (; iter < ctx.max_iterations && !all_done; ++iter) {
        all_done = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (done[i]) continue;
            NewtonRatio<Real> h = eval(z[i]);
            residual[i] = h.residual;
            if (residual[i] < eps) {
                // An ill-conditioned root stops improving at a correction above eps;
                // three sweeps without halving below cluster_tol mean it is as good as it gets.
                if (correction[i] < eps || (in_cluster(i) && correction[i] < cluster_tol) || stalled[i] >= 3) {
                    done[i] = true;
                    continue;
                }
            }
            all_done = false;
            if (h.exact_zero) {
                correction[i] = Real(0);
                continue;
            }
            Complex<Real> sum;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) sum += Complex<Real>(Real(1)) / (z[i] - z[j]);
            Complex<Real> step;
            if (h.stationary) {
                // Stationary point: fall back to the pure repulsion term.
                step = -(Complex<Real>(Real(1)) / sum);
            } else {
                step = h.ratio / (Complex<Real>(Real(1)) - h.ratio * sum);
            }
            z[i] -= step;
            Real mag = abs(z[i]);
            Real prev = correction[i];
            correction[i] = abs(step) / (mag > Real(1) ? mag : Real(1));
            bool flat = residual[i] < eps && correction[i] < cluster_tol && correction[i] > prev / Real(2);
            stalled[i] = flat ? stalled[i] + 1 : 0;
        }
    }
    // Final residual pass so the metadata describes the returned points.
    bool converged = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
        residual[i] = eval(z[i]).residual;
        converged = converged && done[i] && residual[i] < eps;
    }
    out.points = std::move(z);
    out.residuals = std::move(residual);
    out.corrections = std::move(correction);
    out.converged = converged;
    out.iterations = iter;
    out.clusters = build_clusters(out.points, cluster_tol);
    return out;
}

template <class Real>
RootSet<Real> aberth(const Polynomial<Real>& p, const PrecisionContext& ctx, std::vector<Complex<Real>> z) {
    const auto a = p.coefficients();
    // Floor for the backward-error scale: near a root at 0 with vanishing low
    // coefficients (z^3) every term is tiny and the plain ratio stays at 1.
    Real amax(0);
    for (const auto& c : a) amax = std::max(amax, Real(abs(c)));
    const Real floor = machine_epsilon<Real>() * amax;
    auto eval = [a, floor](const Complex<Real>& x) {
        auto h = horner_with_derivative<Real>(a, x);
        NewtonRatio<Real> r;
        Real scale = h.scale + floor;
        r.residual = scale == 0 ? Real(0) : Real(abs(h.value) / scale);
        r.exact_zero = h.value == Complex<Real>();
        r.stationary = h.slope == Complex<Real>();
        if (!r.exact_zero && !r.stationary) r.ratio = h.value / h.slope;
        return r;
    };
    return aberth_iterate<Real>(eval, p.degree(), ctx, std::move(z));
}

}  // namespace detail

/// Critical points of p: the roots of p'.
template <class Real>
CriticalSet<Real> critical_points(const Polynomial<Real>& p, const PrecisionContext& ctx,
                                  InitStrategy init = InitStrategy::automatic) {
    if (p.degree() < 2) throw std::invalid_argument("critical_points: degree must be >= 2");
    return find_roots(derivative(p), ctx, init);
}

/// Critical points of prod (z - r_j) straight from the roots, never expanding
/// coefficients. With g = sum 1/(z - r_j) and h = sum 1/(z - r_j)^2 the Newton
/// ratio p'/p'' is g / (g^2 - h); the residual is |g| / sum 1/|z - r_j|.
/// Much better conditioned than the coefficient route for roots near the unit
/// circle. Multiple roots of p are critical points this form cannot reach, so
/// callers should fall back to critical_points when it does not converge.
template <class Real>
CriticalSet<Real> critical_points_from_roots(std::span<const Complex<Real>> roots, const PrecisionContext& ctx,
                                             std::vector<Complex<Real>> guesses = {}) {
    const int n = static_cast<int>(roots.size());
    if (n < 2) throw std::invalid_argument("critical_points_from_roots: need at least two roots");
    if (static_cast<int>(guesses.size()) != n - 1) {
        guesses.clear();
        auto dp = derivative(from_roots(std::vector<Complex<Real>>(roots.begin(), roots.end())).without_known_roots());
        for (const auto& e : detail::companion_eigenvalues(dp)) guesses.emplace_back(Real(e.real()), Real(e.imag()));
    }
    auto eval = [roots](const Complex<Real>& x) {
        detail::NewtonRatio<Real> r;
        Complex<Real> g, h;
        Real s(0);
        for (const auto& w : roots) {
            Complex<Real> d = x - w;
            if (d == Complex<Real>()) {
                // Sitting on a root of p: push off it rather than divide by zero.
                r.residual = Real(1);
                using std::sqrt;
                r.ratio = Complex<Real>(Real(0), Real(sqrt(machine_epsilon<Real>())));
                return r;
            }
            Complex<Real> inv = Complex<Real>(Real(1)) / d;
            g += inv;
            h += inv * inv;
            s += abs(inv);
        }
        r.residual = abs(g) / s;
        r.exact_zero = g == Complex<Real>();
        Complex<Real> den = g * g - h;
        r.stationary = den == Complex<Real>();
        if (!r.exact_zero && !r.stationary) r.ratio = g / den;
        return r;
    };
    return detail::aberth_iterate<Real>(eval, n - 1, ctx, std::move(guesses));
}

template <class Real>
CriticalSet<Real> critical_points_from_roots(const std::vector<Complex<Real>>& roots, const PrecisionContext& ctx,
                                             std::vector<Complex<Real>> guesses = {}) {
    return critical_points_from_roots(std::span<const Complex<Real>>(roots), ctx, std::move(guesses));
}

/// Roots of p: the recorded roots when p was built from them, else find_roots.
/// The returned set is always marked converged in the former case.
template <class Real>
RootSet<Real> roots_of(const Polynomial<Real>& p, const PrecisionContext& ctx) {
    if (!p.has_known_roots()) return find_roots(p, ctx);
    RootSet<Real> out;
    out.points = *p.known_roots();
    out.residuals.assign(out.points.size(), Real(0));
    out.corrections.assign(out.points.size(), Real(0));
    out.converged = true;
    out.clusters = detail::build_clusters(out.points, effective_cluster_tolerance<Real>(ctx, p.degree()));
    return out;
}

/// Hausdorff distance between two finite point sets.
template <class Real>
Real hausdorff_distance(std::span<const Complex<Real>> a, std::span<const Complex<Real>> b) {
    auto directed = [](std::span<const Complex<Real>> x, std::span<const Complex<Real>> y) {
        Real worst(0);
        for (const auto& p : x) {
            Real best = abs(p - y.front());
            for (const auto& q : y) best = std::min(best, Real(abs(p - q)));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace sendov
