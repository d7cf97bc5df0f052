#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sendov/complex.hpp"

namespace sendov {

/// Root configuration drawn in double precision; beta is roots[beta_index].
struct RandomInstance {
    std::vector<Complex<double>> roots;
    std::size_t beta_index = 0;
    double beta() const { return roots[beta_index].re; }
};

/// Uniform by area: radius sqrt(u), angle uniform.
template <class Rng>
Complex<double> random_disk_point(Rng& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = radius * std::sqrt(u(rng));
    double t = 2 * std::numbers::pi * u(rng);
    return {r * std::cos(t), r * std::sin(t)};
}

/// n roots uniform in the disk, rotated so that roots[0] = beta lies on [0, 1].
template <class Rng>
RandomInstance random_general_instance(int n, Rng& rng) {
    RandomInstance out;
    for (int i = 0; i < n; ++i) out.roots.push_back(random_disk_point(rng));
    double r = abs(out.roots[0]);
    Complex<double> u = r > 0 ? conj(out.roots[0]) / r : Complex<double>(1.0);
    for (auto& z : out.roots) z = z * u;
    out.roots[0] = {r, 0.0};
    return out;
}

/// n real roots uniform on [-1, 1]; beta is one of them, reflected into [0, 1].
template <class Rng>
RandomInstance random_real_rooted(int n, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    RandomInstance out;
    for (int i = 0; i < n; ++i) out.roots.emplace_back(u(rng), 0.0);
    out.beta_index = static_cast<std::size_t>(pick(rng));
    if (out.roots[out.beta_index].re < 0)
        for (auto& z : out.roots) z.re = -z.re;
    return out;
}

/// Real quartic in S(beta): beta in [0, 1] plus either three real roots or one
/// real root and a conjugate pair.
template <class Rng>
RandomInstance random_real_quartic(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    RandomInstance out;
    out.roots.emplace_back(unit(rng), 0.0);
    if (unit(rng) < 0.5) {
        for (int i = 0; i < 3; ++i) out.roots.emplace_back(sym(rng), 0.0);
    } else {
        out.roots.emplace_back(sym(rng), 0.0);
        Complex<double> z = random_disk_point(rng);
        out.roots.push_back(z);
        out.roots.push_back(conj(z));
    }
    return out;
}

/// t-range of the chord {beta + t e^{i phi}} inside the closed unit disk.
inline std::pair<double, double> chord_range(double beta, double phi) {
    // |beta + t u|^2 = 1  ->  t^2 + 2 beta cos(phi) t + beta^2 - 1 = 0
    double b = beta * std::cos(phi);
    double disc = std::sqrt(std::max(0.0, b * b - (beta * beta - 1.0)));
    return {-b - disc, -b + disc};
}

/// n roots on a random line through beta in [0, 1], all in the unit disk.
template <class Rng>
RandomInstance random_collinear(int n, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RandomInstance out;
    double beta = unit(rng);
    double phi = std::numbers::pi * unit(rng);
    auto [lo, hi] = chord_range(beta, phi);
    std::uniform_real_distribution<double> t(lo, hi);
    out.roots.emplace_back(beta, 0.0);
    for (int i = 1; i < n; ++i) {
        double s = t(rng);
        out.roots.push_back(Complex<double>(beta) + polar(s, phi));
    }
    return out;
}

/// n points uniform in the disk with pairwise distance >= min_sep (rejection sampling).
template <class Rng>
std::vector<Complex<double>> random_separated_points(int n, double min_sep, Rng& rng) {
    std::vector<Complex<double>> pts;
    while (static_cast<int>(pts.size()) < n) {
        Complex<double> z = random_disk_point(rng);
        bool ok = true;
        for (const auto& w : pts) ok = ok && abs(z - w) >= min_sep;
        if (ok) pts.push_back(z);
    }
    return pts;
}

/// Widens double roots to Real exactly.
template <class Real>
std::vector<Complex<Real>> lift(const std::vector<Complex<double>>& pts) {
    std::vector<Complex<Real>> out;
    out.reserve(pts.size());
    for (const auto& z : pts) out.emplace_back(Real(z.re), Real(z.im));
    return out;
}

}  // namespace sendov
