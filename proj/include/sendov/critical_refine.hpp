#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "sendov/quartic.hpp"
#include "sendov/simplex.hpp"

namespace sendov::detail {

/// Local maximization of d(P, beta) with P parametrized by its critical
/// points: P(z) = n integral_beta^z prod (w - zeta_i) dw.
///
/// In these coordinates the objective min |zeta_i - beta| is a minimum of
/// smooth functions and the constraints |z_j| <= 1 are smooth while the roots
/// stay simple, so a sequential linear programming trust-region method
/// converges where root-space perturbation stalls on coalescing critical
/// points.
class CriticalSpaceRefiner {
public:
    CriticalSpaceRefiner(double beta, int degree) : beta_(beta), n_(degree), ctx_(16, 0, 300) {}

    struct Point {
        std::vector<Complex<double>> zeta;
        std::vector<Complex<double>> roots;  ///< roots of P other than beta
        double d = -std::numeric_limits<double>::infinity();
        double max_modulus = std::numeric_limits<double>::infinity();
        bool valid = false;
    };

    Point evaluate(std::vector<Complex<double>> zeta, const std::vector<Complex<double>>* guess = nullptr) const {
        Point pt;
        pt.zeta = std::move(zeta);
        CriticalPrescription<double> spec{Complex<double>(beta_), pt.zeta};
        auto p = from_critical_points(spec);
        std::vector<Complex<double>> g;
        if (guess) {
            g = *guess;
            g.push_back(Complex<double>(beta_));
        }
        auto rs = g.size() == static_cast<std::size_t>(n_) ? find_roots_from(p, ctx_, g) : find_roots(p, ctx_);
        if (!rs.converged) rs = find_roots(p, ctx_);
        if (!rs.converged) return pt;
        std::size_t k = 0;
        for (std::size_t i = 1; i < rs.points.size(); ++i)
            if (abs(rs.points[i] - Complex<double>(beta_)) < abs(rs.points[k] - Complex<double>(beta_))) k = i;
        pt.max_modulus = 0;
        for (std::size_t i = 0; i < rs.points.size(); ++i) {
            if (i == k) continue;
            pt.roots.push_back(rs.points[i]);
            pt.max_modulus = std::max(pt.max_modulus, abs(rs.points[i]));
        }
        pt.d = std::numeric_limits<double>::infinity();
        for (const auto& z : pt.zeta) pt.d = std::min(pt.d, abs(z - Complex<double>(beta_)));
        pt.valid = true;
        return pt;
    }

    /// Rows d|z_j| / d(Re zeta_i, Im zeta_i), one per root in pt.roots.
    std::vector<std::vector<double>> modulus_gradients(const Point& pt) const {
        const std::size_t m = pt.zeta.size();
        std::vector<std::vector<double>> rows(pt.roots.size(), std::vector<double>(2 * m, 0.0));
        const Complex<double> beta(beta_);
        for (std::size_t i = 0; i < m; ++i) {
            // R_i(z) = n integral_beta^z prod_{k != i} (w - zeta_k) dw
            std::vector<Complex<double>> others;
            for (std::size_t k = 0; k < m; ++k)
                if (k != i) others.push_back(pt.zeta[k]);
            Polynomial<double> q = others.empty()
                                       ? Polynomial<double>::from_raw({Complex<double>(1.0)})
                                       : from_roots(others).without_known_roots();
            auto prim = antiderivative(q);
            Complex<double> at_beta = prim.evaluate_horner(beta);
            for (std::size_t j = 0; j < pt.roots.size(); ++j) {
                const auto& z = pt.roots[j];
                Complex<double> r = (prim.evaluate_horner(z) - at_beta) * static_cast<double>(n_);
                Complex<double> dp(static_cast<double>(n_));
                for (const auto& w : pt.zeta) dp *= (z - w);
                Complex<double> dz = r / dp;  // d z_j / d zeta_i
                Complex<double> v = conj(z) / abs(z);
                Complex<double> g = v * dz;
                rows[j][2 * i] = g.re;
                rows[j][2 * i + 1] = -g.im;
            }
        }
        return rows;
    }

    /// Newton projection back onto max |z_j| <= 1 along the least-norm correction.
    std::optional<Point> restore(Point pt) const {
        for (int it = 0; it < 8 && pt.valid; ++it) {
            if (pt.max_modulus <= 1.0) return pt;
            auto grads = modulus_gradients(pt);
            std::vector<std::size_t> viol;
            for (std::size_t j = 0; j < pt.roots.size(); ++j)
                if (abs(pt.roots[j]) > 1.0 - 1e-13) viol.push_back(j);
            const std::size_t k = viol.size();
            const std::size_t dim = 2 * pt.zeta.size();
            Eigen::MatrixXd C(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(dim));
            Eigen::VectorXd r(static_cast<Eigen::Index>(k));
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t t = 0; t < dim; ++t)
                    C(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) = grads[viol[a]][t];
                r(static_cast<Eigen::Index>(a)) = (1.0 - 1e-13) - abs(pt.roots[viol[a]]);
            }
            Eigen::VectorXd step = C.completeOrthogonalDecomposition().solve(r);
            std::vector<Complex<double>> zeta = pt.zeta;
            for (std::size_t i = 0; i < zeta.size(); ++i) {
                zeta[i].re += step(static_cast<Eigen::Index>(2 * i));
                zeta[i].im += step(static_cast<Eigen::Index>(2 * i + 1));
            }
            pt = evaluate(std::move(zeta), &pt.roots);
        }
        if (pt.valid && pt.max_modulus <= 1.0) return pt;
        return std::nullopt;
    }

    /// Runs at most `iterations` trust-region steps from a feasible start.
    Point refine(std::vector<Complex<double>> zeta, int iterations, long& evaluations) const {
        Point cur = evaluate(std::move(zeta));
        ++evaluations;
        if (!cur.valid || cur.max_modulus > 1.0) {
            auto fixed = restore(cur);
            if (!fixed) return cur;
            cur = *fixed;
        }
        const std::size_t m = cur.zeta.size();
        const std::size_t dim = 2 * m;
        const Complex<double> beta(beta_);
        double radius = 1e-2;
        for (int it = 0; it < iterations && radius > 1e-15; ++it) {
            auto root_rows = modulus_gradients(cur);
            // variables: delta+ (dim), delta- (dim), t
            std::vector<double> c(2 * dim + 1, 0.0);
            c.back() = 1.0;
            std::vector<std::vector<double>> A;
            std::vector<double> b;
            for (std::size_t i = 0; i < m; ++i) {
                double f = abs(cur.zeta[i] - beta);
                Complex<double> u = (cur.zeta[i] - beta) / f;
                std::vector<double> row(2 * dim + 1, 0.0);
                row[2 * i] = -u.re;
                row[2 * i + 1] = -u.im;
                row[dim + 2 * i] = u.re;
                row[dim + 2 * i + 1] = u.im;
                row.back() = 1.0;
                A.push_back(std::move(row));
                b.push_back(f);
            }
            for (std::size_t j = 0; j < cur.roots.size(); ++j) {
                std::vector<double> row(2 * dim + 1, 0.0);
                for (std::size_t t = 0; t < dim; ++t) {
                    row[t] = root_rows[j][t];
                    row[dim + t] = -root_rows[j][t];
                }
                A.push_back(std::move(row));
                b.push_back(std::max(0.0, 1.0 - abs(cur.roots[j])));
            }
            for (std::size_t t = 0; t < 2 * dim; ++t) {
                std::vector<double> row(2 * dim + 1, 0.0);
                row[t] = 1.0;
                A.push_back(std::move(row));
                b.push_back(radius);
            }
            auto lp = maximize_lp(c, A, b);
            if (!lp.optimal) {
                radius *= 0.25;
                continue;
            }
            double predicted = lp.value - cur.d;
            if (predicted < 1e-15) {
                radius *= 0.25;
                continue;
            }
            std::vector<Complex<double>> zeta = cur.zeta;
            for (std::size_t i = 0; i < m; ++i) {
                zeta[i].re += lp.x[2 * i] - lp.x[dim + 2 * i];
                zeta[i].im += lp.x[2 * i + 1] - lp.x[dim + 2 * i + 1];
            }
            Point cand = evaluate(std::move(zeta), &cur.roots);
            ++evaluations;
            std::optional<Point> feasible = cand.valid ? restore(std::move(cand)) : std::nullopt;
            if (feasible && feasible->d > cur.d) {
                double ratio = (feasible->d - cur.d) / predicted;
                cur = std::move(*feasible);
                if (ratio > 0.75) radius = std::min(0.1, radius * 2);
                else if (ratio < 0.25) radius *= 0.5;
            } else {
                radius *= 0.25;
            }
        }
        return cur;
    }

private:
    double beta_;
    int n_;
    PrecisionContext ctx_;
};

}  // namespace sendov::detail
