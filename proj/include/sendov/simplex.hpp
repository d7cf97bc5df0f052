#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace sendov::detail {

struct LpResult {
    bool optimal = false;
    bool unbounded = false;
    std::vector<double> x;
    double value = 0.0;
};

/// Dense tableau simplex for: maximize c.x subject to A x <= b, x >= 0, with
/// b >= 0 so the slack basis is feasible. Dantzig pricing, switching to
/// Bland's rule if the pivot count suggests cycling.
inline LpResult maximize_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                            const std::vector<double>& b, double tol = 1e-12) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    const std::size_t width = n + m + 1;
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(width, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
        t[i][n + i] = 1.0;
        t[i][width - 1] = b[i] < 0 ? 0.0 : b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

    LpResult res;
    const std::size_t bland_after = 50 * (m + n);
    for (std::size_t iter = 0;; ++iter) {
        std::size_t enter = width;
        if (iter < bland_after) {
            double most = -tol;
            for (std::size_t j = 0; j + 1 < width; ++j)
                if (t[m][j] < most) {
                    most = t[m][j];
                    enter = j;
                }
        } else {
            for (std::size_t j = 0; j + 1 < width; ++j)
                if (t[m][j] < -tol) {
                    enter = j;
                    break;
                }
        }
        if (enter == width) break;
        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > tol) {
                double r = t[i][width - 1] / t[i][enter];
                if (r < best - 1e-15 || (r <= best + 1e-15 && leave < m && basis[i] < basis[leave])) {
                    best = r;
                    leave = i;
                }
            }
        }
        if (leave == m) {
            res.unbounded = true;
            return res;
        }
        const double piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
        if (iter > 200 * (m + n)) return res;  // give up; optimal stays false
    }
    res.optimal = true;
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t[i][width - 1];
    res.value = t[m][width - 1];
    return res;
}

}  // namespace sendov::detail
