#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sendov/complex.hpp"
#include "sendov/precision.hpp"

namespace sendov {

/// Complex polynomial with coefficients stored constant term first.
///
/// Public constructors produce monic polynomials. `derivative` and the
/// arithmetic operators may produce non-monic ones (P' has leading coefficient
/// n). When the polynomial was built from its roots, the roots are kept and
/// used for evaluation.
template <class Real>
class Polynomial {
public:
    using complex_type = Complex<Real>;

    Polynomial() = default;

    /// Takes coefficients as given (constant term first). No normalization.
    static Polynomial from_raw(std::vector<complex_type> coeffs) {
        if (coeffs.size() < 1) throw std::invalid_argument("polynomial needs at least one coefficient");
        Polynomial p;
        p.coeffs_ = std::move(coeffs);
        p.trim();
        return p;
    }

    /// Divides by the leading coefficient.
    static Polynomial from_coefficients(std::vector<complex_type> coeffs) {
        Polynomial p = from_raw(std::move(coeffs));
        if (p.degree() < 1) throw std::invalid_argument("polynomial must have degree >= 1");
        complex_type lc = p.coeffs_.back();
        for (auto& c : p.coeffs_) c /= lc;
        p.coeffs_.back() = complex_type(Real(1));
        return p;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const complex_type> coefficients() const { return coeffs_; }
    const complex_type& coefficient(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    const complex_type& leading() const { return coeffs_.back(); }
    bool is_monic() const { return coeffs_.back() == complex_type(Real(1)); }

    const std::optional<std::vector<complex_type>>& known_roots() const { return known_roots_; }
    bool has_known_roots() const { return known_roots_.has_value(); }

    Polynomial without_known_roots() const {
        Polynomial p = *this;
        p.known_roots_.reset();
        return p;
    }

    /// True when every coefficient's imaginary part is below `tol * (1 + |c|)`.
    bool has_real_coefficients(const Real& tol) const {
        using std::abs;
        for (const auto& c : coeffs_)
            if (abs(c.im) > tol * (Real(1) + abs(c))) return false;
        return true;
    }

    /// Horner evaluation on the coefficient form.
    complex_type evaluate_horner(const complex_type& z) const {
        complex_type acc = coeffs_.back();
        for (int k = degree() - 1; k >= 0; --k) acc = acc * z + coeffs_[static_cast<std::size_t>(k)];
        return acc;
    }

    /// lc * prod (z - z_i); requires known roots.
    complex_type evaluate_product(const complex_type& z) const {
        if (!known_roots_) throw std::logic_error("evaluate_product: polynomial has no known roots");
        complex_type acc = coeffs_.back();
        for (const auto& r : *known_roots_) acc *= (z - r);
        return acc;
    }

    /// Product form when roots are known (better conditioned), Horner otherwise.
    complex_type evaluate(const complex_type& z) const {
        return known_roots_ ? evaluate_product(z) : evaluate_horner(z);
    }

    complex_type operator()(const complex_type& z) const { return evaluate(z); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<complex_type> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return from_raw(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<complex_type> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        Polynomial p = from_raw(std::move(c));
        if (a.known_roots_ && b.known_roots_ && a.is_monic() && b.is_monic()) {
            std::vector<complex_type> roots = *a.known_roots_;
            roots.insert(roots.end(), b.known_roots_->begin(), b.known_roots_->end());
            p.known_roots_ = std::move(roots);
        }
        return p;
    }

    friend Polynomial operator*(const complex_type& s, const Polynomial& a) {
        std::vector<complex_type> c = a.coeffs_;
        for (auto& x : c) x *= s;
        return from_raw(std::move(c));
    }

    template <class To>
    Polynomial<To> convert() const {
        std::vector<Complex<To>> c;
        c.reserve(coeffs_.size());
        for (const auto& x : coeffs_) c.push_back(complex_cast<To>(x));
        auto p = Polynomial<To>::from_raw(std::move(c));
        if (known_roots_) {
            std::vector<Complex<To>> r;
            r.reserve(known_roots_->size());
            for (const auto& x : *known_roots_) r.push_back(complex_cast<To>(x));
            p = Polynomial<To>::with_roots(std::move(p), std::move(r));
        }
        return p;
    }

    static Polynomial with_roots(Polynomial p, std::vector<complex_type> roots) {
        if (static_cast<int>(roots.size()) != p.degree())
            throw std::invalid_argument("known root count must equal the degree");
        p.known_roots_ = std::move(roots);
        return p;
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == complex_type()) coeffs_.pop_back();
    }

    std::vector<complex_type> coeffs_{complex_type()};
    std::optional<std::vector<complex_type>> known_roots_;
};

/// Monic polynomial prod (z - r_i), expanded at Real precision. Roots are recorded.
template <class Real>
Polynomial<Real> from_roots(std::span<const Complex<Real>> roots) {
    if (roots.empty()) throw std::invalid_argument("from_roots: empty root list");
    using C = Complex<Real>;
    std::vector<C> c{C(Real(1))};
    c.reserve(roots.size() + 1);
    for (const C& r : roots) {
        c.push_back(C());
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    auto p = Polynomial<Real>::from_raw(std::move(c));
    return Polynomial<Real>::with_roots(std::move(p), std::vector<C>(roots.begin(), roots.end()));
}

template <class Real>
Polynomial<Real> from_roots(const std::vector<Complex<Real>>& roots) {
    return from_roots(std::span<const Complex<Real>>(roots));
}

/// Roots of z^2 + c z + 1 for real |c| <= 2: the conjugate pair (-c +- i sqrt(4 - c^2)) / 2.
template <class Real>
std::pair<Complex<Real>, Complex<Real>> unit_quadratic_roots(const Real& c) {
    using std::abs;
    using std::sqrt;
    if (abs(c) > Real(2)) throw std::domain_error("quadratic factor z^2 + cz + 1 needs |c| <= 2");
    Real re = -c / 2;
    Real im = sqrt(Real(4) - c * c) / 2;
    return {Complex<Real>(re, im), Complex<Real>(re, -im)};
}

/// prod (z - r) over `linear_roots` times prod (z^2 + c z + 1) over `quad_coeffs`.
///
/// Each |c| <= 2 keeps that factor's roots on the unit circle; larger values
/// are rejected. Known roots come from the closed-form quadratic formula.
template <class Real>
Polynomial<Real> from_quadratic_factors(std::span<const Complex<Real>> linear_roots,
                                        std::span<const Real> quad_coeffs) {
    if (linear_roots.empty() && quad_coeffs.empty())
        throw std::invalid_argument("from_quadratic_factors: no factors");
    std::vector<Complex<Real>> roots(linear_roots.begin(), linear_roots.end());
    for (const Real& c : quad_coeffs) {
        auto [a, b] = unit_quadratic_roots(c);
        roots.push_back(a);
        roots.push_back(b);
    }
    // Expand factor-wise so each quadratic contributes exact real coefficients.
    using C = Complex<Real>;
    std::vector<C> acc{C(Real(1))};
    auto multiply = [&acc](const std::vector<C>& f) {
        std::vector<C> out(acc.size() + f.size() - 1);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) out[i + j] += acc[i] * f[j];
        acc = std::move(out);
    };
    for (const C& r : linear_roots) multiply({-r, C(Real(1))});
    for (const Real& c : quad_coeffs) multiply({C(Real(1)), C(c), C(Real(1))});
    auto p = Polynomial<Real>::from_raw(std::move(acc));
    return Polynomial<Real>::with_roots(std::move(p), std::move(roots));
}

template <class Real>
Polynomial<Real> from_quadratic_factors(const std::vector<Complex<Real>>& linear_roots,
                                        const std::vector<Real>& quad_coeffs) {
    return from_quadratic_factors(std::span<const Complex<Real>>(linear_roots),
                                  std::span<const Real>(quad_coeffs));
}

/// Coefficient-wise derivative; the result keeps leading coefficient n * lc.
template <class Real>
Polynomial<Real> derivative(const Polynomial<Real>& p) {
    if (p.degree() < 1) throw std::invalid_argument("derivative: degree must be >= 1");
    std::vector<Complex<Real>> c;
    c.reserve(static_cast<std::size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k) c.push_back(p.coefficient(k) * Real(k));
    return Polynomial<Real>::from_raw(std::move(c));
}

/// Term-by-term antiderivative with zero constant term.
template <class Real>
Polynomial<Real> antiderivative(const Polynomial<Real>& p) {
    std::vector<Complex<Real>> c{Complex<Real>()};
    for (int k = 0; k <= p.degree(); ++k) c.push_back(p.coefficient(k) / Real(k + 1));
    return Polynomial<Real>::from_raw(std::move(c));
}

/// Largest coefficient-wise distance |a_k - b_k| (missing coefficients are 0).
template <class Real>
Real coefficient_distance(const Polynomial<Real>& a, const Polynomial<Real>& b) {
    Real worst(0);
    int n = std::max(a.degree(), b.degree());
    for (int k = 0; k <= n; ++k) {
        Complex<Real> x = k <= a.degree() ? a.coefficient(k) : Complex<Real>();
        Complex<Real> y = k <= b.degree() ? b.coefficient(k) : Complex<Real>();
        Real d = abs(x - y);
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace sendov
