#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

namespace sendov {

/// Fixed-precision MPFR real with `Digits` decimal digits. Expression
/// templates are off so `auto` and generic code behave like plain values.
template <unsigned Digits>
using mp_real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                              boost::multiprecision::et_off>;

/// Working-precision tiers the runtime dispatcher can select from.
inline constexpr unsigned kPrecisionTiers[] = {32, 48, 64, 96, 128};

/// Numeric settings shared by every high-precision operation.
///
/// `significant_digits` is the accuracy the caller asks for; arithmetic is
/// carried at `significant_digits + guard_digits` (the working precision), so
/// rounding in coefficient expansion does not eat into the requested digits.
struct PrecisionContext {
    int significant_digits = 30;
    int guard_digits = 10;
    int max_iterations = 500;

    PrecisionContext() = default;
    explicit PrecisionContext(int digits, int guard = 10, int iterations = 500)
        : significant_digits(digits), guard_digits(guard), max_iterations(iterations) {
        validate();
    }

    void validate() const {
        if (significant_digits < 16)
            throw std::domain_error("PrecisionContext: significant_digits must be >= 16");
        if (guard_digits < 0) throw std::domain_error("PrecisionContext: guard_digits must be >= 0");
        if (max_iterations < 1) throw std::domain_error("PrecisionContext: max_iterations must be >= 1");
    }

    int working_digits() const { return significant_digits + guard_digits; }

    /// 50 digits for degree >= 40, 30 otherwise.
    static PrecisionContext for_degree(int degree) { return PrecisionContext(degree >= 40 ? 50 : 30); }

    /// 10^-significant_digits as a double (underflows gracefully past ~300 digits).
    double convergence_epsilon() const { return std::pow(10.0, -significant_digits); }

    /// Roots closer than this are reported as one cluster.
    double cluster_tolerance() const { return std::pow(10.0, -significant_digits / 2.0); }

    /// Default inflation of the closed unit disk in membership tests.
    double disk_tolerance() const { return cluster_tolerance(); }
};

template <class Real>
inline constexpr bool is_multiprecision_v = boost::multiprecision::is_number<Real>::value;

/// Machine epsilon of `Real` at its own precision.
template <class Real>
Real machine_epsilon() {
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real pow10(int e) {
    using std::pow;
    return pow(Real(10), Real(e));
}

/// Convergence epsilon at Real precision, never below what the type can resolve
/// for a degree-`degree` evaluation.
template <class Real>
Real effective_epsilon(const PrecisionContext& ctx, int degree) {
    Real requested = pow10<Real>(-ctx.significant_digits);
    Real floor = Real(8 * std::max(degree, 1)) * machine_epsilon<Real>();
    return requested < floor ? floor : requested;
}

template <class Real>
Real effective_cluster_tolerance(const PrecisionContext& ctx, int degree) {
    using std::sqrt;
    using std::pow;
    Real requested = pow(Real(10), Real(-ctx.significant_digits) / 2);
    Real floor = sqrt(effective_epsilon<Real>(ctx, degree));
    return requested < floor ? floor : requested;
}

/// Parses a decimal string exactly at Real precision (no detour through double).
template <class Real>
Real real_from_string(const std::string& s) {
    if constexpr (is_multiprecision_v<Real>) {
        try {
            return Real(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a decimal number: '" + s + "'");
        }
    } else {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a decimal number: '" + s + "'");
        }
        if (pos != s.size()) throw std::invalid_argument("not a decimal number: '" + s + "'");
        return static_cast<Real>(v);
    }
}

/// Scientific decimal string with `digits` significant digits.
template <class Real>
std::string to_decimal(const Real& x, int digits = std::numeric_limits<Real>::digits10) {
    std::ostringstream os;
    os.precision(std::max(digits, 1));
    os << std::scientific << x;
    return os.str();
}

template <class T>
struct type_tag {
    using type = T;
};

/// Calls `f(type_tag<mp_real<D>>{})` with the smallest tier D that holds
/// `working_digits`. All branches must return the same type.
template <class F>
decltype(auto) with_working_precision(int working_digits, F&& f) {
    if (working_digits <= 32) return f(type_tag<mp_real<32>>{});
    if (working_digits <= 48) return f(type_tag<mp_real<48>>{});
    if (working_digits <= 64) return f(type_tag<mp_real<64>>{});
    if (working_digits <= 96) return f(type_tag<mp_real<96>>{});
    if (working_digits <= 128) return f(type_tag<mp_real<128>>{});
    throw std::domain_error("working precision above 128 digits is not supported");
}

template <class F>
decltype(auto) with_precision(const PrecisionContext& ctx, F&& f) {
    return with_working_precision(ctx.working_digits(), std::forward<F>(f));
}

}  // namespace sendov
