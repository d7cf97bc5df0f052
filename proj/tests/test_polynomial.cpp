#include <gtest/gtest.h>

#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "sendov/sendov.hpp"

using namespace sendov;
using R = mp_real<48>;
using C = Complex<R>;

namespace {

const PrecisionContext ctx30(30);

R rs(const char* s) { return real_from_string<R>(s); }

double distance_to_set(const C& z, const std::vector<C>& pts) {
    double best = 1e300;
    for (const auto& w : pts) best = std::min(best, static_cast<double>(abs(z - w)));
    return best;
}

}  // namespace

TEST(PrecisionContext, RejectsTooFewDigits) {
    EXPECT_THROW(PrecisionContext(15), std::domain_error);
    EXPECT_NO_THROW(PrecisionContext(16));
    EXPECT_EQ(PrecisionContext(30).working_digits(), 40);
    EXPECT_EQ(PrecisionContext::for_degree(52).significant_digits, 50);
    EXPECT_EQ(PrecisionContext::for_degree(10).significant_digits, 30);
}

TEST(PrecisionContext, DispatchPicksSmallestTier) {
    auto digits = [](int sig) {
        return with_precision(PrecisionContext(sig), [](auto tag) {
            using T = typename decltype(tag)::type;
            return std::numeric_limits<T>::digits10;
        });
    };
    EXPECT_GE(digits(20), 30);
    EXPECT_GE(digits(50), 60);
    EXPECT_THROW(digits(200), std::domain_error);
}

TEST(PrecisionContext, DecimalParsingIsExact) {
    R x = rs("0.1");
    R three = x * R(3) - rs("0.3");
    EXPECT_LT(abs(three), R(1e-45));
    EXPECT_THROW(real_from_string<R>("abc"), std::invalid_argument);
    EXPECT_THROW(real_from_string<double>("1.5x"), std::invalid_argument);
}

TEST(FromRoots, CubicFromSymmetricRoots) {
    auto p = from_roots(std::vector<C>{C(R(-1)), C(R(0)), C(R(1))});
    ASSERT_EQ(p.degree(), 3);
    EXPECT_EQ(p.coefficient(0), C(R(0)));
    EXPECT_EQ(p.coefficient(1), C(R(-1)));
    EXPECT_EQ(p.coefficient(2), C(R(0)));
    EXPECT_EQ(p.coefficient(3), C(R(1)));
}

TEST(FromRoots, DoubleRoot) {
    R b = rs("0.37");
    auto p = from_roots(std::vector<C>{C(b), C(b)});
    EXPECT_EQ(p.coefficient(0), C(b * b));
    EXPECT_EQ(p.coefficient(1), C(R(-2) * b));
    EXPECT_EQ(p.coefficient(2), C(R(1)));
}

TEST(FromRoots, RoundTripRecoversRoots) {
    std::mt19937_64 rng(7);
    const double tol = std::pow(10.0, -ctx30.significant_digits + 4);
    for (int n : {2, 5, 10, 20}) {
        auto pts = lift<R>(random_separated_points(n, 1e-3, rng));
        auto p = from_roots(pts).without_known_roots();
        auto found = find_roots(p, ctx30);
        ASSERT_TRUE(found.converged) << "degree " << n;
        for (const auto& z : pts) EXPECT_LT(distance_to_set(z, found.points), tol) << "degree " << n;
        std::span<const C> a(pts), b(found.points);
        EXPECT_LT(static_cast<double>(hausdorff_distance(a, b)), tol);
    }
}

TEST(FromQuadraticFactors, UnitCircleFactor) {
    auto p = from_quadratic_factors(std::vector<C>{}, std::vector<R>{R(0)});
    ASSERT_EQ(p.degree(), 2);
    EXPECT_EQ(p.coefficient(0), C(R(1)));
    EXPECT_EQ(p.coefficient(1), C(R(0)));
    EXPECT_EQ(p.coefficient(2), C(R(1)));
}

TEST(FromQuadraticFactors, TripleRootAtOne) {
    auto p = from_quadratic_factors(std::vector<C>{C(R(1))}, std::vector<R>{R(-2)});
    ASSERT_EQ(p.degree(), 3);
    EXPECT_EQ(p.coefficient(0), C(R(-1)));
    EXPECT_EQ(p.coefficient(1), C(R(3)));
    EXPECT_EQ(p.coefficient(2), C(R(-3)));
    EXPECT_EQ(p.coefficient(3), C(R(1)));
}

TEST(FromQuadraticFactors, RejectsFactorsOffTheCircle) {
    EXPECT_THROW(from_quadratic_factors(std::vector<C>{}, std::vector<R>{rs("2.5")}), std::domain_error);
}

TEST(FromQuadraticFactors, FactorRootsHaveUnitModulus) {
    for (const char* c : {"-1.9", "-0.3", "0", "1.2", "1.99"}) {
        auto p = from_quadratic_factors(std::vector<C>{}, std::vector<R>{rs(c)});
        auto found = find_roots(p, ctx30);
        ASSERT_TRUE(found.converged);
        for (const auto& z : found.points) EXPECT_NEAR(static_cast<double>(abs(z)), 1.0, 1e-25) << c;
    }
}

TEST(Derivative, OfCubic) {
    auto p = from_roots(std::vector<C>{C(R(-1)), C(R(0)), C(R(1))});
    auto d = derivative(p);
    ASSERT_EQ(d.degree(), 2);
    EXPECT_EQ(d.coefficient(0), C(R(-1)));
    EXPECT_EQ(d.coefficient(1), C(R(0)));
    EXPECT_EQ(d.coefficient(2), C(R(3)));
}

TEST(Derivative, IsLinear) {
    std::mt19937_64 rng(3);
    auto p = from_roots(lift<R>(random_separated_points(6, 1e-2, rng))).without_known_roots();
    auto q = from_roots(lift<R>(random_separated_points(6, 1e-2, rng))).without_known_roots();
    C a(rs("0.7"), rs("-1.3"));
    auto lhs = derivative(p + a * q);
    auto rhs = derivative(p) + a * derivative(q);
    EXPECT_LT(static_cast<double>(coefficient_distance(lhs, rhs)), 1e-35);
}

TEST(Derivative, AntiderivativeInverts) {
    std::mt19937_64 rng(4);
    auto p = from_roots(lift<R>(random_separated_points(7, 1e-2, rng))).without_known_roots();
    EXPECT_LT(static_cast<double>(coefficient_distance(derivative(antiderivative(p)), p)), 1e-35);
}

TEST(Evaluate, CubicAtTwo) {
    auto p = from_roots(std::vector<C>{C(R(-1)), C(R(0)), C(R(1))});
    EXPECT_EQ(p.evaluate_horner(C(R(2))), C(R(6)));
    EXPECT_EQ(p.evaluate_product(C(R(2))), C(R(6)));
}

TEST(Evaluate, ProductFormVanishesAtRoot) {
    R b = rs("0.09");
    auto p = from_roots(std::vector<C>{C(b), C(rs("-0.4"), rs("0.8")), C(rs("0.5"), rs("-0.5"))});
    EXPECT_EQ(p.evaluate(C(b)), C(R(0)));
}

TEST(Evaluate, HornerMatchesProduct) {
    std::mt19937_64 rng(5);
    auto p = from_roots(lift<R>(random_separated_points(12, 1e-2, rng)));
    for (int i = 0; i < 20; ++i) {
        auto z = complex_cast<R>(random_disk_point(rng, 1.5));
        EXPECT_LT(static_cast<double>(abs(p.evaluate_horner(z) - p.evaluate_product(z))), 1e-30);
    }
}

TEST(Evaluate, Degree52ConstructionAtZero) {
    PrecisionContext ctx(50);
    auto doc = read_polynomial_document(deg52_data_file());
    using R64 = mp_real<64>;
    auto p = build_polynomial<R64>(doc);
    ASSERT_EQ(p.degree(), 52);
    auto v = p.evaluate(Complex<R64>(R64(0)));
    EXPECT_LT(static_cast<double>(abs(v - Complex<R64>(real_from_string<R64>("-0.09")))), 1e-45);
}

TEST(FindRoots, UnitQuadratic) {
    auto p = Polynomial<R>::from_coefficients({C(R(1)), C(R(0)), C(R(1))});
    auto found = find_roots(p, ctx30);
    ASSERT_TRUE(found.converged);
    EXPECT_LT(distance_to_set(C(R(0), R(1)), found.points), 1e-28);
    EXPECT_LT(distance_to_set(C(R(0), R(-1)), found.points), 1e-28);
    EXPECT_LT(static_cast<double>(found.max_residual()), 1e-30);
}

TEST(FindRoots, TripleRootFormsOneCluster) {
    auto p = from_quadratic_factors(std::vector<C>{C(R(1))}, std::vector<R>{R(-2)});
    auto found = find_roots(p, ctx30);
    ASSERT_TRUE(found.converged);
    ASSERT_EQ(found.clusters.size(), 1u);
    EXPECT_EQ(found.clusters[0].multiplicity(), 3);
    EXPECT_LT(static_cast<double>(abs(found.clusters[0].centroid - C(R(1)))), 1e-15);
}

TEST(FindRoots, NearDoubleConjugatePair) {
    // Real starting guesses for a pair split by ~1e-8 used to stay on the axis.
    PrecisionContext ctx(30);
    std::vector<C> pts{C(rs("0.2")), C(rs("-0.6"), rs("1e-8")), C(rs("-0.6"), rs("-1e-8"))};
    auto p = from_roots(pts).without_known_roots();
    auto found = find_roots(p, ctx);
    ASSERT_TRUE(found.converged);
    for (const auto& z : pts) EXPECT_LT(distance_to_set(z, found.points), 1e-20);
}

TEST(FindRoots, AgreesWithCompanionEigenvaluesOnDegree51) {
    // Oracle: Eigen's dense eigensolver on the double companion matrix, each
    // eigenvalue then polished by plain Newton at 60 digits.
    PrecisionContext ctx(50);
    using R64 = mp_real<64>;
    using C64 = Complex<R64>;
    auto p = build_polynomial<R64>(read_polynomial_document(deg52_data_file()));
    auto dp = derivative(p);
    ASSERT_EQ(dp.degree(), 51);
    const int n = dp.degree();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    auto lc = complex_cast<double>(dp.leading());
    std::complex<double> lcd(lc.re, lc.im);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) {
        auto c = complex_cast<double>(dp.coefficient(i));
        m(i, n - 1) = -std::complex<double>(c.re, c.im) / lcd;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    auto ddp = derivative(dp);
    auto found = critical_points(p, ctx);
    ASSERT_TRUE(found.converged);
    std::vector<C64> polished;
    for (int i = 0; i < n; ++i) {
        auto e = es.eigenvalues()(i);
        C64 z(R64(e.real()), R64(e.imag()));
        double start_gap = 1e300;
        for (const auto& w : found.points) start_gap = std::min(start_gap, static_cast<double>(abs(w - z)));
        EXPECT_LT(start_gap, 1e-6) << "raw eigenvalue " << i;
        for (int it = 0; it < 100; ++it) {
            C64 step = dp.evaluate_horner(z) / ddp.evaluate_horner(z);
            z -= step;
            if (abs(step) < R64(1e-55)) break;
        }
        polished.push_back(z);
    }
    // Every polished eigenvalue is an Aberth root and vice versa, to 10+ digits.
    for (const auto& z : polished) {
        double best = 1e300;
        for (const auto& w : found.points) best = std::min(best, static_cast<double>(abs(w - z)));
        EXPECT_LT(best, 1e-10);
    }
    for (const auto& w : found.points) {
        double best = 1e300;
        for (const auto& z : polished) best = std::min(best, static_cast<double>(abs(w - z)));
        EXPECT_LT(best, 1e-10);
    }
}

TEST(CriticalPoints, ProductFormMatchesCoefficientForm) {
    std::mt19937_64 rng(11);
    for (int n : {3, 6, 12}) {
        auto pts = lift<R>(random_separated_points(n, 1e-2, rng));
        auto a = critical_points(from_roots(pts), ctx30);
        auto b = critical_points_from_roots(pts, ctx30);
        ASSERT_TRUE(a.converged && b.converged);
        ASSERT_EQ(a.size(), b.size());
        for (const auto& z : a.points) EXPECT_LT(distance_to_set(z, b.points), 1e-22) << "degree " << n;
    }
}

TEST(CriticalPoints, GaussLucasHull) {
    // Every critical point of a polynomial with roots in the unit disk lies in the disk.
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + trial % 10;
        std::vector<Complex<double>> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_disk_point(rng));
        auto cs = critical_points(from_roots(lift<R>(pts)), ctx30);
        ASSERT_TRUE(cs.converged);
        for (const auto& z : cs.points) EXPECT_LE(static_cast<double>(abs(z)), 1.0 + 1e-12);
    }
}
