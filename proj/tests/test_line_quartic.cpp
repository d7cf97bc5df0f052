#include <gtest/gtest.h>

#include <random>

#include "sendov/sendov.hpp"

using namespace sendov;
using R = mp_real<48>;
using C = Complex<R>;

namespace {

const PrecisionContext ctx30(30);

R rs(const char* s) { return real_from_string<R>(s); }

Polynomial<R> real_poly(const std::vector<double>& roots) {
    std::vector<C> pts;
    for (double x : roots) pts.emplace_back(R(x));
    return from_roots(pts);
}

}  // namespace

TEST(Interlacing, OddCubic) {
    auto w = verify_interlacing(real_poly({-1, 0, 1}), ctx30);
    EXPECT_TRUE(w.interlaced);
    ASSERT_EQ(w.sorted_critical.size(), 2u);
    using std::sqrt;
    EXPECT_LT(static_cast<double>(abs(w.sorted_critical[1] - R(1) / sqrt(R(3)))), 1e-28);
    EXPECT_LT(static_cast<double>(abs(w.sorted_critical[0] + R(1) / sqrt(R(3)))), 1e-28);
}

TEST(Interlacing, TripleRootIsDegenerateButInterlaced) {
    auto w = verify_interlacing(real_poly({1, 1, 1}), ctx30);
    EXPECT_TRUE(w.interlaced);
    for (const auto& x : w.sorted_critical) EXPECT_LT(static_cast<double>(abs(x - R(1))), 1e-12);
}

TEST(Interlacing, RandomRealRooted) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> roots(10);
        for (auto& x : roots) x = u(rng);
        EXPECT_TRUE(verify_interlacing(real_poly(roots), ctx30).interlaced);
    }
}

TEST(Interlacing, RejectsNonRealRoots) {
    auto p = Polynomial<R>::from_coefficients({C(R(1)), C(R(0)), C(R(1))});
    EXPECT_THROW(verify_interlacing(p, ctx30), std::domain_error);
}

TEST(AllRealBound, Values) {
    EXPECT_LT(static_cast<double>(abs(allreal_bound<R>(3) - R(2) / R(3))), 1e-40);
    EXPECT_LT(static_cast<double>(abs(allreal_bound<R>(4) - rs("0.5"))), 1e-40);
    EXPECT_LT(static_cast<double>(abs(allreal_bound<R>(100) - rs("0.1"))), 1e-40);
}

TEST(AllRealBound, ExtremeRootGivesTwoOverN) {
    // beta at the end of the root list: the cap 2/n is the relevant one.
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-1.0, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 6;
        std::vector<double> roots{1.0};
        for (int i = 1; i < n; ++i) roots.push_back(u(rng));
        auto inst = make_instance(real_poly(roots), C(R(1)), ctx30);
        EXPECT_LE(static_cast<double>(*inst.d_value), 2.0 / n + 1e-12);
    }
}

TEST(ProductIdentity, SmallCases) {
    auto a = check_product_identity(real_poly({-1, 1}), C(R(1)), ctx30);
    EXPECT_LT(static_cast<double>(abs(a.lhs - R(2))), 1e-28);
    EXPECT_LT(static_cast<double>(abs(a.rhs - R(2))), 1e-28);
    auto b = check_product_identity(real_poly({-1, 0, 1}), C(R(0)), ctx30);
    EXPECT_LT(static_cast<double>(abs(b.lhs - R(1))), 1e-28);
    EXPECT_LT(static_cast<double>(abs(b.rhs - R(1))), 1e-28);
}

TEST(ProductIdentity, RandomDegreeEight) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        auto ri = random_general_instance(8, rng);
        auto pts = lift<R>(ri.roots);
        auto id = check_product_identity(from_roots(pts), pts[0], ctx30);
        EXPECT_LT(static_cast<double>(abs(id.lhs - id.rhs) / id.rhs), 1e-20);
    }
}

TEST(ProductIdentity, BetaMustBeARoot) {
    EXPECT_THROW(check_product_identity(real_poly({-1, 0, 1}), C(rs("0.5")), ctx30), std::domain_error);
}

TEST(Collinear, VerticalLine) {
    std::vector<C> pts{C(R(0), rs("0.9")), C(R(0)), C(R(0), rs("-0.9"))};
    auto out = normalize_collinear(from_roots(pts), C(R(0)), R(1e-12), ctx30);
    EXPECT_LT(static_cast<double>(abs(out.beta)), 1e-30);
    auto roots = roots_of(out.polynomial, ctx30).points;
    std::vector<double> xs;
    for (const auto& z : roots) {
        EXPECT_LT(static_cast<double>(abs(z.im)), 1e-25);
        xs.push_back(static_cast<double>(z.re));
    }
    std::sort(xs.begin(), xs.end());
    EXPECT_NEAR(xs[0], -0.9, 1e-25);
    EXPECT_NEAR(xs[1], 0.0, 1e-25);
    EXPECT_NEAR(xs[2], 0.9, 1e-25);
}

TEST(Collinear, SlantedChordIsCentered) {
    C a(rs("0.3"), rs("0.4")), b(rs("0.6"), rs("0.8"));
    auto out = normalize_collinear(from_roots(std::vector<C>{a, b}), b, R(1e-12), ctx30);
    EXPECT_LT(static_cast<double>(abs(out.beta - rs("0.25"))), 1e-30);
    EXPECT_LT(static_cast<double>(abs(out.polynomial.coefficient(0) - C(rs("-0.0625")))), 1e-30);
    EXPECT_LT(static_cast<double>(abs(out.polynomial.coefficient(1))), 1e-30);
}

TEST(Collinear, RejectsTriangle) {
    auto p = from_roots(std::vector<C>{C(R(0)), C(R(1)), C(R(0), R(1))});
    EXPECT_THROW(normalize_collinear(p, C(R(0)), R(1e-12), ctx30), std::domain_error);
}

TEST(Collinear, NormalizationIsRigid) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        auto ri = random_collinear(2 + trial % 8, rng);
        auto pts = lift<R>(ri.roots);
        auto beta = pts[ri.beta_index];
        auto before = make_instance(from_roots(pts), beta, ctx30);
        auto out = normalize_collinear(from_roots(pts), beta, R(1e-12), ctx30);
        auto after = make_instance(out.polynomial, C(out.beta), ctx30);
        EXPECT_LT(static_cast<double>(abs(*before.d_value - *after.d_value)), 1e-20);
        EXPECT_GE(static_cast<double>(out.beta), 0.0);
        EXPECT_EQ(check_bound(before, line_bound<R>()).verdict, Verdict::holds);
        EXPECT_LE(static_cast<double>(after.max_root_modulus()), 1.0 + 1e-12);
    }
}

TEST(FromCriticalPoints, Quadratic) {
    auto p = from_critical_points(CriticalPrescription<R>{C(R(1)), {C(R(0))}});
    ASSERT_EQ(p.degree(), 2);
    EXPECT_EQ(p.coefficient(0), C(R(-1)));
    EXPECT_EQ(p.coefficient(1), C(R(0)));
    EXPECT_EQ(p.coefficient(2), C(R(1)));
}

TEST(FromCriticalPoints, OddCubic) {
    R a = rs("0.4");
    auto p = from_critical_points(CriticalPrescription<R>{C(R(0)), {C(-a), C(a)}});
    ASSERT_EQ(p.degree(), 3);
    EXPECT_LT(static_cast<double>(abs(p.coefficient(0))), 1e-40);
    EXPECT_LT(static_cast<double>(abs(p.coefficient(1) - C(R(-3) * a * a))), 1e-40);
    EXPECT_LT(static_cast<double>(abs(p.coefficient(2))), 1e-40);
    EXPECT_EQ(p.coefficient(3), C(R(1)));
}

TEST(FromCriticalPoints, DerivativeRoundTrip) {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + trial % 6;
        std::vector<Complex<double>> zeta;
        for (int i = 0; i < n - 1; ++i) zeta.push_back(random_disk_point(rng));
        CriticalPrescription<R> spec{complex_cast<R>(random_disk_point(rng)), lift<R>(zeta)};
        auto p = from_critical_points(spec);
        EXPECT_LT(static_cast<double>(abs(p.evaluate_horner(spec.beta))), 1e-35);
        auto expect = Complex<R>(R(n)) * from_roots(spec.critical_points).without_known_roots();
        EXPECT_LT(static_cast<double>(coefficient_distance(derivative(p), expect)), 1e-35);
    }
}

TEST(Counterexample, RootsInsideDisk) {
    auto rep = nonreal_exhibit<R>(ctx30);
    ASSERT_TRUE(rep.member);
    ASSERT_EQ(rep.root_moduli.size(), 4u);
    EXPECT_LT(static_cast<double>(rep.max_root_modulus), 1.0 - 1e-4);
    EXPECT_NEAR(static_cast<double>(rep.max_root_modulus), 0.99958387, 1e-7);
    EXPECT_NEAR(static_cast<double>(rep.derivative_at_beta), 2.80687, 1e-4);
    EXPECT_NEAR(static_cast<double>(rep.derivative_bound), 2.802276, 1e-6);
    EXPECT_TRUE(rep.exhibits_failure);
    EXPECT_FALSE(rep.polynomial.has_real_coefficients(R(1e-20)));
}

TEST(Counterexample, StableAcrossPrecision) {
    auto lo = nonreal_exhibit<R>(ctx30);
    auto hi = nonreal_exhibit<mp_real<64>>(PrecisionContext(50));
    EXPECT_NEAR(static_cast<double>(lo.d), static_cast<double>(hi.d), 1e-25);
    EXPECT_NEAR(static_cast<double>(lo.derivative_at_beta), static_cast<double>(hi.derivative_at_beta), 1e-25);
}

TEST(RealQuartic, DerivativeBoundNotApplicableForTripleRoot) {
    auto r = check_derivative_bound(real_poly({1, -1, -1, -1}), R(1), ctx30);
    EXPECT_FALSE(r.applicable);
    EXPECT_LT(static_cast<double>(abs(r.derivative_at_beta - R(8))), 1e-25);
    EXPECT_EQ(r.derivative_bound, R(4));
    EXPECT_LT(static_cast<double>(abs(r.d - rs("0.5"))), 1e-25);
    EXPECT_TRUE(r.holds());
}

TEST(RealQuartic, RejectsNonRealCoefficients) {
    auto rep = nonreal_exhibit<R>(ctx30);
    EXPECT_THROW(check_derivative_bound(rep.polynomial, rep.beta, ctx30), std::domain_error);
}

TEST(RealQuartic, DistanceBoundAtFourthRootsOfUnity) {
    auto p = Polynomial<R>::from_coefficients({C(R(-1)), C(R(0)), C(R(0)), C(R(0)), C(R(1))});
    auto r = check_real_quartic(p, R(1), ctx30);
    EXPECT_LT(static_cast<double>(abs(r.d - R(1))), 1e-9);
    EXPECT_EQ(r.distance_bound, R(1));
    EXPECT_TRUE(r.holds());
}

TEST(RealQuartic, RandomSampleRespectsBothBounds) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 1000; ++trial) {
        auto ri = random_real_quartic(rng);
        auto p = from_roots(lift<R>(ri.roots));
        auto r = check_real_quartic(p, R(ri.beta()), ctx30);
        ASSERT_TRUE(r.holds()) << "trial " << trial << " beta " << ri.beta();
    }
}

TEST(ScalarInequality, SampleAndGrid) {
    auto [lhs, rhs] = cube_inequality(rs("0.25"));
    EXPECT_LT(static_cast<double>(abs(lhs - rs("0.75"))), 1e-40);
    EXPECT_NEAR(static_cast<double>(rhs), 0.77026, 1e-5);
    for (int i = 0; i <= 10000; ++i) {
        double x = i / 10000.0;
        auto [a, b] = cube_inequality(x);
        EXPECT_LE(a, b + 1e-15);
        if (i > 0) EXPECT_LT(a, b);
    }
}
