// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "drcs/ambiguity.hpp"
#include "drcs/error.hpp"

using namespace drcs;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

ExtensionTower example_tower() { return ExtensionTower::make(FiniteField::make(5, 1), 2, Poly{2, 1, 1}); }

SequenceSet example_t1() { return construct_t1(example_tower(), PhiMap::identity(5), example_matrix_q5()); }

SequenceSet build(Construction c, int p, int n) {
    const auto tower = ExtensionTower::make(FiniteField::make(p, n));
    std::optional<OrthoMatrix> psi;
    if (c == Construction::T1 || c == Construction::T2 || c == Construction::T3) psi = character_matrix(tower.base());
    return construct(c, tower, phi_default(tower.base()), psi);
}

double aperiodic_bound_oracle(int K, int M, int N, int zx, int zy) {
    const Big k(K), m(M), n(N), x(zx), y(zy);
    const Big inner = (k * x * y / (m * (n + x - 1)) - 1) / (k * x - 1);
    return static_cast<double>(m * n / boost::multiprecision::sqrt(y) * boost::multiprecision::sqrt(inner));
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected drcs::Error";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(CrossAf, AllOnesThreeTermSum) {
    std::vector<Complex> ones(5, 1.0);
    const auto value = cross_af(ones, ones, 2, 1);
    EXPECT_NEAR(value.real(), 0.5, 1e-12);
    EXPECT_NEAR(value.imag(), 1.538841768587627, 1e-12);
    EXPECT_NEAR(std::abs(cross_af(ones, ones, 0, 0)), 5.0, 1e-12);
    EXPECT_EQ(cross_af(ones, ones, 5, 0), Complex{});
    EXPECT_EQ(cross_af(ones, ones, -7, 2), Complex{});
}

TEST(CrossAf, NegativeShiftMirrors) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> pick(0, 6);
    std::vector<Complex> a(7), b(7);
    for (int i = 0; i < 7; ++i) {
        a[i] = root_of_unity(7, pick(rng));
        b[i] = root_of_unity(7, pick(rng));
    }
    // |AF_{a,b}(-tau, v)| = |AF_{b,a}(tau, -v)|
    for (int tau = -6; tau <= 6; ++tau)
        for (int v = -6; v <= 6; ++v)
            EXPECT_NEAR(std::abs(cross_af(a, b, -tau, v)), std::abs(cross_af(b, a, tau, -v)), 1e-12);
}

TEST(CrossAf, LengthMismatch) {
    std::vector<Complex> a(3, 1.0), b(4, 1.0);
    EXPECT_EQ(code_of([&] { (void)cross_af(a, b, 0, 0); }), ErrorCode::LengthMismatch);
}

TEST(SetAf, ExampleComplementarity) {
    const auto set = example_t1();
    const auto& c0 = set.matrices[0];
    EXPECT_NEAR(std::abs(set_af(c0, c0, 0, 0)), 25.0, 1e-9);
    for (int v = -4; v <= 4; ++v)
        if (v != 0) EXPECT_NEAR(std::abs(set_af(c0, c0, 0, v)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(set_af(set.matrices[0], set.matrices[5], 4, 0)), 5.0, 1e-9);
}

TEST(SetAf, ShapeMismatch) {
    const auto t1 = build(Construction::T1, 5, 1);
    const auto t2 = build(Construction::T2, 5, 1);
    EXPECT_EQ(code_of([&] { (void)set_af(t1.matrices[0], t2.matrices[0], 0, 0); }), ErrorCode::ShapeMismatch);
}

TEST(Metrics, ExampleT1ThetaAndClasses) {
    const auto report = metrics(example_t1());
    EXPECT_NEAR(report.theta_max, 5.0, 1e-9);
    EXPECT_NEAR(report.theta_a, 5.0, 1e-9);
    std::vector<double> classes{0.0, 5.0, 25.0};
    EXPECT_TRUE(magnitudes_outside(report, classes, 1e-6).empty());
    ASSERT_TRUE(report.bound_lemma1.has_value());
    EXPECT_NEAR(*report.bound_lemma1, 3.171351646280780, 1e-12);
}

TEST(Metrics, ExampleT4) {
    const auto set = construct_t4(example_tower(), PhiMap::identity(5));
    EXPECT_NEAR(metrics(set).theta_max, 4.0, 1e-9);
}

TEST(Metrics, RegionValidation) {
    const auto set = example_t1();
    EXPECT_EQ(code_of([&] { (void)metrics(set, Region{0, 3}); }), ErrorCode::RegionOutOfRange);
    EXPECT_EQ(code_of([&] { (void)metrics(set, Region{3, 6}); }), ErrorCode::RegionOutOfRange);
    const auto small = metrics(set, Region{2, 2});
    EXPECT_LE(small.theta_max, metrics(set).theta_max + 1e-9);
    EXPECT_EQ(small.region.zx, 2);
}

TEST(Metrics, FastScanMatchesDirectDefinition) {
    for (auto c : {Construction::T1, Construction::T3, Construction::T5}) {
        const auto set = build(c, 7, 1);
        double theta_a = 0.0;
        double theta_c = 0.0;
        const int n = set.N;
        for (int k1 = 0; k1 < set.K; ++k1)
            for (int k2 = 0; k2 < set.K; ++k2)
                for (int tau = 1 - n; tau < n; ++tau)
                    for (int v = 1 - n; v < n; ++v) {
                        const double mag = std::abs(set_af(set.matrices[k1], set.matrices[k2], tau, v));
                        if (k1 == k2 && tau == 0 && v == 0) continue;
                        (k1 == k2 ? theta_a : theta_c) = std::max(k1 == k2 ? theta_a : theta_c, mag);
                    }
        const auto report = metrics(set);
        EXPECT_NEAR(report.theta_a, theta_a, 1e-9);
        EXPECT_NEAR(report.theta_c, theta_c, 1e-9);
        EXPECT_NEAR(report.theta_max, std::max(theta_a, theta_c), 1e-9);
    }
}

TEST(AfSurface, MatchesSetAfAndZeroDopplerOracle) {
    const auto set = build(Construction::T1, 2, 3);
    const auto& a = set.matrices[1];
    const auto& b = set.matrices[4];
    const auto surface = af_surface(a, b);
    const int n = surface.n;
    for (int tau = 1 - n; tau < n; ++tau) {
        for (int v = 1 - n; v < n; ++v) EXPECT_NEAR(std::abs(surface.at(tau, v) - set_af(a, b, tau, v)), 0.0, 1e-9);
        // v = 0: shift-and-sum over the flock without any Doppler factor.
        Complex oracle{};
        for (std::size_t m = 0; m < a.rows(); ++m)
            for (int i = 0; i < n; ++i)
                if (i + tau >= 0 && i + tau < n)
                    oracle += root_of_unity(a.alphabet, a.exponents(m, i) - b.exponents(m, i + tau));
        EXPECT_NEAR(std::abs(surface.at(tau, 0) - oracle), 0.0, 1e-9);
    }
    EXPECT_EQ(surface.at(n, 0), Complex{});
    EXPECT_EQ(to_csv(surface).rfind("tau,v,re,im,mag\n", 0), 0u);
}

TEST(Bounds, AperiodicBoundFrozenValues) {
    EXPECT_NEAR(bound_lemma1(6, 5, 5, 5, 5), 3.171351646280780, 1e-12);
    EXPECT_NEAR(bound_lemma1(4, 4, 5, 5, 5), 2.735942272227078, 1e-12);
    EXPECT_NEAR(bound_lemma1(6, 5, 5, 5, 3), 2.680281337094487, 1e-12);
    EXPECT_NEAR(bound_lemma1(2, 1, 2, 1, 1), 0.0, 1e-15);
}

TEST(Bounds, AperiodicBoundAgreesWithMultiprecisionOracle) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int N = std::uniform_int_distribution<int>(2, 60)(rng);
        const int M = std::uniform_int_distribution<int>(1, 60)(rng);
        const int K = std::uniform_int_distribution<int>(2, 60)(rng);
        const int zx = std::uniform_int_distribution<int>(1, N)(rng);
        const int zy = std::uniform_int_distribution<int>(1, N)(rng);
        const Big radicand = Big(K) * zx * zy / (Big(M) * (N + zx - 1)) - 1;
        if (radicand < 0 || K * zx <= 1) {
            EXPECT_EQ(code_of([&] { (void)bound_lemma1(K, M, N, zx, zy); }), ErrorCode::NotApplicable);
            continue;
        }
        const double want = aperiodic_bound_oracle(K, M, N, zx, zy);
        EXPECT_NEAR(bound_lemma1(K, M, N, zx, zy), want, 1e-12 * std::max(1.0, want));
    }
}

TEST(Bounds, Eq2TableValues) {
    // q = 5 and q = 43 rows of the T1 parameter family, Zy = N.
    EXPECT_NEAR(bound_eq2(6, 5, 5, 5), 3.6353, 5e-4);
    EXPECT_NEAR(bound_eq2(44, 43, 43, 43), std::sqrt(43.0 * 43.0 * (1 - 2 * std::sqrt(43.0 / (3.0 * 44 * 43)))),
                1e-12);
    EXPECT_EQ(code_of([] { (void)bound_eq2(2, 5, 5, 5); }), ErrorCode::NotApplicable);
    EXPECT_NEAR(bound_eq2_min_zx(6, 5, 5, 5), 5 * std::sqrt(15.0 / 30.0), 1e-12);
}

TEST(Bounds, OptimalityFactor) {
    EXPECT_NEAR(optimality_factor(5.0, 2.5), 2.0, 1e-15);
    EXPECT_EQ(code_of([] { (void)optimality_factor(1.0, 0.0); }), ErrorCode::NonPositiveBound);
    const std::vector<double> down{3.0, 2.0, 1.5};
    const std::vector<double> flat{3.0, 3.0};
    EXPECT_TRUE(strictly_decreasing(down));
    EXPECT_FALSE(strictly_decreasing(flat));
}

TEST(Metrics, JsonReport) {
    const auto j = to_json(metrics(example_t1()));
    EXPECT_NEAR(j["theta_max"].get<double>(), 5.0, 1e-9);
    EXPECT_TRUE(j.contains("rho"));
}
