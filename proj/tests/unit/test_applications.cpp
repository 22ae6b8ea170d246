#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "restime/applications.hpp"
#include "restime/closed_form.hpp"
#include "restime/errors.hpp"

namespace restime {
namespace {

using testing::rel;

constexpr double kAlpha = 6.043;
constexpr double kC = 1.074;
constexpr double kABar = 0.2230;
constexpr double kBBar = 0.4152;

std::vector<IpasPoint> synthetic(const IpasSetting& s, double alpha, double c, int n,
                                 double noise = 0.0, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, noise);
    std::vector<IpasPoint> data;
    for (int k = 0; k < n; ++k) {
        const double phi = 0.5 + 2.5 * k / (n - 1);
        double y = ipas(s, eps_of_phi(phi, kABar, kBBar, alpha, c));
        if (noise > 0.0) y *= 1.0 + jitter(rng);
        data.push_back({phi, y});
    }
    return data;
}

TEST(Ipas, UnitAtZeroBias) {
    EXPECT_NEAR(ipas({}, 0.0), 1.0, 1e-13);
    EXPECT_NEAR(ipas({20, 5, HomogeneousParams(0.6)}, 0.0), 1.0, 1e-14);
}

TEST(Ipas, NegativeBiasLengthensResidence) {
    for (int d : {10, 26, 40}) {
        EXPECT_LT(ipas({102, d, HomogeneousParams(0.55)}, -0.2), 1.0) << "d=" << d;
    }
}

TEST(Ipas, StrictlyIncreasingOnReferenceLane) {
    for (int d : {10, 26, 51, 76}) {
        const IpasSetting s{102, d, HomogeneousParams(0.55)};
        double prev = ipas(s, -0.55 + 1e-6);
        for (double eps = -0.54; eps < 0.45 - 1e-6; eps += 0.01) {
            const double cur = ipas(s, eps);
            EXPECT_GT(cur, prev) << "d=" << d << " eps=" << eps;
            prev = cur;
        }
    }
}

TEST(Ipas, InversionRoundTrip) {
    const IpasSetting s;
    for (double eps : {-0.4, -0.2, 0.0, 0.1, 0.3}) {
        EXPECT_NEAR(eps_for_ipas(s, ipas(s, eps)), eps, 1e-10);
    }
    EXPECT_THROW(eps_for_ipas(s, 100.0), ValidationError);
}

TEST(EpsOfPhi, Limits) {
    EXPECT_DOUBLE_EQ(eps_of_phi(0.0, kABar, kBBar, kAlpha, kC), -kBBar);
    EXPECT_NEAR(eps_of_phi(1e6, kABar, kBBar, kAlpha, kC), kABar - kBBar, 1e-15);
    EXPECT_NEAR(eps_of_phi(1.0, kABar, kBBar, kAlpha, kC), kABar / (1 + kC) - kBBar, 1e-15);
}

TEST(FitIpas, NoiselessRoundTrip) {
    const IpasSetting s;
    const FitResult fit = fit_ipas(synthetic(s, kAlpha, kC, 10), s);
    EXPECT_LT(rel(fit.alpha, kAlpha), 1e-3);
    EXPECT_LT(rel(fit.c_fit, kC), 1e-3);
    EXPECT_LT(rel(fit.a_bar, kABar), 1e-3);
    EXPECT_LT(rel(fit.b_bar, kBBar), 1e-3);
    EXPECT_FALSE(fit.degenerate);
    EXPECT_GE(fit.rss, 0.0);
    EXPECT_GT(fit.c_fit, 0.0);
}

TEST(FitIpas, SmallNoiseDegradesGracefully) {
    const IpasSetting s;
    const FitResult fit = fit_ipas(synthetic(s, kAlpha, kC, 10, 1e-4, 2024), s);
    EXPECT_LT(rel(fit.alpha, kAlpha), 0.02);
    EXPECT_LT(rel(fit.c_fit, kC), 0.02);
    // percent-level noise still converges to an admissible curve
    const FitResult rough = fit_ipas(synthetic(s, kAlpha, kC, 10, 0.01, 2024), s);
    EXPECT_GT(rough.alpha, 0.0);
    EXPECT_GT(rough.c_fit, 0.0);
    EXPECT_TRUE(std::isfinite(rough.rss));
}

TEST(FitIpas, IdentifiableAcrossParameterBox) {
    const IpasSetting s;
    for (double alpha : {2.0, 5.0, 10.0}) {
        for (double c : {0.5, 1.0, 2.0}) {
            const FitResult fit = fit_ipas(synthetic(s, alpha, c, 8), s);
            EXPECT_LT(rel(fit.alpha, alpha), 1e-3) << "alpha=" << alpha << " c=" << c;
            EXPECT_LT(rel(fit.c_fit, c), 1e-3) << "alpha=" << alpha << " c=" << c;
        }
    }
}

TEST(FitIpas, ConstantDataIsDegenerate) {
    std::vector<IpasPoint> data;
    for (int k = 0; k < 6; ++k) data.push_back({0.5 + 0.5 * k, 1.0});
    const FitResult fit = fit_ipas(data, {});
    EXPECT_TRUE(fit.degenerate);
    EXPECT_NEAR(fit.a_bar, 0.0, 1e-12);
    EXPECT_NEAR(fit.b_bar, 0.0, 1e-9);
    EXPECT_NEAR(fit.rss, 0.0, 1e-12);
}

TEST(FitIpas, IterationCapReportsBestSoFar) {
    const IpasSetting s;
    FitOptions opts;
    opts.max_iterations = 3;
    try {
        fit_ipas(synthetic(s, kAlpha, kC, 8), s, opts);
        FAIL() << "expected FitConvergenceError";
    } catch (const FitConvergenceError& e) {
        EXPECT_EQ(e.best().iterations, 3);
        EXPECT_TRUE(std::isfinite(e.best().rss));
    }
}

TEST(FitIpas, RejectsTooFewPoints) {
    EXPECT_THROW(fit_ipas({{0.5, 1.0}, {1.0, 1.0}, {2.0, 1.0}}, {}), ValidationError);
}

TEST(ScanDefectPosition, RunoffOrdering) {
    const HomogeneousParams base(0.54);
    for (int L : {101, 102}) {
        const auto rows = scan_defect_position(base, -0.3, L, 2, L - 2);
        const double none = baseline_gamma(base, L);
        const double g10 = rows[10 - 2].gamma;
        const double g25 = rows[25 - 2].gamma;
        EXPECT_GT(g25, g10);
        EXPECT_GT(g10, none);
    }
}

TEST(ScanDefectPosition, SymmetricExtremumSideFollowsBiasSign) {
    // eps > 0 shortens the stay most when the defect sits right of centre
    for (double eps : {0.2, 0.3, 0.4}) {
        for (double sign : {1.0, -1.0}) {
            const auto rows = scan_defect_position(HomogeneousParams(0.5), sign * eps, 102, 2, 100);
            const auto best = std::min_element(
                rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) { return a.gamma < b.gamma; });
            if (sign > 0) {
                EXPECT_GT(best->position, 51);
            } else {
                EXPECT_LT(best->position, 51);
            }
        }
    }
}

TEST(ScanDefectPosition, ZeroBiasIsFlat) {
    const auto rows = scan_defect_position(HomogeneousParams(0.52), 0.0, 60, 2, 58);
    for (const ScanRow& r : rows) EXPECT_LT(rel(r.gamma, rows.front().gamma), 1e-12);
}

TEST(ScanSpread, StartsAtStaticDefect) {
    const auto rows = scan_spread(HomogeneousParams(0.5), 0.3, 102, 26, 0, 24);
    EXPECT_EQ(rows.size(), 25u);
    EXPECT_LT(rel(rows.front().gamma, closed_form::symmetric_gamma(102, 26, 0.3)), 1e-12);
}

}  // namespace
}  // namespace restime
