#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "restime/closed_form.hpp"
#include "restime/errors.hpp"
#include "restime/exact.hpp"
#include "restime/lane.hpp"

namespace restime {
namespace {

namespace cf = closed_form;
using testing::max_rel_diff;
using testing::rel;

LaneSolution solve_defect(int L, int d, double eps, double p) {
    return solve_lane(apply_static_defect(make_homogeneous_lane(L, p), {d, eps}));
}

TEST(SymmetricClosedForm, MatchesSolverOnGrid) {
    for (int L : {4, 11, 102, 301}) {
        for (int d : {2, std::max(2, L / 3), L / 2, L - 2}) {
            for (double eps : {-0.45, -0.2, 0.0, 0.1, 0.4}) {
                const LaneSolution s = solve_defect(L, d, eps, 0.5);
                EXPECT_LT(rel(cf::symmetric_current(L, d, eps), s.visits.current), 1e-10);
                EXPECT_LT(max_rel_diff(cf::symmetric_visits(L, d, eps), s.visits.visits), 1e-10);
                EXPECT_LT(max_rel_diff(cf::symmetric_local_residence(L, d, eps), s.residence.local),
                          1e-10);
                EXPECT_LT(rel(cf::symmetric_gamma(L, d, eps), s.residence.gamma), 1e-10);
                for (int i : {1, d, L - 1}) {
                    EXPECT_LT(rel(cf::symmetric_exit_probability(L, d, eps, i), s.exits.at(i)), 1e-10);
                }
            }
        }
    }
}

TEST(SymmetricClosedForm, CentralSiteIsBiasIndependent) {
    for (double eps : {-0.4, -0.1, 0.2, 0.4}) {
        EXPECT_NEAR(cf::symmetric_gamma(102, 51, eps), (102.0 * 102.0 - 1.0) / 3.0, 1e-9);
    }
    EXPECT_NEAR(cf::symmetric_gamma(102, 51, 0.3), 3467.67, 0.01);
}

TEST(SymmetricClosedForm, ZeroBiasReducesToHomogeneous) {
    EXPECT_NEAR(cf::symmetric_gamma(40, 7, 0.0), (1600.0 - 1.0) / 3.0, 1e-10);
    EXPECT_NEAR(cf::symmetric_current(40, 7, 0.0), 1.0 / 40.0, 1e-16);
}

TEST(SymmetricClosedForm, MirrorSymmetry) {
    for (int d = 2; d <= 100; d += 7) {
        for (double eps : {-0.3, 0.1, 0.45}) {
            EXPECT_LT(rel(cf::symmetric_gamma(102, d, eps), cf::symmetric_gamma(102, 102 - d, -eps)),
                      1e-12);
        }
    }
}

TEST(SymmetricClosedForm, RejectsOutOfRangeInput) {
    EXPECT_THROW(cf::symmetric_gamma(10, 1, 0.1), ValidationError);
    EXPECT_THROW(cf::symmetric_gamma(10, 9, 0.1), ValidationError);
    EXPECT_THROW(cf::symmetric_gamma(10, 5, 0.5), BiasOutOfRange);
    EXPECT_THROW(cf::symmetric_exit_probability(10, 5, 0.1, 10), ValidationError);
}

TEST(DrivenClosedForm, MatchesSolverOnGrid) {
    for (double p : {0.3, 0.45, 0.499, 0.501, 0.55, 0.7}) {
        for (int L : {5, 40, 102, 300}) {
            for (int d : {2, L / 2, L - 2}) {
                for (double eps : {-0.25, -0.05, 0.05, 0.25}) {
                    const LaneSolution s = solve_defect(L, d, eps, p);
                    const std::string where =
                        "p=" + std::to_string(p) + " L=" + std::to_string(L) + " d=" +
                        std::to_string(d) + " eps=" + std::to_string(eps);
                    EXPECT_LT(rel(cf::driven_current(L, d, eps, p), s.visits.current), 1e-10) << where;
                    EXPECT_LT(max_rel_diff(cf::driven_visits(L, d, eps, p), s.visits.visits), 1e-10)
                        << where;
                    for (int i = 1; i < L; ++i) {
                        EXPECT_LT(rel(cf::driven_exit_probability(L, d, eps, p, i), s.exits.at(i)),
                                  1e-10)
                            << where << " i=" << i;
                    }
                    EXPECT_LT(rel(cf::driven_gamma(L, d, eps, p), s.residence.gamma), 1e-8) << where;
                }
            }
        }
    }
}

TEST(DrivenClosedForm, ZeroBiasLimits) {
    const double p = 0.6;
    const double A = (1 - p) / p;
    const int L = 30;
    // Z = 1 + sum_{k=1}^{L-1} (p/q)^{L-k}
    double z = 1.0;
    for (int k = 1; k < L; ++k) z += std::pow(p / (1 - p), L - k);
    EXPECT_LT(rel(cf::driven_exit_normalizer(L, 10, 0.0, p), z), 1e-13);
    for (int i = 1; i < L; ++i) {
        const double ruin = (1 - std::pow(A, i)) / (1 - std::pow(A, L));
        EXPECT_LT(rel(cf::driven_exit_probability(L, 10, 0.0, p, i), ruin), 1e-12);
    }
    // homogeneous driven current: (1 - A) / (1 - A^L) for the walk from site 1
    EXPECT_LT(rel(cf::driven_current(L, 10, 0.0, p), (1 - A) / (1 - std::pow(A, L))), 1e-12);
}

TEST(DrivenClosedForm, ContinuousAtSymmetricPoint) {
    for (double p : {0.5 - 1e-6, 0.5 + 1e-6}) {
        EXPECT_NEAR(cf::driven_current(102, 30, 0.2, p), cf::symmetric_current(102, 30, 0.2), 1e-4);
    }
}

TEST(DrivenClosedForm, DelegatesNearSymmetry) {
    EXPECT_TRUE(cf::driven_gamma_delegates(0.5002));
    EXPECT_FALSE(cf::driven_gamma_delegates(0.51));
    const LaneSolution s = solve_defect(102, 30, 0.2, 0.5002);
    EXPECT_DOUBLE_EQ(cf::driven_gamma(102, 30, 0.2, 0.5002), s.residence.gamma);
    EXPECT_THROW(cf::driven_gamma(102, 30, 0.2, 0.5), ValidationError);
}

TEST(DrivenClosedForm, ReferenceLaneBaselines) {
    // no-defect driven values on the 102 reading
    const double expected[] = {2775.3, 1926.5, 1422.2, 1118.8};
    const double ps[] = {0.51, 0.52, 0.53, 0.54};
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(cf::driven_gamma(102, 51, 0.0, ps[k]), expected[k], 0.1);
    }
}

TEST(DrivenClosedForm, LargeLatticesStayFinite) {
    for (double p : {0.45, 0.6}) {
        for (int L : {10000, 100000}) {
            const double g = cf::driven_gamma(L, L / 3, 0.2, p);
            EXPECT_TRUE(std::isfinite(g));
            EXPECT_NEAR(cf::asymptotic_ratio(cf::Regime::driven, L, L / 3, 0.2, p), 1.0, 0.01);
            const auto v = cf::driven_visits(L, L / 3, 0.2, p);
            for (double x : v) ASSERT_TRUE(std::isfinite(x));
            if (L == 10000) {
                const LaneSolution s = solve_defect(L, L / 3, 0.2, p);
                EXPECT_LT(max_rel_diff(v, s.visits.visits), 1e-9) << "p=" << p;
                EXPECT_LT(rel(g, s.residence.gamma), 1e-9) << "p=" << p;
            }
        }
    }
}

TEST(SymmetricClosedForm, AsymptoticRatio) {
    const int L = 10000;
    EXPECT_NEAR(cf::asymptotic_ratio(cf::Regime::symmetric, L, 2, 0.4), 1.0, 5e-3);
    EXPECT_NEAR(cf::asymptotic_ratio(cf::Regime::symmetric, L, L / 2, 0.4), 1.0, 1e-6);
    // with d = x L the limit is a cubic in x over a linear one, not 1
    for (double x : {0.1, 0.25, 0.75}) {
        for (double eps : {-0.3, 0.3}) {
            const double limit = (1 - 2 * eps + 12 * x * eps - 24 * x * x * eps + 16 * x * x * x * eps) /
                                 (1 - 2 * eps + 4 * x * eps);
            const int d = static_cast<int>(x * L);
            EXPECT_NEAR(cf::asymptotic_ratio(cf::Regime::symmetric, L, d, eps), limit, 1e-3)
                << "x=" << x << " eps=" << eps;
        }
    }
}

TEST(DrivenClosedForm, RejectsInvalidBias) {
    EXPECT_THROW(cf::driven_current(20, 5, 0.5, 0.6), BiasOutOfRange);
    EXPECT_THROW(cf::driven_visits(20, 5, -0.6, 0.6), BiasOutOfRange);
}

TEST(StaticDefectGamma, DispatchesByRegime) {
    EXPECT_DOUBLE_EQ(cf::static_defect_gamma(50, 20, 0.1, 0.5), cf::symmetric_gamma(50, 20, 0.1));
    EXPECT_DOUBLE_EQ(cf::static_defect_gamma(50, 20, 0.1, 0.6), cf::driven_gamma(50, 20, 0.1, 0.6));
}

}  // namespace
}  // namespace restime
