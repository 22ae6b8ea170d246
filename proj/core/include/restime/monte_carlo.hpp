#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "restime/dynamics.hpp"
#include "restime/lane.hpp"

namespace restime {

struct McConfig {
    std::uint64_t walks = 1;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    HomogeneousParams base{0.5};
    int L = 2;
    /// Empty means a homogeneous lane without a defect.
    std::optional<DefectDynamics> dynamics;
    /// Called from the coordinating thread with (finished, total) walks.
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Conditioned visit counts per site, averaged over right-exit walks.
struct SiteProfile {
    std::vector<double> local_hat;  ///< local_hat[i-1] estimates E_1[n_i | RE]
    std::vector<double> local_se;
    std::uint64_t n_right = 0;
};

struct McEstimate {
    double gamma_hat = 0.0;
    double gamma_se = 0.0;
    std::vector<double> local_hat;
    std::vector<double> local_se;
    std::uint64_t n_right = 0;
    std::uint64_t n_left = 0;
    double p_re_hat = 0.0;
    double p_re_se = 0.0;
};

/// Simulates `walks` trajectories from site 1 with the defect refreshed
/// before every hop. A trajectory's visit count at site i counts the times
/// t = 0..tau-1 it sits there, so the counts sum to tau.
///
/// Walk j draws from its own generator seeded by (seed, j) and runs on
/// worker j mod workers; per-worker sums are integers, so the estimate is
/// bit-identical for every worker count. Throws EstimationError when no
/// walk exits right.
McEstimate simulate(const McConfig& config);

SiteProfile simulate_profile(const McConfig& config);

}  // namespace restime
