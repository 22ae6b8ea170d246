#pragma once

#include <vector>

#include "restime/lane.hpp"

namespace restime {

/// Stationary mean occupations of independent walkers that jump at rate 1
/// with the lane's hop probabilities, injected at rate alpha at site 1 and
/// delta at site L-1 and removed at 0 and L. The balance at site i reads
///
///   rho_i = alpha [i = 1] + delta [i = L-1] + p_{i-1} rho_{i-1} + q_{i+1} rho_{i+1}
///
/// with rho_0 = rho_L = 0, i.e. (I - Q)^T rho = alpha e_1 + delta e_{L-1}.
struct ZrpProfile {
    std::vector<double> rho;  ///< rho[i-1] for site i
    double alpha_in = 0.0;
    double delta_in = 0.0;

    double at(int site) const { return rho[static_cast<std::size_t>(site - 1)]; }
};

ZrpProfile zrp_stationary(const Lane& lane, double alpha_in, double delta_in);

/// Largest |rho_i - N_1i| relative to max N_1i on the symmetric lane with
/// L = 2R + 2 and a central defect eps at d = R + 1, alpha = 1, delta = 0.
double zrp_central_defect_discrepancy(int R, double eps);

bool zrp_central_defect_check(int R, double eps, double tolerance = 1e-12);

}  // namespace restime
