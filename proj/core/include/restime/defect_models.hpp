#pragma once

#include <vector>

#include "restime/dynamics.hpp"
#include "restime/lane.hpp"

namespace restime {

/// Discrete triangle on [d - a, d + a]: beta_i proportional to a + 1 - |i - d|,
/// normalized to sum 1. beta[k] belongs to site first_site + k.
struct TriangularWeights {
    int first_site = 0;
    std::vector<double> beta;

    int last_site() const { return first_site + static_cast<int>(beta.size()) - 1; }
    double at(int site) const;
};

/// Lane bounds are not checked here; effective_lane checks the support.
TriangularWeights triangular_weights(int d, int a);

/// Time-averaged static lane for the given defect dynamics on a homogeneous
/// background of right index L:
///   static  p_d + eps
///   A       p_d + psi eps
///   B       p_d + lambda_A / (lambda_A + lambda_D) eps
///   C       p + eps / L on every site
///   D       p_i + beta_i eps on the triangle support
Lane effective_lane(const HomogeneousParams& base, int L, const DefectDynamics& dynamics);

}  // namespace restime
