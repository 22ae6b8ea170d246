#pragma once

#include <vector>

#include "restime/lane.hpp"

namespace restime {

/// Continuant sequences of the tridiagonal matrix I - Q.
///
/// theta runs over theta_{-1}..theta_{L-1}; phi runs over phi_1..phi_{L+1}.
/// theta_{L-1} = phi_1 = det(I - Q). Raw values are not rescaled, so both
/// sequences under- or overflow for lanes much longer than ~10^3 sites.
struct ThetaPhi {
    std::vector<double> theta;
    std::vector<double> phi;

    double theta_at(int i) const { return theta[static_cast<std::size_t>(i + 1)]; }
    double phi_at(int i) const { return phi[static_cast<std::size_t>(i - 1)]; }
    double determinant() const { return theta.back(); }
};

ThetaPhi theta_phi(const Lane& lane);

/// max_i |theta_i phi_{i+1} - q_{i+1} p_i theta_{i-1} phi_{i+2} - theta_{L-1}|
/// over i = 1..L-1, with q_L taken as 0.
double usmani_identity_residual(const ThetaPhi& tp, const Lane& lane);

/// First row N_{1i} of the fundamental matrix and the conserved current c.
struct VisitProfile {
    std::vector<double> visits;  ///< visits[i-1] = N_{1i}
    double current = 0.0;
    /// max_i |closed - substituted| / max_i |substituted| between the
    /// product/sum closed form and the canonical substitution result.
    /// Infinite when the closed form is not representable in double.
    double closed_form_discrepancy = 0.0;
    bool precision_warning = false;

    double at(int site) const { return visits[static_cast<std::size_t>(site - 1)]; }
};

VisitProfile mean_visits(const Lane& lane);

struct ExitProbabilities {
    std::vector<double> right;  ///< right[i-1] = P_i[RE]
    std::vector<double> ruin;   ///< ruin[i-1] = t_i = 1 - P_i[RE]

    double at(int site) const { return right[static_cast<std::size_t>(site - 1)]; }
};

struct SolverOptions {
    /// Cross-check against the dense fundamental-matrix oracle and throw
    /// NumericalCheckError on disagreement.
    bool verify_with_oracle = false;
    double oracle_tolerance = 1e-10;
};

ExitProbabilities exit_probabilities(const Lane& lane, const SolverOptions& options = {});

/// Conditioned (right-exit) observables of the walk started at site 1.
struct ResidenceReport {
    std::vector<double> local;  ///< local[i-1] = E_1[n_i | RE]
    double gamma = 0.0;         ///< sum of `local`, in order
    double duration_unconditioned = 0.0;

    double at(int site) const { return local[static_cast<std::size_t>(site - 1)]; }
};

ResidenceReport residence_report(const Lane& lane, const SolverOptions& options = {});

/// Everything the CLI reports for one lane.
struct LaneSolution {
    VisitProfile visits;
    ExitProbabilities exits;
    ResidenceReport residence;
};

LaneSolution solve_lane(const Lane& lane, const SolverOptions& options = {});

/// Unconditioned duration of the homogeneous driven walk from site 1:
/// 1/(q-p) - (L/(q-p)) (1 - q/p) / (1 - (q/p)^L). Rejects p = 1/2.
double duration_driven_check(double p, int L);

}  // namespace restime
