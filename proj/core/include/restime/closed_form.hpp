#pragma once

#include <vector>

namespace restime::closed_form {

// Explicit formulas for a homogeneous lane with one static defect at site d
// (2 <= d <= L-2) carrying bias eps. Vector results are indexed by site - 1.

/// Symmetric background p = q = 1/2, eps in (-1/2, 1/2).
double symmetric_current(int L, int d, double eps);
std::vector<double> symmetric_visits(int L, int d, double eps);
double symmetric_exit_probability(int L, int d, double eps, int site);
std::vector<double> symmetric_local_residence(int L, int d, double eps);
double symmetric_gamma(int L, int d, double eps);

/// Driven background p != 1/2 with p + eps in (0, 1). All powers of
/// A = q/p are carried in log space, so L is limited only by the int range.
double driven_current(int L, int d, double eps, double p);
std::vector<double> driven_visits(int L, int d, double eps, double p);
/// Z = 1 + sum_k prod_{r>=k} p_r / q_r, the normalizer of the exit probabilities.
double driven_exit_normalizer(int L, int d, double eps, double p);
double driven_exit_probability(int L, int d, double eps, double p, int site);

/// Below this drift |p - q| the rational residence-time formula loses too
/// many digits; driven_gamma then evaluates the lane with the exact solver.
inline constexpr double kDriftDelegationThreshold = 1e-3;

bool driven_gamma_delegates(double p);
double driven_gamma(int L, int d, double eps, double p);

/// Residence time for any background: symmetric formula at p = 1/2, driven
/// formula otherwise (with the same delegation rule).
double static_defect_gamma(int L, int d, double eps, double p);

enum class Regime { symmetric, driven };

/// Gamma / (L^2 / 3) for the symmetric regime, Gamma |p - q| / L for the
/// driven one. Both tend to 1 as L grows.
double asymptotic_ratio(Regime regime, int L, int d, double eps, double p = 0.5);

}  // namespace restime::closed_form
