#pragma once

#include <array>
#include <vector>

#include "restime/errors.hpp"
#include "restime/lane.hpp"

namespace restime {

/// Static-defect setting shared by the I_pas routines.
struct IpasSetting {
    int L = 102;
    int d = 51;
    HomogeneousParams base{0.55};
};

struct IpasPoint {
    double phi = 0.0;
    double ipas = 1.0;
};

/// Gamma without defect over Gamma with a static defect eps at d.
double ipas(const IpasSetting& setting, double eps);

/// The bias giving a target ratio, found by bracketed root finding on
/// (-p, q). Throws ValidationError when the target is out of reach.
double eps_for_ipas(const IpasSetting& setting, double target);

/// a_bar phi^alpha / (phi^alpha + c) - b_bar.
double eps_of_phi(double phi, double a_bar, double b_bar, double alpha, double c_fit);

struct FitResult {
    double a_bar = 0.0;
    double b_bar = 0.0;
    double alpha = 0.0;
    double c_fit = 0.0;
    double rss = 0.0;
    int iterations = 0;
    /// The extremes carry no bias (a_bar = 0); (alpha, c) are then arbitrary.
    bool degenerate = false;
};

struct FitOptions {
    std::array<double, 2> start{4.0, 1.0};  ///< initial (alpha, c)
    std::array<double, 2> step{1.0, 0.25};  ///< initial simplex offsets
    double diameter_tolerance = 1e-8;
    int max_iterations = 10000;
};

class FitConvergenceError : public ConvergenceError {
public:
    FitConvergenceError(const std::string& what, FitResult best)
        : ConvergenceError(what), best_(best) {}

    const FitResult& best() const noexcept { return best_; }

private:
    FitResult best_;
};

/// Fits (alpha, c) by Nelder-Mead on the squared I_pas residuals. For every
/// candidate (alpha, c) the offsets are pinned so the curve passes exactly
/// through the first and last data points (in phi order): with
/// s_k = phi_k^alpha / (phi_k^alpha + c) and e_k the bias reproducing
/// ipas_k,
///   a_bar = (e_last - e_first) / (s_last - s_first),
///   b_bar = a_bar s_first - e_first.
/// When the extremes are saturated (s_first = 0, s_last = 1) this is
/// b_bar = -e_first and a_bar = e_last + b_bar.
FitResult fit_ipas(std::vector<IpasPoint> data, const IpasSetting& setting,
                   const FitOptions& options = {});

struct ScanRow {
    int position = 0;  ///< defect site d, or spread a for Model D scans
    double gamma = 0.0;
};

/// Gamma of a static defect at every d in [d_first, d_last].
std::vector<ScanRow> scan_defect_position(const HomogeneousParams& base, double eps, int L,
                                          int d_first, int d_last);

/// Gamma of Model D with mode d for every spread a in [a_first, a_last].
std::vector<ScanRow> scan_spread(const HomogeneousParams& base, double eps, int L, int d,
                                 int a_first, int a_last);

/// Gamma of the homogeneous lane without a defect.
double baseline_gamma(const HomogeneousParams& base, int L);

}  // namespace restime
