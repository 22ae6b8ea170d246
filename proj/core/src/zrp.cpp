#include "restime/zrp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "restime/closed_form.hpp"
#include "restime/errors.hpp"

namespace restime {

namespace {
constexpr int kRefinementPasses = 3;
}  // namespace

ZrpProfile zrp_stationary(const Lane& lane, double alpha_in, double delta_in) {
    if (!(alpha_in >= 0.0) || !(delta_in >= 0.0) || !std::isfinite(alpha_in) ||
        !std::isfinite(delta_in)) {
        throw ValidationError(
            fmt::format("injection rates must be finite and >= 0, got alpha={}, delta={}", alpha_in,
                        delta_in));
    }
    const int n = lane.transient_count();
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(3 * n));
    for (int i = 1; i <= n; ++i) {
        entries.emplace_back(i - 1, i - 1, 1.0);
        if (i > 1) entries.emplace_back(i - 1, i - 2, -lane.p(i - 1));
        if (i < n) entries.emplace_back(i - 1, i, -lane.q(i + 1));
    }
    Eigen::SparseMatrix<double> balance(n, n);
    balance.setFromTriplets(entries.begin(), entries.end());

    Eigen::VectorXd source = Eigen::VectorXd::Zero(n);
    source(0) += alpha_in;
    source(n - 1) += delta_in;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(balance);
    if (lu.info() != Eigen::Success) throw NumericalCheckError("balance system is singular");
    Eigen::VectorXd rho = lu.solve(source);
    // Iterative refinement. The residual is accumulated in long double with q
    // formed there too: rounding q = 1 - p in double alone costs ~1e-11 on
    // badly conditioned lanes.
    for (int pass = 0; pass < kRefinementPasses; ++pass) {
        Eigen::VectorXd residual(n);
        for (int i = 1; i <= n; ++i) {
            long double r = static_cast<long double>(source(i - 1)) - rho(i - 1);
            if (i > 1) r += static_cast<long double>(lane.p(i - 1)) * rho(i - 2);
            if (i < n) r += (1.0L - lane.p(i + 1)) * rho(i);
            residual(i - 1) = static_cast<double>(r);
        }
        rho += lu.solve(residual);
    }

    ZrpProfile out;
    out.rho.assign(rho.data(), rho.data() + rho.size());
    out.alpha_in = alpha_in;
    out.delta_in = delta_in;
    return out;
}

double zrp_central_defect_discrepancy(int R, double eps) {
    if (R < 1) throw ValidationError(fmt::format("R={} must be at least 1", R));
    const int L = 2 * R + 2;
    const int d = R + 1;
    const Lane lane = apply_static_defect(make_homogeneous_lane(L, 0.5), {d, eps});
    const std::vector<double> rho = zrp_stationary(lane, 1.0, 0.0).rho;
    const std::vector<double> visits = closed_form::symmetric_visits(L, d, eps);
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        diff = std::max(diff, std::fabs(rho[k] - visits[k]));
        scale = std::max(scale, std::fabs(visits[k]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

bool zrp_central_defect_check(int R, double eps, double tolerance) {
    return zrp_central_defect_discrepancy(R, eps) < tolerance;
}

}  // namespace restime
