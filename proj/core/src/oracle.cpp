#include "restime/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "restime/errors.hpp"

namespace restime {
namespace {

constexpr int kDenseLimit = 2000;

void check_size(const Lane& lane) {
    if (lane.length() > kOracleMaxLength) {
        throw ValidationError(fmt::format("oracle limited to L <= {}, got L={}", kOracleMaxLength,
                                          lane.length()));
    }
}

// Solves (I - Q) x = rhs, or (I - Q)^T x = rhs when `transpose` is set.
Eigen::VectorXd solve_fundamental(const Lane& lane, const Eigen::VectorXd& rhs, bool transpose) {
    const int n = lane.transient_count();
    auto entry = [&](int row, int col) -> double {
        // rows/cols are 0-based transient sites
        if (row == col) return 1.0;
        if (col == row + 1) return -lane.p(row + 1);
        if (col == row - 1) return -lane.q(row + 1);
        return 0.0;
    };
    if (n <= kDenseLimit) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = std::max(0, r - 1); c <= std::min(n - 1, r + 1); ++c) {
                m(r, c) = transpose ? entry(c, r) : entry(r, c);
            }
        }
        return m.partialPivLu().solve(rhs);
    }
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(3 * n));
    for (int r = 0; r < n; ++r) {
        for (int c = std::max(0, r - 1); c <= std::min(n - 1, r + 1); ++c) {
            triplets.emplace_back(r, c, transpose ? entry(c, r) : entry(r, c));
        }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) throw NumericalCheckError("oracle factorization failed");
    return lu.solve(rhs);
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

}  // namespace

std::vector<double> fundamental_row_oracle(const Lane& lane) {
    check_size(lane);
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(lane.transient_count());
    e1(0) = 1.0;
    return to_vector(solve_fundamental(lane, e1, /*transpose=*/true));
}

std::vector<double> right_exit_oracle(const Lane& lane) {
    check_size(lane);
    const int n = lane.transient_count();
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    r(n - 1) = lane.p(n);
    return to_vector(solve_fundamental(lane, r, /*transpose=*/false));
}

}  // namespace restime
