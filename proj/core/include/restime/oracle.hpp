#pragma once

#include <vector>

#include "restime/lane.hpp"

namespace restime {

/// Largest lane accepted by the linear-solve oracles.
inline constexpr int kOracleMaxLength = 10'000;

/// First row of N = (I - Q)^{-1} from an LU solve of (I - Q)^T x = e_1.
/// Dense LU up to 2000 transient sites, sparse LU above.
std::vector<double> fundamental_row_oracle(const Lane& lane);

/// P_i[RE] = N_{i,L-1} p_{L-1} from an LU solve of (I - Q) x = e_{L-1}.
std::vector<double> right_exit_oracle(const Lane& lane);

}  // namespace restime
