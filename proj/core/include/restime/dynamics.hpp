#pragma once

#include <string_view>
#include <variant>

#include "restime/lane.hpp"

namespace restime {

/// Model A: the defect at `site` is active independently with probability
/// `activity` at every step.
struct IntermittentDefect {
    int site = 2;
    double bias = 0.0;
    double activity = 1.0;
};

/// Model B: the defect at `site` alternates attached/detached phases whose
/// lengths are Poisson distributed with means `lambda_attached` and
/// `lambda_detached`.
struct RenewalDefect {
    int site = 2;
    double bias = 0.0;
    double lambda_attached = 1.0;
    double lambda_detached = 1.0;
};

/// Model C: the defect position is resampled uniformly at every step.
struct UniformMovingDefect {
    double bias = 0.0;
};

/// Model D: the defect position is resampled at every step from a discrete
/// triangle with mode `site` and support [site - spread, site + spread].
struct TriangularMovingDefect {
    int site = 2;
    double bias = 0.0;
    int spread = 0;
};

using DefectDynamics = std::variant<StaticDefect, IntermittentDefect, RenewalDefect,
                                    UniformMovingDefect, TriangularMovingDefect>;

/// Checks the per-variant structural bounds against a lane of right index L.
/// Hop-probability ranges are checked where a background is known.
void validate_dynamics(const DefectDynamics& dynamics, int L);

/// "static", "a", "b", "c" or "d".
std::string_view model_name(const DefectDynamics& dynamics);

double defect_bias(const DefectDynamics& dynamics);

}  // namespace restime
