#include "restime/dynamics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "restime/errors.hpp"

namespace restime {
namespace {

void check_site(int site, int L) {
    if (site < 2 || site > L - 2) {
        throw ValidationError(fmt::format("defect site d={} outside [2, L-2] for L={}", site, L));
    }
}

void check_bias(double bias) {
    if (!std::isfinite(bias) || bias <= -1.0 || bias >= 1.0) {
        throw BiasOutOfRange(fmt::format("bias {} outside (-1, 1)", bias));
    }
}

}  // namespace

void validate_dynamics(const DefectDynamics& dynamics, int L) {
    struct Visitor {
        int L;
        void operator()(const StaticDefect& d) const {
            check_site(d.site, L);
            check_bias(d.bias);
        }
        void operator()(const IntermittentDefect& d) const {
            check_site(d.site, L);
            check_bias(d.bias);
            if (!(d.activity >= 0.0 && d.activity <= 1.0)) {
                throw ValidationError(fmt::format("activity psi={} not in [0, 1]", d.activity));
            }
        }
        void operator()(const RenewalDefect& d) const {
            check_site(d.site, L);
            check_bias(d.bias);
            if (!(d.lambda_attached > 0.0) || !(d.lambda_detached > 0.0) ||
                !std::isfinite(d.lambda_attached) || !std::isfinite(d.lambda_detached)) {
                throw ValidationError(fmt::format("renewal means lambda_A={}, lambda_D={} must be > 0",
                                                  d.lambda_attached, d.lambda_detached));
            }
        }
        void operator()(const UniformMovingDefect& d) const {
            if (L < 2) throw ValidationError("lane length must be at least 2");
            check_bias(d.bias);
        }
        void operator()(const TriangularMovingDefect& d) const {
            check_bias(d.bias);
            if (d.spread < 0) throw ValidationError(fmt::format("spread a={} < 0", d.spread));
            if (d.site - d.spread < 2 || d.site + d.spread > L - 2) {
                throw ValidationError(fmt::format(
                    "triangular support [{}, {}] not inside [2, L-2] for L={}",
                    d.site - d.spread, d.site + d.spread, L));
            }
        }
    };
    std::visit(Visitor{L}, dynamics);
}

std::string_view model_name(const DefectDynamics& dynamics) {
    static constexpr std::string_view names[] = {"static", "a", "b", "c", "d"};
    return names[dynamics.index()];
}

double defect_bias(const DefectDynamics& dynamics) {
    return std::visit([](const auto& d) { return d.bias; }, dynamics);
}

}  // namespace restime
