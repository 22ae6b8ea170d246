#include "restime/defect_models.hpp"

#include <cstdlib>

#include <fmt/format.h>

#include "restime/errors.hpp"

namespace restime {
namespace {

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

Lane with_site_biases(const HomogeneousParams& base, int L, int first_site,
                      const std::vector<double>& bias) {
    std::vector<double> p(static_cast<std::size_t>(L - 1), base.p());
    for (std::size_t k = 0; k < bias.size(); ++k) {
        const int site = first_site + static_cast<int>(k);
        double& v = p[static_cast<std::size_t>(site - 1)];
        v += bias[k];
        if (!open_unit(v)) {
            throw BiasOutOfRange(
                fmt::format("effective p_{} = {} outside (0, 1)", site, v));
        }
    }
    return Lane::from_right_probabilities(std::move(p));
}

}  // namespace

double TriangularWeights::at(int site) const {
    if (site < first_site || site > last_site()) return 0.0;
    return beta[static_cast<std::size_t>(site - first_site)];
}

TriangularWeights triangular_weights(int d, int a) {
    if (a < 0) throw ValidationError(fmt::format("spread a={} < 0", a));
    TriangularWeights w;
    w.first_site = d - a;
    w.beta.resize(static_cast<std::size_t>(2 * a + 1));
    // sum_{k=-a}^{a} (a + 1 - |k|) = (a + 1)^2
    const double norm = static_cast<double>(a + 1) * static_cast<double>(a + 1);
    for (int k = -a; k <= a; ++k) {
        w.beta[static_cast<std::size_t>(k + a)] = (a + 1 - std::abs(k)) / norm;
    }
    return w;
}

Lane effective_lane(const HomogeneousParams& base, int L, const DefectDynamics& dynamics) {
    validate_dynamics(dynamics, L);
    struct Visitor {
        const HomogeneousParams& base;
        int L;
        Lane operator()(const StaticDefect& d) const {
            return with_site_biases(base, L, d.site, {d.bias});
        }
        Lane operator()(const IntermittentDefect& d) const {
            return with_site_biases(base, L, d.site, {d.activity * d.bias});
        }
        Lane operator()(const RenewalDefect& d) const {
            const double share = d.lambda_attached / (d.lambda_attached + d.lambda_detached);
            return with_site_biases(base, L, d.site, {share * d.bias});
        }
        Lane operator()(const UniformMovingDefect& d) const {
            return with_site_biases(
                base, L, 1, std::vector<double>(static_cast<std::size_t>(L - 1), d.bias / L));
        }
        Lane operator()(const TriangularMovingDefect& d) const {
            const TriangularWeights w = triangular_weights(d.site, d.spread);
            std::vector<double> bias(w.beta.size());
            for (std::size_t k = 0; k < bias.size(); ++k) bias[k] = w.beta[k] * d.bias;
            return with_site_biases(base, L, w.first_site, bias);
        }
    };
    return std::visit(Visitor{base, L}, dynamics);
}

}  // namespace restime
