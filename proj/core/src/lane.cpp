#include "restime/lane.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "restime/errors.hpp"

namespace restime {
namespace {

bool open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

}  // namespace

std::string_view to_string(LengthConvention convention) {
    return convention == LengthConvention::boundary ? "length" : "transient";
}

LengthSpec LengthSpec::from_length(int L) {
    if (L < 2) throw ValidationError(fmt::format("lane length L={} must be at least 2", L));
    return {L, LengthConvention::boundary};
}

LengthSpec LengthSpec::from_transient(int n) {
    if (n < 1) throw ValidationError(fmt::format("transient site count {} must be at least 1", n));
    return {n + 1, LengthConvention::transient};
}

HomogeneousParams::HomogeneousParams(double p) : p_(p) {
    if (!open_unit(p)) throw ValidationError(fmt::format("hop probability p={} not in (0, 1)", p));
}

Lane Lane::from_right_probabilities(std::vector<double> p) {
    if (p.empty()) throw ValidationError("a lane needs at least one transient site (L >= 2)");
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!open_unit(p[k])) {
            throw ValidationError(
                fmt::format("right-hop probability p_{}={} not in (0, 1)", k + 1, p[k]));
        }
    }
    return Lane(std::move(p));
}

Lane make_homogeneous_lane(int L, double p) {
    if (L < 2) throw ValidationError(fmt::format("lane length L={} must be at least 2", L));
    HomogeneousParams params(p);
    return Lane::from_right_probabilities(
        std::vector<double>(static_cast<std::size_t>(L - 1), params.p()));
}

Lane apply_static_defect(const Lane& lane, StaticDefect defect) {
    const int L = lane.length();
    if (defect.site < 2 || defect.site > L - 2) {
        throw ValidationError(
            fmt::format("defect site d={} outside [2, L-2] for L={}", defect.site, L));
    }
    if (!std::isfinite(defect.bias)) throw ValidationError("defect bias must be finite");
    std::vector<double> p(lane.right_probabilities().begin(), lane.right_probabilities().end());
    const double perturbed = p[static_cast<std::size_t>(defect.site - 1)] + defect.bias;
    if (!open_unit(perturbed)) {
        throw BiasOutOfRange(fmt::format("bias {} moves p_{} to {}, outside (0, 1)", defect.bias,
                                         defect.site, perturbed));
    }
    p[static_cast<std::size_t>(defect.site - 1)] = perturbed;
    return Lane::from_right_probabilities(std::move(p));
}

std::string lane_to_json(const Lane& lane) {
    nlohmann::json j;
    j["L"] = lane.length();
    j["p"] = std::vector<double>(lane.right_probabilities().begin(),
                                 lane.right_probabilities().end());
    return j.dump();
}

Lane lane_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(fmt::format("lane JSON does not parse: {}", e.what()));
    }
    if (!j.is_object() || !j.contains("L") || !j.contains("p") || !j["L"].is_number_integer() ||
        !j["p"].is_array()) {
        throw ValidationError(R"(lane JSON must look like {"L": int, "p": [floats]})");
    }
    const int L = j["L"].get<int>();
    std::vector<double> p;
    for (const auto& v : j["p"]) {
        if (!v.is_number()) throw ValidationError("lane JSON: p entries must be numbers");
        p.push_back(v.get<double>());
    }
    if (static_cast<int>(p.size()) != L - 1) {
        throw ValidationError(
            fmt::format("lane JSON: L={} needs {} probabilities, got {}", L, L - 1, p.size()));
    }
    return Lane::from_right_probabilities(std::move(p));
}

}  // namespace restime
