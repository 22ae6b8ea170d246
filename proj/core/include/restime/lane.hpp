#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace restime {

/// How a lane length was supplied by the caller. Sites are always 0..L with
/// 0 and L absorbing; `transient` means the caller gave n = L - 1.
enum class LengthConvention { boundary, transient };

std::string_view to_string(LengthConvention convention);

/// Right absorbing index L together with the convention it was given in.
struct LengthSpec {
    int boundary_index = 2;
    LengthConvention given = LengthConvention::boundary;

    static LengthSpec from_length(int L);
    static LengthSpec from_transient(int n);

    int transient_sites() const { return boundary_index - 1; }
};

/// Homogeneous background hop probabilities: p to the right, q = 1 - p left.
class HomogeneousParams {
public:
    explicit HomogeneousParams(double p);

    double p() const { return p_; }
    double q() const { return 1.0 - p_; }
    double drift() const { return p_ - q(); }
    /// A = q / p.
    double ratio() const { return q() / p_; }
    bool symmetric() const { return p_ == 0.5; }

    bool operator==(const HomogeneousParams&) const = default;

private:
    double p_;
};

/// A birth-death walk on {0, ..., L}: transient sites 1..L-1 hop right with
/// probability p_i and left with q_i = 1 - p_i. Only p_i is stored.
///
/// Instances are immutable and always valid: 0 < p_i < 1 for every site.
class Lane {
public:
    /// `p[k]` is the right-hop probability of site k + 1; L = p.size() + 1.
    static Lane from_right_probabilities(std::vector<double> p);

    /// Index of the right absorbing site.
    int length() const { return static_cast<int>(p_.size()) + 1; }
    int transient_count() const { return static_cast<int>(p_.size()); }

    /// Hop probabilities of transient site `site` in 1..L-1 (unchecked).
    double p(int site) const { return p_[static_cast<std::size_t>(site - 1)]; }
    double q(int site) const { return 1.0 - p_[static_cast<std::size_t>(site - 1)]; }

    std::span<const double> right_probabilities() const { return p_; }

    bool operator==(const Lane&) const = default;

private:
    explicit Lane(std::vector<double> p) : p_(std::move(p)) {}

    std::vector<double> p_;
};

Lane make_homogeneous_lane(int L, double p);

/// Single perturbed site: p_d -> p_d + bias, q_d -> q_d - bias.
struct StaticDefect {
    int site = 2;
    double bias = 0.0;
};

/// Returns a copy of `lane` with the defect applied. Requires
/// 2 <= site <= L-2 and a perturbed p_site strictly inside (0, 1).
Lane apply_static_defect(const Lane& lane, StaticDefect defect);

/// `{ "L": int, "p": [p_1, ..., p_{L-1}] }`
std::string lane_to_json(const Lane& lane);
Lane lane_from_json(std::string_view text);

}  // namespace restime
