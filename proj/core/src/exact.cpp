#include "restime/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "logmath.hpp"
#include "restime/errors.hpp"
#include "restime/oracle.hpp"

namespace restime {
namespace {

using detail::kNegInf;
using detail::log_add;
using detail::softplus;

// Threshold for flagging disagreement between the product/sum closed form
// and the substitution result.
constexpr double kCrossPathTolerance = 1e-8;

struct LogVisits {
    std::vector<double> log_visits;  // log N_{1i}
    double log_current = 0.0;
};

// Current conservation read from the right boundary: with N_{1i} = c u_i,
// p_{L-1} u_{L-1} = 1 and p_i u_i - q_{i+1} u_{i+1} = 1, and the left
// boundary 1 - q_1 N_{11} = c fixes c = 1 / (1 + q_1 u_1). Every step adds
// positive terms, so the recursion is carried in log space.
LogVisits log_mean_visits(const Lane& lane) {
    const int n = lane.transient_count();
    std::vector<double> lu(static_cast<std::size_t>(n));
    lu[n - 1] = -std::log(lane.p(n));
    for (int i = n - 1; i >= 1; --i) {
        const double x = std::log(lane.q(i + 1)) + lu[i];
        lu[i - 1] = softplus(x) - std::log(lane.p(i));
    }
    const double log_c = -softplus(std::log(lane.q(1)) + lu[0]);
    for (double& v : lu) v += log_c;
    return {std::move(lu), log_c};
}

// Product/sum form: N_{1i} = H_i - c W_i with H_i = prod_{k<i} p_k / prod_{k<=i} q_k
// and W_i = sum_{s<i} prod_{s<k<i} p_k / prod_{s<k<=i} q_k, both accumulated
// as running quotients. c = H_{L-1} / (1/p_{L-1} + W_{L-1}).
std::vector<double> closed_form_visits(const Lane& lane, double& current) {
    const int n = lane.transient_count();
    std::vector<double> H(static_cast<std::size_t>(n)), W(static_cast<std::size_t>(n));
    H[0] = 1.0 / lane.q(1);
    W[0] = 1.0 / lane.q(1);
    for (int i = 1; i < n; ++i) {
        H[i] = H[i - 1] * lane.p(i) / lane.q(i + 1);
        W[i] = (lane.p(i) * W[i - 1] + 1.0) / lane.q(i + 1);
    }
    current = H[n - 1] / (1.0 / lane.p(n) + W[n - 1]);
    std::vector<double> N(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) N[i] = H[i] - current * W[i];
    return N;
}

struct LogExits {
    std::vector<double> log_right;  // log P_i[RE]
    std::vector<double> log_ruin;   // log t_i
};

// P_i[RE] = sum_{k<=i} g_k / sum_{k<=L} g_k with g_k = prod_{r=k}^{L-1} p_r/q_r
// and g_L = 1; t_i uses the complementary tail so neither side cancels.
LogExits log_exit_probabilities(const Lane& lane) {
    const int L = lane.length();
    std::vector<double> lg(static_cast<std::size_t>(L));  // lg[k-1] = log g_k
    lg[L - 1] = 0.0;
    for (int k = L - 1; k >= 1; --k) {
        lg[k - 1] = lg[k] + std::log(lane.p(k)) - std::log(lane.q(k));
    }
    std::vector<double> prefix(static_cast<std::size_t>(L));
    double acc = kNegInf;
    for (int k = 0; k < L; ++k) prefix[k] = acc = log_add(acc, lg[k]);
    std::vector<double> suffix(static_cast<std::size_t>(L + 1));
    suffix[L] = kNegInf;
    for (int k = L - 1; k >= 0; --k) suffix[k] = log_add(suffix[k + 1], lg[k]);
    const double log_total = prefix[L - 1];

    LogExits out;
    out.log_right.resize(static_cast<std::size_t>(L - 1));
    out.log_ruin.resize(static_cast<std::size_t>(L - 1));
    for (int i = 1; i <= L - 1; ++i) {
        out.log_right[i - 1] = prefix[i - 1] - log_total;
        out.log_ruin[i - 1] = suffix[i] - log_total;
    }
    return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

void verify(const char* what, const std::vector<double>& computed,
            const std::vector<double>& oracle, double tolerance) {
    const double scale = std::max(1.0, max_abs(oracle));
    const double diff = max_abs_diff(computed, oracle);
    if (!(diff <= tolerance * scale)) {
        throw NumericalCheckError(fmt::format(
            "{} disagrees with the linear-solve oracle: max |diff| = {:.3e} (tolerance {:.1e})",
            what, diff, tolerance * scale));
    }
}

std::vector<double> exp_all(const std::vector<double>& logs) {
    std::vector<double> v(logs.size());
    std::transform(logs.begin(), logs.end(), v.begin(), [](double x) { return std::exp(x); });
    return v;
}

ResidenceReport build_report(const LogVisits& lv, const LogExits& le) {
    ResidenceReport r;
    const std::size_t n = lv.log_visits.size();
    r.local.resize(n);
    const double log_p1 = le.log_right[0];
    for (std::size_t k = 0; k < n; ++k) {
        r.local[k] = std::exp(le.log_right[k] - log_p1 + lv.log_visits[k]);
    }
    r.gamma = 0.0;
    for (double v : r.local) r.gamma += v;
    r.duration_unconditioned = 0.0;
    for (double v : lv.log_visits) r.duration_unconditioned += std::exp(v);
    return r;
}

VisitProfile make_visit_profile(const Lane& lane, const LogVisits& lv) {
    VisitProfile out;
    out.visits = exp_all(lv.log_visits);
    out.current = std::exp(lv.log_current);

    double closed_current = 0.0;
    const std::vector<double> closed = closed_form_visits(lane, closed_current);
    const bool finite = std::isfinite(closed_current) &&
                        std::all_of(closed.begin(), closed.end(),
                                    [](double v) { return std::isfinite(v); });
    if (finite) {
        const double scale = max_abs(out.visits);
        out.closed_form_discrepancy = scale > 0.0 ? max_abs_diff(closed, out.visits) / scale
                                                  : max_abs_diff(closed, out.visits);
    } else {
        out.closed_form_discrepancy = std::numeric_limits<double>::infinity();
    }
    out.precision_warning = !(out.closed_form_discrepancy <= kCrossPathTolerance);
    return out;
}

}  // namespace

ThetaPhi theta_phi(const Lane& lane) {
    const int L = lane.length();
    ThetaPhi tp;
    // theta[k] = theta_{k-1}, k = 0..L
    tp.theta.assign(static_cast<std::size_t>(L + 1), 0.0);
    tp.theta[0] = 0.0;
    tp.theta[1] = 1.0;
    for (int i = 1; i <= L - 1; ++i) {
        const double coupling = i >= 2 ? lane.q(i) * lane.p(i - 1) : 0.0;
        tp.theta[i + 1] = tp.theta[i] - coupling * tp.theta[i - 1];
    }
    // phi[k] = phi_{k+1}, k = 0..L
    tp.phi.assign(static_cast<std::size_t>(L + 1), 0.0);
    tp.phi[L] = 0.0;
    tp.phi[L - 1] = 1.0;
    for (int i = L - 1; i >= 1; --i) {
        const double coupling = i + 1 <= L - 1 ? lane.q(i + 1) * lane.p(i) : 0.0;
        tp.phi[i - 1] = tp.phi[i] - coupling * tp.phi[i + 1];
    }
    return tp;
}

double usmani_identity_residual(const ThetaPhi& tp, const Lane& lane) {
    const int L = lane.length();
    const double det = tp.theta_at(L - 1);
    double worst = 0.0;
    for (int i = 1; i <= L - 1; ++i) {
        const double q_next = i + 1 <= L - 1 ? lane.q(i + 1) : 0.0;
        const double lhs =
            tp.theta_at(i) * tp.phi_at(i + 1) -
            q_next * lane.p(i) * tp.theta_at(i - 1) * tp.phi_at(i + 2);
        worst = std::max(worst, std::fabs(lhs - det));
    }
    return worst;
}

VisitProfile mean_visits(const Lane& lane) {
    return make_visit_profile(lane, log_mean_visits(lane));
}

ExitProbabilities exit_probabilities(const Lane& lane, const SolverOptions& options) {
    const LogExits le = log_exit_probabilities(lane);
    ExitProbabilities out{exp_all(le.log_right), exp_all(le.log_ruin)};
    if (options.verify_with_oracle) {
        verify("right-exit probabilities", out.right, right_exit_oracle(lane),
               options.oracle_tolerance);
    }
    return out;
}

ResidenceReport residence_report(const Lane& lane, const SolverOptions& options) {
    return solve_lane(lane, options).residence;
}

LaneSolution solve_lane(const Lane& lane, const SolverOptions& options) {
    const LogVisits lv = log_mean_visits(lane);
    const LogExits le = log_exit_probabilities(lane);
    LaneSolution s;
    s.visits = make_visit_profile(lane, lv);
    s.exits = ExitProbabilities{exp_all(le.log_right), exp_all(le.log_ruin)};
    s.residence = build_report(lv, le);
    if (options.verify_with_oracle) {
        verify("mean visit profile", s.visits.visits, fundamental_row_oracle(lane),
               options.oracle_tolerance);
        verify("right-exit probabilities", s.exits.right, right_exit_oracle(lane),
               options.oracle_tolerance);
    }
    return s;
}

double duration_driven_check(double p, int L) {
    const HomogeneousParams params(p);
    if (params.symmetric()) {
        throw ValidationError("driven duration formula needs p != 1/2; the symmetric value is L-1");
    }
    if (L < 2) throw ValidationError(fmt::format("lane length L={} must be at least 2", L));
    const double q = params.q();
    const double A = q / p;
    // (1 - A) / (1 - A^L), with A^L formed in log space to stay finite.
    const double log_AL = L * std::log(A);
    double ratio = 0.0;
    if (log_AL < 0.0) {
        ratio = (1.0 - A) / -std::expm1(log_AL);
    } else {
        // numerator and denominator divided by A^L
        ratio = std::exp(-log_AL) * (1.0 - A) / std::expm1(-log_AL);
    }
    return 1.0 / (q - p) - (L / (q - p)) * ratio;
}

}  // namespace restime
