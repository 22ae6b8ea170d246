#include "restime/closed_form.hpp"

#include <cmath>

#include <fmt/format.h>

#include "logmath.hpp"
#include "restime/errors.hpp"
#include "restime/exact.hpp"
#include "restime/lane.hpp"

namespace restime::closed_form {
namespace {

using detail::SignedLog;

void check_geometry(int L, int d) {
    if (L < 4) throw ValidationError(fmt::format("a static defect needs L >= 4, got L={}", L));
    if (d < 2 || d > L - 2) {
        throw ValidationError(fmt::format("defect site d={} outside [2, L-2] for L={}", d, L));
    }
}

void check_symmetric(int L, int d, double eps) {
    check_geometry(L, d);
    if (!(eps > -0.5 && eps < 0.5)) {
        throw BiasOutOfRange(fmt::format("symmetric bias eps={} not in (-1/2, 1/2)", eps));
    }
}

void check_site(int L, int site) {
    if (site < 1 || site > L - 1) {
        throw ValidationError(fmt::format("site {} outside the transient range [1, {}]", site, L - 1));
    }
}

// Shared quantities of the driven single-defect lane.
struct Driven {
    int L;
    int d;
    double eps;
    double p, q;
    double p_bar, q_bar;
    double log_A;      // log(q/p)
    double A_bar;      // q_bar / p_bar

    Driven(int L_, int d_, double eps_, double p_) : L(L_), d(d_), eps(eps_), p(p_) {
        check_geometry(L, d);
        const HomogeneousParams base(p);
        if (base.symmetric()) {
            throw ValidationError("driven formulas need p != 1/2; use the symmetric ones");
        }
        q = base.q();
        p_bar = p + eps;
        q_bar = q - eps;
        if (!(p_bar > 0.0 && p_bar < 1.0)) {
            throw BiasOutOfRange(fmt::format("bias {} moves p={} to {}, outside (0, 1)", eps, p, p_bar));
        }
        log_A = std::log(q / p);
        A_bar = q_bar / p_bar;
    }

    bool A_above_one() const { return log_A > 0.0; }

    SignedLog pow_A(double k) const { return SignedLog::from_log(k * log_A); }

    // G(k) = (A^k - 1) / (A - 1) = 1 + A + ... + A^{k-1} > 0.
    SignedLog geometric(int k) const {
        if (k <= 0) return {};
        if (log_A > 0.0) {
            return SignedLog::from_log(k * log_A + std::log(-std::expm1(-k * log_A)) -
                                       std::log(std::expm1(log_A)));
        }
        return SignedLog::from_log(std::log(-std::expm1(k * log_A)) - std::log(-std::expm1(log_A)));
    }

    // T = A^{3-L} / (A_bar q), the front factor of the current.
    SignedLog front() const { return pow_A(3 - L) / SignedLog(A_bar * q); }

    // Z = 1 + sum_{k<L} g_k. Sites k <= d carry the defect factor A / A_bar,
    // so the first block is A^{2-L} G(d) / A_bar.
    SignedLog exit_normalizer() const {
        return SignedLog(1.0) + pow_A(2 - L) / SignedLog(A_bar) * geometric(d) +
               pow_A(d + 1 - L) * geometric(L - d - 1);
    }

    // Bracket of the current: 1/p + T G(d) + A^{2-L+d} G(L-1-d) / q.
    SignedLog current_denominator() const {
        return SignedLog(1.0 / p) + front() * geometric(d) +
               pow_A(2 - L + d) * geometric(L - 1 - d) / SignedLog(q);
    }
};

}  // namespace

double symmetric_current(int L, int d, double eps) {
    check_symmetric(L, d, eps);
    return (1.0 + 2.0 * eps) / (L * (1.0 - 2.0 * eps) + 4.0 * eps * d);
}

std::vector<double> symmetric_visits(int L, int d, double eps) {
    const double c = symmetric_current(L, d, eps);
    std::vector<double> N(static_cast<std::size_t>(L - 1));
    for (int i = 1; i <= L - 1; ++i) {
        double v = 0.0;
        if (i < d) {
            v = 2.0 - 2.0 * c * i;
        } else if (i == d) {
            v = 2.0 / (1.0 - 2.0 * eps) * (1.0 - c * d);
        } else {
            v = 2.0 * (1.0 + 2.0 * eps) / (1.0 - 2.0 * eps) - c * 8.0 * eps * d / (1.0 - 2.0 * eps) -
                2.0 * c * i;
        }
        N[i - 1] = v;
    }
    return N;
}

double symmetric_exit_probability(int L, int d, double eps, int site) {
    check_symmetric(L, d, eps);
    check_site(L, site);
    const double denom = L * (1.0 - 2.0 * eps) + 4.0 * eps * d;
    if (site <= d) return (1.0 + 2.0 * eps) * site / denom;
    return ((1.0 - 2.0 * eps) * site + 4.0 * eps * d) / denom;
}

std::vector<double> symmetric_local_residence(int L, int d, double eps) {
    const double c = symmetric_current(L, d, eps);
    std::vector<double> local(static_cast<std::size_t>(L - 1));
    for (int i = 1; i <= L - 1; ++i) {
        double v = 0.0;
        if (i < d) {
            v = 2.0 * i - 2.0 * c * i * i;
        } else if (i == d) {
            v = 2.0 * d / (1.0 - 2.0 * eps) * (1.0 - c * d);
        } else {
            const double visits = 2.0 * (1.0 + 2.0 * eps) / (1.0 - 2.0 * eps) -
                                  c * 8.0 * eps * d / (1.0 - 2.0 * eps) - 2.0 * c * i;
            v = ((1.0 - 2.0 * eps) * i + 4.0 * eps * d) / (1.0 + 2.0 * eps) * visits;
        }
        local[i - 1] = v;
    }
    return local;
}

double symmetric_gamma(int L, int d, double eps) {
    check_symmetric(L, d, eps);
    const double l = L;
    const double s = d;
    const double num = l * l * l * (1.0 - 2.0 * eps) + 12.0 * s * eps * l * l -
                       l * (1.0 + 24.0 * s * s * eps - 2.0 * eps) + 16.0 * s * s * s * eps -
                       4.0 * s * eps;
    return num / (3.0 * (l * (1.0 - 2.0 * eps) + 4.0 * eps * s));
}

double driven_current(int L, int d, double eps, double p) {
    const Driven w(L, d, eps, p);
    return (w.front() / w.current_denominator()).value();
}

// The i <= d branches are 1 - c G(i) times a front factor. For A < 1 that
// difference is exponentially small and is rewritten, using the current's
// own bracket, as a sum without cancellation. The i > d branch reduces to
// A^{3-i} (A^{i-L} - 1) / (A_bar p q den (1 - A)) for either sign of drift.
std::vector<double> driven_visits(int L, int d, double eps, double p) {
    const Driven w(L, d, eps, p);
    const SignedLog den = w.current_denominator();
    const SignedLog c = w.front() / den;
    const SignedLog one_minus_A(-std::expm1(w.log_A));

    std::vector<double> N(static_cast<std::size_t>(L - 1));
    for (int i = 1; i <= L - 1; ++i) {
        SignedLog v;
        if (i <= d) {
            const double q_here = i < d ? w.q : w.q_bar;
            if (w.A_above_one()) {
                v = w.pow_A(1 - i) / SignedLog(q_here) * (SignedLog(1.0) - c * w.geometric(i));
            } else {
                const SignedLog inner =
                    w.pow_A(1 + i) - SignedLog(eps / (w.p * w.p_bar)) * w.pow_A(d);
                const SignedLog bracket =
                    (w.pow_A(2 - L) / SignedLog(w.A_bar * w.q) * inner -
                     SignedLog(w.q / (w.p * w.p))) /
                    den;
                v = w.pow_A(1 - i) / SignedLog(q_here) * bracket / one_minus_A;
            }
        } else {
            // A^{i-L} - 1, kept in log form since A^{i-L} overflows for A < 1
            const double x = (i - L) * w.log_A;
            const SignedLog tail = x > 0.0 ? SignedLog::from_log(x + std::log(-std::expm1(-x)))
                                           : SignedLog(std::expm1(x));
            v = w.pow_A(3 - i) * tail / (SignedLog(w.A_bar * w.p * w.q) * den * one_minus_A);
        }
        N[i - 1] = v.value();
    }
    return N;
}

double driven_exit_normalizer(int L, int d, double eps, double p) {
    const Driven w(L, d, eps, p);
    return w.exit_normalizer().value();
}

double driven_exit_probability(int L, int d, double eps, double p, int site) {
    const Driven w(L, d, eps, p);
    check_site(L, site);
    const SignedLog z = w.exit_normalizer();
    SignedLog bracket;
    if (site <= d) {
        bracket = w.geometric(site) / SignedLog(w.A_bar);
    } else {
        bracket = w.geometric(d) / SignedLog(w.A_bar) + w.pow_A(d - 1) * w.geometric(site - d);
    }
    return (w.pow_A(2 - L) * bracket / z).value();
}

bool driven_gamma_delegates(double p) {
    return std::fabs(2.0 * p - 1.0) < kDriftDelegationThreshold;
}

double driven_gamma(int L, int d, double eps, double p) {
    const Driven w(L, d, eps, p);
    if (driven_gamma_delegates(p)) {
        const Lane lane = apply_static_defect(make_homogeneous_lane(L, p), {d, eps});
        return residence_report(lane).gamma;
    }
    const double q = w.q;
    const double l = L;
    const double s = d;
    const SignedLog AL = w.pow_A(L);
    const SignedLog Ad = w.pow_A(d);
    const SignedLog A2d = w.pow_A(2 * d);
    const SignedLog e(eps);
    const SignedLog pq(p * q);

    const SignedLog den = SignedLog((p - q) * (p - q)) *
                          (-pq + pq * AL - SignedLog(q * eps) - SignedLog(p) * AL * e + Ad * e);

    const SignedLog inner =
        SignedLog(p * q * (p - l * p + q + l * q)) + SignedLog(q * (3.0 * p - l * p + q + l * q) * eps) -
        SignedLog(p) * AL *
            SignedLog((1.0 + l) * p * (q - eps) + q * (q - l * q + (l - 3.0) * eps));
    const SignedLog num =
        -SignedLog(2.0 * p * q) * AL * e -
        A2d * SignedLog((1.0 + 2.0 * s - l) * p * p + 4.0 * p * q + (1.0 - 2.0 * s + l) * q * q) * e +
        Ad * inner;
    return (num / den / Ad).value();
}

double static_defect_gamma(int L, int d, double eps, double p) {
    if (p == 0.5) return symmetric_gamma(L, d, eps);
    return driven_gamma(L, d, eps, p);
}

double asymptotic_ratio(Regime regime, int L, int d, double eps, double p) {
    if (regime == Regime::symmetric) {
        const double l = L;
        return symmetric_gamma(L, d, eps) / (l * l / 3.0);
    }
    return driven_gamma(L, d, eps, p) * std::fabs(2.0 * p - 1.0) / L;
}

}  // namespace restime::closed_form
