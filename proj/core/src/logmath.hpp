#pragma once

#include <cmath>
#include <limits>

namespace restime::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(1 + e^x) without overflow.
inline double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// log(e^a + e^b).
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

/// A real number stored as sign * exp(log_abs). Products and quotients never
/// overflow; sums cancel exactly as in ordinary floating point, but around
/// the larger operand instead of at an absolute scale.
class SignedLog {
public:
    SignedLog() = default;

    static SignedLog from_log(double log_abs, int sign = 1) {
        SignedLog s;
        s.log_abs_ = log_abs;
        s.sign_ = log_abs == kNegInf ? 0 : sign;
        return s;
    }

    // NOLINTNEXTLINE(google-explicit-constructor)
    SignedLog(double x) {
        if (x == 0.0) return;
        sign_ = x > 0.0 ? 1 : -1;
        log_abs_ = std::log(std::fabs(x));
    }

    double value() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_abs_); }
    double log_abs() const { return log_abs_; }
    int sign() const { return sign_; }

    friend SignedLog operator*(SignedLog a, SignedLog b) {
        return from_log(a.log_abs_ + b.log_abs_, a.sign_ * b.sign_);
    }
    friend SignedLog operator/(SignedLog a, SignedLog b) {
        return from_log(a.log_abs_ - b.log_abs_, a.sign_ * b.sign_);
    }
    friend SignedLog operator-(SignedLog a) { return from_log(a.log_abs_, -a.sign_); }
    friend SignedLog operator+(SignedLog a, SignedLog b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        if (a.log_abs_ < b.log_abs_) std::swap(a, b);
        const double r = std::exp(b.log_abs_ - a.log_abs_);
        if (a.sign_ == b.sign_) return from_log(a.log_abs_ + std::log1p(r), a.sign_);
        if (r == 1.0) return {};
        return from_log(a.log_abs_ + std::log1p(-r), a.sign_);
    }
    friend SignedLog operator-(SignedLog a, SignedLog b) { return a + (-b); }

    /// base^k for base > 0.
    static SignedLog power(double base, double k) { return from_log(k * std::log(base)); }

private:
    double log_abs_ = kNegInf;
    int sign_ = 0;
};

}  // namespace restime::detail
