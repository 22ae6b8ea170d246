#include "restime/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "restime/closed_form.hpp"
#include "restime/defect_models.hpp"
#include "restime/dynamics.hpp"
#include "restime/exact.hpp"

namespace restime {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::array<double, 2>;

double distance(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

struct Simplex {
    std::array<Point, 3> x;
    std::array<double, 3> f;

    void order() {
        std::array<int, 3> idx{0, 1, 2};
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        const auto x0 = x;
        const auto f0 = f;
        for (int k = 0; k < 3; ++k) {
            x[k] = x0[idx[k]];
            f[k] = f0[idx[k]];
        }
    }

    double diameter() const {
        return std::max({distance(x[0], x[1]), distance(x[0], x[2]), distance(x[1], x[2])});
    }
};

Point along(const Point& from, const Point& to, double t) {
    return {from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])};
}

struct Minimum {
    Point x;
    double f;
    int iterations;
    bool converged;
};

// Nelder-Mead in two dimensions: reflection 1, expansion 2, contraction 1/2,
// shrink 1/2.
template <class F>
Minimum nelder_mead(F&& objective, const FitOptions& opt) {
    Simplex s;
    s.x[0] = opt.start;
    s.x[1] = {opt.start[0] + opt.step[0], opt.start[1]};
    s.x[2] = {opt.start[0], opt.start[1] + opt.step[1]};
    for (int k = 0; k < 3; ++k) s.f[k] = objective(s.x[k]);

    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        s.order();
        if (s.diameter() < opt.diameter_tolerance) return {s.x[0], s.f[0], it, true};
        const Point centroid = along(s.x[0], s.x[1], 0.5);
        const Point xr = along(centroid, s.x[2], -1.0);
        const double fr = objective(xr);
        if (fr < s.f[0]) {
            const Point xe = along(centroid, s.x[2], -2.0);
            const double fe = objective(xe);
            if (fe < fr) {
                s.x[2] = xe;
                s.f[2] = fe;
            } else {
                s.x[2] = xr;
                s.f[2] = fr;
            }
            continue;
        }
        if (fr < s.f[1]) {
            s.x[2] = xr;
            s.f[2] = fr;
            continue;
        }
        const bool outside = fr < s.f[2];
        const Point xc = outside ? along(centroid, xr, 0.5) : along(centroid, s.x[2], 0.5);
        const double fc = objective(xc);
        if (outside ? fc <= fr : fc < s.f[2]) {
            s.x[2] = xc;
            s.f[2] = fc;
            continue;
        }
        for (int k = 1; k < 3; ++k) {
            s.x[k] = along(s.x[0], s.x[k], 0.5);
            s.f[k] = objective(s.x[k]);
        }
    }
    s.order();
    return {s.x[0], s.f[0], it, s.diameter() < opt.diameter_tolerance};
}

double saturation(double phi, double alpha, double c) {
    const double t = std::pow(phi, alpha);
    return t / (t + c);
}

}  // namespace

double baseline_gamma(const HomogeneousParams& base, int L) {
    return residence_report(make_homogeneous_lane(L, base.p())).gamma;
}

double ipas(const IpasSetting& setting, double eps) {
    const double without = baseline_gamma(setting.base, setting.L);
    const double with =
        closed_form::static_defect_gamma(setting.L, setting.d, eps, setting.base.p());
    return without / with;
}

double eps_for_ipas(const IpasSetting& setting, double target) {
    const double p = setting.base.p();
    const double q = setting.base.q();
    const double lo = -p * (1.0 - 1e-9);
    const double hi = q * (1.0 - 1e-9);
    auto f = [&](double e) { return ipas(setting, e) - target; };
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        throw ValidationError(fmt::format(
            "I_pas = {} is not reachable by a single defect at d={} (range {}..{})", target,
            setting.d, f_lo + target, f_hi + target));
    }
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (a + b);
}

double eps_of_phi(double phi, double a_bar, double b_bar, double alpha, double c_fit) {
    return a_bar * saturation(phi, alpha, c_fit) - b_bar;
}

FitResult fit_ipas(std::vector<IpasPoint> data, const IpasSetting& setting,
                   const FitOptions& options) {
    if (data.size() < 4) {
        throw ValidationError(fmt::format("fit needs at least 4 points, got {}", data.size()));
    }
    for (const IpasPoint& pt : data) {
        if (!(pt.phi >= 0.0) || !(pt.ipas > 0.0)) {
            throw ValidationError(fmt::format("invalid data point phi={}, ipas={}", pt.phi, pt.ipas));
        }
    }
    std::stable_sort(data.begin(), data.end(),
                     [](const IpasPoint& a, const IpasPoint& b) { return a.phi < b.phi; });
    const IpasPoint& first = data.front();
    const IpasPoint& last = data.back();
    if (!(last.phi > first.phi)) throw ValidationError("fit data must span more than one phi");

    const double e_first = eps_for_ipas(setting, first.ipas);
    const double e_last = eps_for_ipas(setting, last.ipas);

    FitResult out;
    if (std::fabs(e_last - e_first) < 1e-12) {
        out.a_bar = 0.0;
        out.b_bar = -e_first;
        out.alpha = options.start[0];
        out.c_fit = options.start[1];
        for (const IpasPoint& pt : data) {
            const double r = ipas(setting, e_first) - pt.ipas;
            out.rss += r * r;
        }
        out.degenerate = true;
        return out;
    }

    auto pinned = [&](double alpha, double c) {
        const double s_first = saturation(first.phi, alpha, c);
        const double s_last = saturation(last.phi, alpha, c);
        const double a_bar = (e_last - e_first) / (s_last - s_first);
        return std::pair{a_bar, a_bar * s_first - e_first};
    };
    auto objective = [&](const Point& x) {
        const double alpha = x[0];
        const double c = x[1];
        if (!(alpha > 0.0) || !(c > 0.0)) return kInf;
        const auto [a_bar, b_bar] = pinned(alpha, c);
        if (!std::isfinite(a_bar) || !std::isfinite(b_bar)) return kInf;
        double rss = 0.0;
        try {
            for (const IpasPoint& pt : data) {
                const double r = ipas(setting, eps_of_phi(pt.phi, a_bar, b_bar, alpha, c)) - pt.ipas;
                rss += r * r;
            }
        } catch (const ValidationError&) {
            return kInf;
        }
        return std::isfinite(rss) ? rss : kInf;
    };

    const Minimum m = nelder_mead(objective, options);
    out.alpha = m.x[0];
    out.c_fit = m.x[1];
    std::tie(out.a_bar, out.b_bar) = pinned(out.alpha, out.c_fit);
    out.rss = m.f;
    out.iterations = m.iterations;
    if (!m.converged) {
        throw FitConvergenceError(
            fmt::format("simplex search did not converge in {} iterations", m.iterations), out);
    }
    return out;
}

std::vector<ScanRow> scan_defect_position(const HomogeneousParams& base, double eps, int L,
                                          int d_first, int d_last) {
    if (d_first > d_last) {
        throw ValidationError(fmt::format("empty defect range [{}, {}]", d_first, d_last));
    }
    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(d_last - d_first + 1));
    for (int d = d_first; d <= d_last; ++d) {
        rows.push_back({d, closed_form::static_defect_gamma(L, d, eps, base.p())});
    }
    return rows;
}

std::vector<ScanRow> scan_spread(const HomogeneousParams& base, double eps, int L, int d,
                                 int a_first, int a_last) {
    if (a_first > a_last || a_first < 0) {
        throw ValidationError(fmt::format("invalid spread range [{}, {}]", a_first, a_last));
    }
    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(a_last - a_first + 1));
    for (int a = a_first; a <= a_last; ++a) {
        const Lane lane = effective_lane(base, L, TriangularMovingDefect{d, eps, a});
        rows.push_back({a, residence_report(lane).gamma});
    }
    return rows;
}

}  // namespace restime
