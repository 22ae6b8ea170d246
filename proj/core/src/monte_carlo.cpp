#include "restime/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "restime/defect_models.hpp"
#include "restime/errors.hpp"

namespace restime {
namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// SplitMix64 as a UniformRandomBitGenerator, one instance per walk.
class WalkRng {
public:
    using result_type = std::uint64_t;

    WalkRng(std::uint64_t seed, std::uint64_t walk)
        : state_(mix64(seed ^ mix64(walk + 0x9e3779b97f4a7c15ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

__extension__ typedef __int128 Wide;

struct Sums {
    std::uint64_t n_right = 0;
    std::uint64_t n_left = 0;
    Wide tau = 0;
    Wide tau_sq = 0;
    std::vector<Wide> visits;
    std::vector<Wide> visits_sq;
};

// Bias seen by a walker at `site` in the current step, after the defect
// state has been refreshed.
class DefectState {
public:
    DefectState(const std::optional<DefectDynamics>& dyn, int L) : dyn_(dyn), L_(L) {}

    void reset(WalkRng& rng) {
        if (dyn_ && std::holds_alternative<RenewalDefect>(*dyn_)) {
            attached_ = true;
            remaining_ = holding(rng, std::get<RenewalDefect>(*dyn_).lambda_attached);
        }
    }

    double bias_at(int site, WalkRng& rng) {
        if (!dyn_) return 0.0;
        return std::visit([&](const auto& d) { return step(d, site, rng); }, *dyn_);
    }

private:
    double step(const StaticDefect& d, int site, WalkRng&) const {
        return site == d.site ? d.bias : 0.0;
    }
    double step(const IntermittentDefect& d, int site, WalkRng& rng) const {
        const bool active = rng.uniform() < d.activity;
        return active && site == d.site ? d.bias : 0.0;
    }
    double step(const RenewalDefect& d, int site, WalkRng& rng) {
        if (remaining_ == 0) {
            attached_ = !attached_;
            remaining_ = holding(rng, attached_ ? d.lambda_attached : d.lambda_detached);
        }
        --remaining_;
        return attached_ && site == d.site ? d.bias : 0.0;
    }
    double step(const UniformMovingDefect& d, int site, WalkRng& rng) const {
        // Uniform over 1..L, so each transient site is hit with probability 1/L.
        std::uniform_int_distribution<int> where(1, L_);
        return where(rng) == site ? d.bias : 0.0;
    }
    double step(const TriangularMovingDefect& d, int site, WalkRng& rng) const {
        // The difference of two uniforms on {0..a} has weights a + 1 - |k|.
        std::uniform_int_distribution<int> u(0, d.spread);
        const int offset = u(rng) - u(rng);
        return d.site + offset == site ? d.bias : 0.0;
    }

    static long holding(WalkRng& rng, double mean) {
        std::poisson_distribution<long> draw(mean);
        return std::max(1L, draw(rng));
    }

    const std::optional<DefectDynamics>& dyn_;
    int L_;
    bool attached_ = true;
    long remaining_ = 0;
};

void run_worker(const McConfig& cfg, const std::vector<double>& base_p, unsigned worker,
                Sums& sums, std::atomic<std::uint64_t>& finished) {
    const int L = cfg.L;
    sums.visits.assign(static_cast<std::size_t>(L - 1), 0);
    sums.visits_sq.assign(static_cast<std::size_t>(L - 1), 0);
    std::vector<std::uint64_t> count(static_cast<std::size_t>(L + 1), 0);
    DefectState defect(cfg.dynamics, L);

    std::uint64_t local_done = 0;
    for (std::uint64_t j = worker; j < cfg.walks; j += cfg.workers) {
        WalkRng rng(cfg.seed, j);
        defect.reset(rng);
        int pos = 1;
        int reach = 1;
        std::uint64_t tau = 0;
        while (pos > 0 && pos < L) {
            ++count[static_cast<std::size_t>(pos)];
            const double p = base_p[static_cast<std::size_t>(pos)] + defect.bias_at(pos, rng);
            pos += rng.uniform() < p ? 1 : -1;
            reach = std::max(reach, pos);
            ++tau;
        }
        if (pos == L) {
            ++sums.n_right;
            sums.tau += tau;
            sums.tau_sq += static_cast<Wide>(tau) * tau;
            for (int i = 1; i < L; ++i) {
                const Wide n = count[static_cast<std::size_t>(i)];
                sums.visits[static_cast<std::size_t>(i - 1)] += n;
                sums.visits_sq[static_cast<std::size_t>(i - 1)] += n * n;
            }
        } else {
            ++sums.n_left;
        }
        std::fill(count.begin(), count.begin() + std::min(reach, L - 1) + 1, 0);
        if (++local_done == 1024) {
            finished.fetch_add(local_done, std::memory_order_relaxed);
            local_done = 0;
        }
    }
    finished.fetch_add(local_done, std::memory_order_relaxed);
}

// Mean and standard error of the mean from exact integer sums.
std::pair<double, double> mean_se(Wide sum, Wide sum_sq, std::uint64_t n) {
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    const Wide scatter = static_cast<Wide>(n) * sum_sq - sum * sum;  // n (n-1) var
    const double var = static_cast<double>(scatter) /
                       (static_cast<double>(n) * static_cast<double>(n - 1));
    return {mean, std::sqrt(std::max(0.0, var) / static_cast<double>(n))};
}

void check_config(const McConfig& cfg) {
    if (cfg.walks < 1) throw ValidationError("walks must be at least 1");
    if (cfg.workers < 1) throw ValidationError("workers must be at least 1");
    if (cfg.L < 2) throw ValidationError(fmt::format("lane length L={} must be at least 2", cfg.L));
    if (!cfg.dynamics) return;
    // Probabilities the walker can actually meet: background plus full bias.
    validate_dynamics(*cfg.dynamics, cfg.L);
    const double p = cfg.base.p() + defect_bias(*cfg.dynamics);
    if (!(p > 0.0 && p <= 1.0)) {
        throw BiasOutOfRange(fmt::format("instantaneous hop probability {} outside (0, 1]", p));
    }
}

}  // namespace

McEstimate simulate(const McConfig& config) {
    check_config(config);
    std::vector<double> base_p(static_cast<std::size_t>(config.L + 1), config.base.p());

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(config.workers, config.walks));
    McConfig cfg = config;
    cfg.workers = workers;
    std::vector<Sums> partial(workers);
    std::atomic<std::uint64_t> finished{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { run_worker(cfg, base_p, w, partial[w], finished); });
        }
        if (config.progress) {
            using namespace std::chrono_literals;
            while (finished.load(std::memory_order_relaxed) < config.walks) {
                config.progress(finished.load(std::memory_order_relaxed), config.walks);
                std::this_thread::sleep_for(200ms);
            }
            config.progress(config.walks, config.walks);
        }
    }

    Sums total;
    total.visits.assign(static_cast<std::size_t>(config.L - 1), 0);
    total.visits_sq.assign(static_cast<std::size_t>(config.L - 1), 0);
    for (const Sums& s : partial) {
        total.n_right += s.n_right;
        total.n_left += s.n_left;
        total.tau += s.tau;
        total.tau_sq += s.tau_sq;
        for (std::size_t k = 0; k < total.visits.size(); ++k) {
            total.visits[k] += s.visits[k];
            total.visits_sq[k] += s.visits_sq[k];
        }
    }
    if (total.n_right == 0) {
        throw EstimationError(
            fmt::format("no right exits among {} walks (left exits: {})", config.walks, total.n_left),
            total.n_right, total.n_left);
    }

    McEstimate est;
    est.n_right = total.n_right;
    est.n_left = total.n_left;
    std::tie(est.gamma_hat, est.gamma_se) = mean_se(total.tau, total.tau_sq, total.n_right);
    est.local_hat.resize(total.visits.size());
    est.local_se.resize(total.visits.size());
    for (std::size_t k = 0; k < total.visits.size(); ++k) {
        std::tie(est.local_hat[k], est.local_se[k]) =
            mean_se(total.visits[k], total.visits_sq[k], total.n_right);
    }
    const double n = static_cast<double>(config.walks);
    est.p_re_hat = static_cast<double>(total.n_right) / n;
    est.p_re_se = std::sqrt(est.p_re_hat * (1.0 - est.p_re_hat) / n);
    return est;
}

SiteProfile simulate_profile(const McConfig& config) {
    McEstimate est = simulate(config);
    return {std::move(est.local_hat), std::move(est.local_se), est.n_right};
}

}  // namespace restime
