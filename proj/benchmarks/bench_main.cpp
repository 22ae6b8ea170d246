#include <random>

#include <benchmark/benchmark.h>

#include "restime/applications.hpp"
#include "restime/closed_form.hpp"
#include "restime/defect_models.hpp"
#include "restime/exact.hpp"
#include "restime/monte_carlo.hpp"

namespace {

using namespace restime;

Lane random_lane(int L, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.3, 0.7);
    std::vector<double> p(static_cast<std::size_t>(L - 1));
    for (double& x : p) x = u(rng);
    return Lane::from_right_probabilities(std::move(p));
}

void BM_ResidenceReport(benchmark::State& state) {
    const Lane lane = random_lane(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(residence_report(lane).gamma);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ResidenceReport)->RangeMultiplier(10)->Range(100, 1'000'000)->Complexity();

void BM_SymmetricGamma(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(closed_form::symmetric_gamma(L, L / 3, 0.3));
}
BENCHMARK(BM_SymmetricGamma)->Arg(102)->Arg(10'000);

void BM_DrivenGamma(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(closed_form::driven_gamma(L, L / 3, -0.3, 0.55));
}
BENCHMARK(BM_DrivenGamma)->Arg(102)->Arg(10'000);

void BM_ScanDefectPosition(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_defect_position(HomogeneousParams(0.5), 0.3, 102, 2, 100));
    }
}
BENCHMARK(BM_ScanDefectPosition);

void BM_SimulateModelD(benchmark::State& state) {
    McConfig c;
    c.L = 102;
    c.walks = static_cast<std::uint64_t>(state.range(0));
    c.seed = 7;
    c.dynamics = TriangularMovingDefect{51, 0.3, 25};
    for (auto _ : state) benchmark::DoNotOptimize(simulate(c).gamma_hat);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SimulateModelD)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_FitIpas(benchmark::State& state) {
    const IpasSetting s;
    std::vector<IpasPoint> data;
    for (int k = 0; k < 10; ++k) {
        const double phi = 0.5 + 2.5 * k / 9.0;
        data.push_back({phi, ipas(s, eps_of_phi(phi, 0.223, 0.4152, 6.043, 1.074))});
    }
    for (auto _ : state) benchmark::DoNotOptimize(fit_ipas(data, s).alpha);
}
BENCHMARK(BM_FitIpas)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
