#include <benchmark/benchmark.h>

#include "cqedsim/fock.hpp"
#include "cqedsim/kerr.hpp"
#include "cqedsim/states.hpp"
#include "cqedsim/teleport.hpp"

namespace {

using namespace cqedsim;

void BM_TeleportPipeline(benchmark::State& state) {
    const double alpha = 2.0;
    const int dim = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto psi = teleport::prepare_total({1.2, 0.3}, {alpha}, dim);
        const auto outcomes = teleport::measure(teleport::bsm_circuit(psi), {alpha},
                                                teleport::MeasurementModel::ProjectiveIdeal);
        benchmark::DoNotOptimize(outcomes[0].probability);
    }
}
BENCHMARK(BM_TeleportPipeline)->Arg(28)->Arg(40)->Arg(56);

void BM_Displacement(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto d = fock::displacement({1.5}, dim);
        benchmark::DoNotOptimize(d(0, 0));
    }
}
BENCHMARK(BM_Displacement)->Arg(40)->Arg(80);

void BM_KerrPoint(benchmark::State& state) {
    const kerr::TransmonParams tp{38.0, 0.25};
    kerr::FluxoniumParams fp{8.5, 3.0, 0.5};
    fp.flux_ext = 0.141;
    const auto ts = kerr::transmon_spectrum(tp);
    const auto fs = kerr::fluxonium_spectrum(fp);
    kerr::Mat lf = kerr::Mat::Zero(3, 3), lt = kerr::Mat::Zero(3, 3);
    lf(0, 1) = 0.038;
    lf(1, 2) = 0.054;
    lf(0, 2) = 0.122;
    lt(0, 1) = 0.10;
    lt(1, 2) = 0.141;
    const auto cs = kerr::CouplingSet::explicit_values(lf, lt);
    for (auto _ : state) {
        auto r = kerr::extract_kerr(kerr::assemble_hamiltonian(fs, ts, cs, 9.2, 4));
        benchmark::DoNotOptimize(r.kerr_khz);
    }
}
BENCHMARK(BM_KerrPoint);

}  // namespace

BENCHMARK_MAIN();
