#include <benchmark/benchmark.h>

#include "ggcport/density_grid.hpp"
#include "ggcport/distances.hpp"
#include "ggcport/portfolio.hpp"
#include "ggcport/sampling.hpp"

using namespace ggcport;

namespace {

MixingLaw convolution_law() {
  return FiniteGammaConvolution(0.0, {{1.0, 0.5}, {2.0, 1.0}, {0.5, 2.0}});
}

NmvmModel gh_model() {
  NmvmModel model;
  model.mu = Eigen::VectorXd(2);
  model.mu << 0.05, 0.08;
  model.gamma_vec = Eigen::VectorXd(2);
  model.gamma_vec << 0.1, -0.05;
  model.a_matrix = Eigen::MatrixXd(2, 2);
  model.a_matrix << 0.2, 0.05, 0.05, 0.3;
  model.law = Gig(1.0, 1.0, 2.0);
  return model;
}

void BM_LaplaceConvolution(benchmark::State& state) {
  const MixingLaw law = convolution_law();
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace(law, s).value());
    s = s < 5.0 ? s + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_LaplaceConvolution);

void BM_LaplaceGig(benchmark::State& state) {
  const MixingLaw law = Gig(1.0, 1.0, 2.0);
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace(law, s).value());
    s = s < 5.0 ? s + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_LaplaceGig);

void BM_DensityGrid(benchmark::State& state) {
  const MixingLaw law = convolution_law();
  DensityGridSpec spec;
  spec.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_density_grid(law, spec));
  }
}
BENCHMARK(BM_DensityGrid)->Arg(1024)->Arg(4096)->Arg(8192);

void BM_DistanceReport(benchmark::State& state) {
  const MixingLaw a = convolution_law();
  const MixingLaw b = FiniteGammaConvolution(0.0, {{1.05, 0.5}, {2.1, 1.0}, {0.5, 2.2}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_report(a, b));
  }
}
BENCHMARK(BM_DistanceReport);

void BM_MinimizeQ(benchmark::State& state) {
  const NmvmModel model = gh_model();
  const MarketSpec market{0.01, 1.0, 1.0};
  const ModelConstants constants = model_constants(model, market);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_q(constants, model.law, 1e-11));
  }
}
BENCHMARK(BM_MinimizeQ);

void BM_SampleGig(benchmark::State& state) {
  const MixingLaw law = Gig(1.0, 1.0, 2.0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_mixing(law, 10000, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SampleGig);

void BM_SampleConvolution(benchmark::State& state) {
  const MixingLaw law = convolution_law();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_mixing(law, 10000, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SampleConvolution);

}  // namespace

BENCHMARK_MAIN();
