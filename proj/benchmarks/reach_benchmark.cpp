#include <random>

#include <benchmark/benchmark.h>

#include "tsreach/campaign.hpp"
#include "tsreach/noise.hpp"

namespace {

using namespace tsreach;

SeriesWindow bench_window(Eigen::Index length) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.5, 2.0);
  Eigen::MatrixXd x(3, length);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = unit(rng);
  return SeriesWindow(x);
}

void BM_StarBounds(benchmark::State& state) {
  const auto m = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd basis(20, m);
  Eigen::MatrixXd c(m, m);
  for (Eigen::Index i = 0; i < basis.size(); ++i) basis.data()[i] = normal(rng);
  for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = normal(rng);
  const Star s(Eigen::VectorXd::Zero(20), basis, c, Eigen::VectorXd::Ones(m),
               Eigen::VectorXd::Constant(m, -1.0), Eigen::VectorXd::Constant(m, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(s.all_bounds());
}
BENCHMARK(BM_StarBounds)->Arg(4)->Arg(16)->Arg(64);

void BM_NetworkReach(benchmark::State& state) {
  const Network net = fixture_network();
  const SeriesWindow w = bench_window(30);
  NoiseSpec spec;
  spec.kind = static_cast<NoiseKind>(state.range(0));
  spec.feature = 1;
  spec.epsilon_percent = 1.0;
  const Star input = make_noise_star(w, spec);
  for (auto _ : state) {
    const ReachResult r = network_reach(net, input, 30);
    benchmark::DoNotOptimize(r.output.bounds(r.output_length - 1));
  }
  state.SetLabel(to_string(spec.kind));
}
BENCHMARK(BM_NetworkReach)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
