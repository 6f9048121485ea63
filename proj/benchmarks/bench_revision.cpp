#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "trustrev/trustrev.hpp"

using namespace trustrev;

namespace {

Signature make_signature(std::size_t atoms) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < atoms; ++i) names.push_back("p" + std::to_string(i));
  return Signature::make(std::move(names));
}

StatePartition random_partition(const Signature& sig, std::size_t cells, std::mt19937_64& rng) {
  std::vector<std::size_t> labels(sig.state_count());
  std::uniform_int_distribution<std::size_t> pick(0, cells - 1);
  for (auto& l : labels) l = pick(rng);
  return StatePartition::from_labels(sig, labels);
}

// Hamming distance scaled per atom: a valid pseudometric at any size.
TrustMetric weighted_hamming(const Signature& sig, std::mt19937_64& rng) {
  const std::size_t n = sig.state_count();
  std::vector<Distance> weight(sig.size());
  std::uniform_int_distribution<Distance> pick(0, 3);
  for (auto& w : weight) w = pick(rng);
  std::vector<Distance> d(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Distance sum = 0;
      for (std::size_t p = 0; p < sig.size(); ++p) sum += ((a ^ b) >> p & 1U) ? weight[p] : 0;
      d[a * n + b] = sum;
    }
  }
  return TrustMetric::from_matrix(sig, std::move(d));
}

Formula clause(const Signature& sig) {
  return parse_formula(sig.atom(0) + " | !" + sig.atom(sig.size() - 1), sig);
}

void BM_Expand(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto sig = make_signature(static_cast<std::size_t>(state.range(0)));
  const auto p = random_partition(sig, 8, rng);
  const auto f = clause(sig);
  for (auto _ : state) benchmark::DoNotOptimize(expand(p, f));
}
BENCHMARK(BM_Expand)->DenseRange(4, 16, 4);

void BM_DalalOrder(benchmark::State& state) {
  const auto sig = make_signature(static_cast<std::size_t>(state.range(0)));
  const auto k = BeliefState::from_formula(sig, parse_formula(sig.atom(0) + " & " + sig.atom(1), sig));
  for (auto _ : state) benchmark::DoNotOptimize(dalal_order(k));
}
BENCHMARK(BM_DalalOrder)->DenseRange(4, 16, 4);

void BM_TrustRevise(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto sig = make_signature(static_cast<std::size_t>(state.range(0)));
  const auto order = dalal_order(BeliefState::from_formula(sig, parse_formula("!" + sig.atom(0), sig)));
  const auto p = random_partition(sig, 16, rng);
  const auto f = clause(sig);
  for (auto _ : state) benchmark::DoNotOptimize(trust_revise(order, p, f));
}
BENCHMARK(BM_TrustRevise)->DenseRange(4, 16, 4);

void BM_ThresholdPartition(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto sig = make_signature(static_cast<std::size_t>(state.range(0)));
  const auto d = weighted_hamming(sig, rng);
  const auto mode = state.range(1) == 0 ? ThresholdMode::Closure : ThresholdMode::Strict;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(threshold_partition(d, 2, mode));
    } catch (const Error&) {
    }
  }
}
BENCHMARK(BM_ThresholdPartition)->ArgsProduct({{2, 4, 6, 8}, {0, 1}});

void BM_ResolveThreshold(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto sig = make_signature(static_cast<std::size_t>(state.range(0)));
  const std::vector<MetricReport> reports{{parse_formula(sig.atom(0), sig), weighted_hamming(sig, rng)},
                                          {parse_formula("!" + sig.atom(0), sig), weighted_hamming(sig, rng)}};
  for (auto _ : state) benchmark::DoNotOptimize(resolve_threshold(reports, ThresholdMode::Closure));
}
BENCHMARK(BM_ResolveThreshold)->DenseRange(2, 8, 2);

}  // namespace
BENCHMARK_MAIN();
