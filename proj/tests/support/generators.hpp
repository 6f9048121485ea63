#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "trustrev/trustrev.hpp"

namespace trustrev::gen {

using Rng = std::mt19937_64;

inline Signature signature(std::size_t atoms) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < atoms; ++i) names.push_back("p" + std::to_string(i));
  return Signature::make(std::move(names));
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Formula formula(Rng& rng, const Signature& sig, int depth) {
  const std::size_t pick = depth <= 0 ? uniform(rng, 0, 9) : uniform(rng, 0, 15);
  if (pick == 0) return Formula::top();
  if (pick == 1) return Formula::bottom();
  if (pick < 10) {
    const auto p = uniform(rng, 0, sig.size() - 1);
    return Formula::atom(p, sig.atom(p));
  }
  if (pick == 10) return Formula::negation(formula(rng, sig, depth - 1));
  auto lhs = formula(rng, sig, depth - 1);
  auto rhs = formula(rng, sig, depth - 1);
  switch (pick) {
    case 11: return Formula::conjunction(std::move(lhs), std::move(rhs));
    case 12: return Formula::disjunction(std::move(lhs), std::move(rhs));
    case 13: return Formula::implication(std::move(lhs), std::move(rhs));
    case 14: return Formula::equivalence(std::move(lhs), std::move(rhs));
    default: return Formula::negation(Formula::conjunction(std::move(lhs), std::move(rhs)));
  }
}

inline Formula satisfiable_formula(Rng& rng, const Signature& sig, int depth) {
  while (true) {
    auto f = formula(rng, sig, depth);
    if (satisfiable(sig, f)) return f;
  }
}

inline StateSet state_set(Rng& rng, const Signature& sig, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  StateSet out(sig);
  for (StateIndex i = 0; i < sig.state_count(); ++i) {
    if (coin(rng)) out.insert(State(i));
  }
  return out;
}

inline BeliefState beliefs(Rng& rng, const Signature& sig) {
  while (true) {
    auto s = state_set(rng, sig, 0.3);
    if (!s.empty()) return BeliefState(std::move(s));
  }
}

// Random labels; `max_cells` bounds how many distinct labels appear.
inline StatePartition partition(Rng& rng, const Signature& sig, std::size_t max_cells = 0) {
  const std::size_t n = sig.state_count();
  const std::size_t k = uniform(rng, 1, max_cells == 0 ? n : std::min(max_cells, n));
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = uniform(rng, 0, k - 1);
  return StatePartition::from_labels(sig, labels);
}

// Every partition of the state space, via restricted growth strings.
inline std::vector<StatePartition> all_partitions(const Signature& sig) {
  const std::size_t n = sig.state_count();
  std::vector<StatePartition> out;
  std::vector<std::size_t> labels(n, 0);
  auto grow = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      out.push_back(StatePartition::from_labels(sig, labels));
      return;
    }
    for (std::size_t l = 0; l <= used; ++l) {
      labels[i] = l;
      self(self, i + 1, std::max(used, l + 1));
    }
  };
  labels[0] = 0;
  grow(grow, 1, 1);
  return out;
}

inline FaithfulOrder order(Rng& rng, const BeliefState& k) {
  switch (uniform(rng, 0, 2)) {
    case 0: return two_level_order(k);
    case 1: return dalal_order(k);
    default: {
      std::vector<std::pair<State, Rank>> ranks;
      for (StateIndex i = 0; i < k.signature().state_count(); ++i) {
        const bool believed = k.models().contains(State(i));
        ranks.emplace_back(State(i), believed ? 3 : static_cast<Rank>(uniform(rng, 4, 7)));
      }
      return explicit_order(k, ranks);
    }
  }
}

// Shortest-path metric over a random weighted complete graph; zero weights
// are common, so thresholds are frequently non-transitive.
inline TrustMetric path_metric(Rng& rng, const Signature& sig, Distance max_weight = 4) {
  const std::size_t n = sig.state_count();
  std::vector<Distance> d(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      d[a * n + b] = d[b * n + a] = static_cast<Distance>(uniform(rng, 0, max_weight));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) d[a * n + b] = std::min(d[a * n + b], d[a * n + k] + d[k * n + b]);
    }
  }
  return TrustMetric::from_matrix(sig, std::move(d));
}

// Ultrametric from a random hierarchy: thresholds are always transitive, so
// strict mode never fails.
inline TrustMetric ultrametric(Rng& rng, const Signature& sig, Distance levels = 4) {
  const std::size_t n = sig.state_count();
  // Cluster label at each level; level L labels refine level L+1 labels.
  std::vector<std::vector<std::size_t>> label(levels + 1, std::vector<std::size_t>(n));
  for (std::size_t s = 0; s < n; ++s) label[0][s] = s;
  for (Distance l = 1; l <= levels; ++l) {
    std::vector<std::size_t> merge(n);
    const std::size_t groups = uniform(rng, 1, n);
    for (auto& m : merge) m = uniform(rng, 0, groups - 1);
    for (std::size_t s = 0; s < n; ++s) label[l][s] = merge[label[l - 1][s]];
  }
  std::vector<Distance> d(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Distance l = 0;
      while (l < levels && label[l][a] != label[l][b]) ++l;
      d[a * n + b] = label[l][a] == label[l][b] ? l : levels + 1;
    }
  }
  return TrustMetric::from_matrix(sig, std::move(d));
}

inline TrustMetric metric(Rng& rng, const Signature& sig) {
  return uniform(rng, 0, 1) == 0 ? path_metric(rng, sig) : ultrametric(rng, sig);
}

}  // namespace trustrev::gen
