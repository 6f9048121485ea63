#pragma once

// Faithful orders and the revision operators built on them.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trustrev/logic.hpp"
#include "trustrev/partition.hpp"

namespace trustrev {

using Rank = std::uint32_t;

// A total preorder over states, given as a rank per state index. Rank 0 is
// held by exactly the belief models.
class FaithfulOrder {
 public:
  const Signature& signature() const noexcept { return beliefs_.signature(); }
  const BeliefState& beliefs() const noexcept { return beliefs_; }
  Rank rank(State s) const { return ranks_.at(s.index()); }
  const std::vector<Rank>& ranks() const noexcept { return ranks_; }

  // States of `candidates` with least rank. Empty input gives an empty result.
  StateSet minimal(const StateSet& candidates) const;

  friend bool operator==(const FaithfulOrder&, const FaithfulOrder&) = default;

 private:
  friend FaithfulOrder two_level_order(const BeliefState&);
  friend FaithfulOrder dalal_order(const BeliefState&);
  friend FaithfulOrder explicit_order(const BeliefState&, std::span<const std::pair<State, Rank>>);
  FaithfulOrder(BeliefState beliefs, std::vector<Rank> ranks)
      : beliefs_(std::move(beliefs)), ranks_(std::move(ranks)) {}

  BeliefState beliefs_;
  std::vector<Rank> ranks_;
};

// Rank 0 on the belief models, 1 everywhere else.
FaithfulOrder two_level_order(const BeliefState& beliefs);
// Rank = Hamming distance to the nearest belief model.
FaithfulOrder dalal_order(const BeliefState& beliefs);
// Ranks are shifted so the minimum is 0, then checked for faithfulness.
// Throws IncompleteRanking, DuplicateRank, FaithfulnessViolation.
FaithfulOrder explicit_order(const BeliefState& beliefs, std::span<const std::pair<State, Rank>> ranks);

// Reads `<state> <rank>` lines (`#` comments, optional leading
// `signature ...` line that must match `sig`).
std::vector<std::pair<State, Rank>> parse_ranking_file(std::string_view text, const Signature& sig);

struct Report {
  std::string source;
  Formula formula;
};

// Plain AGM revision: least-ranked models of `f`. Throws UnsatisfiableInput.
BeliefState agm_revise(const FaithfulOrder& order, const Formula& f);

// Least-ranked states of expand(partition, f). Throws UnsatisfiableInput.
BeliefState trust_revise(const FaithfulOrder& order, const StatePartition& partition, const Formula& f);

struct PartitionReport {
  Formula formula;
  StatePartition partition;
};

// Least-ranked states of the intersection of every report's expansion.
// Throws EmptyReportSet, UnsatisfiableInput, or ConflictingReports when the
// expansions share no state.
BeliefState multi_revise(const FaithfulOrder& order, std::span<const PartitionReport> reports);

}  // namespace trustrev
