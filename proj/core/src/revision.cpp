#include "trustrev/revision.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <optional>

#include "text_util.hpp"

namespace trustrev {

StateSet FaithfulOrder::minimal(const StateSet& candidates) const {
  require_same_signature(signature(), candidates.signature(), "minimization");
  Rank best = std::numeric_limits<Rank>::max();
  candidates.for_each([&](State s) { best = std::min(best, ranks_[s.index()]); });
  StateSet out(signature());
  candidates.for_each([&](State s) {
    if (ranks_[s.index()] == best) out.insert(s);
  });
  return out;
}

FaithfulOrder two_level_order(const BeliefState& beliefs) {
  const auto& sig = beliefs.signature();
  std::vector<Rank> ranks(sig.state_count(), 1);
  beliefs.models().for_each([&](State s) { ranks[s.index()] = 0; });
  return FaithfulOrder(beliefs, std::move(ranks));
}

FaithfulOrder dalal_order(const BeliefState& beliefs) {
  // Multi-source BFS over the hypercube: neighbours differ in one atom.
  const auto& sig = beliefs.signature();
  constexpr Rank kUnseen = std::numeric_limits<Rank>::max();
  std::vector<Rank> ranks(sig.state_count(), kUnseen);
  std::deque<StateIndex> frontier;
  beliefs.models().for_each([&](State s) {
    ranks[s.index()] = 0;
    frontier.push_back(s.index());
  });
  while (!frontier.empty()) {
    const StateIndex cur = frontier.front();
    frontier.pop_front();
    for (std::size_t p = 0; p < sig.size(); ++p) {
      const StateIndex next = cur ^ (StateIndex{1} << p);
      if (ranks[next] == kUnseen) {
        ranks[next] = ranks[cur] + 1;
        frontier.push_back(next);
      }
    }
  }
  return FaithfulOrder(beliefs, std::move(ranks));
}

FaithfulOrder explicit_order(const BeliefState& beliefs, std::span<const std::pair<State, Rank>> ranks) {
  const auto& sig = beliefs.signature();
  std::vector<std::optional<Rank>> table(sig.state_count());
  for (const auto& [s, r] : ranks) {
    if (s.index() >= table.size()) {
      throw Error(ErrorCode::IncompleteRanking, "state index " + std::to_string(s.index()) + " out of range");
    }
    if (table[s.index()]) {
      throw Error(ErrorCode::DuplicateRank, "state " + render_state(sig, s) + " ranked twice");
    }
    table[s.index()] = r;
  }
  std::vector<Rank> out(table.size());
  for (StateIndex i = 0; i < table.size(); ++i) {
    if (!table[i]) {
      throw Error(ErrorCode::IncompleteRanking, "state " + render_state(sig, State(i)) + " has no rank");
    }
    out[i] = *table[i];
  }
  const Rank low = *std::min_element(out.begin(), out.end());
  for (auto& r : out) r -= low;
  for (StateIndex i = 0; i < out.size(); ++i) {
    const bool believed = beliefs.models().contains(State(i));
    if (believed != (out[i] == 0)) {
      throw Error(ErrorCode::FaithfulnessViolation,
                  "state " + render_state(sig, State(i)) +
                      (believed ? " is a belief model but is not minimal"
                                : " is minimal but is not a belief model"));
    }
  }
  return FaithfulOrder(beliefs, std::move(out));
}

std::vector<std::pair<State, Rank>> parse_ranking_file(std::string_view text, const Signature& sig) {
  std::vector<std::pair<State, Rank>> out;
  bool first = true;
  for (const auto& line : detail::content_lines(text)) {
    try {
      const auto [head, rest] = detail::split_word(line.text);
      if (head == "signature") {
        if (!first) throw Error(ErrorCode::MalformedLine, "signature must be the first line");
        require_same_signature(sig, Signature::parse(rest), "ranking file");
        first = false;
        continue;
      }
      first = false;
      const auto close = line.text.find('}');
      if (close == std::string_view::npos) throw Error(ErrorCode::MalformedLine, "expected '<state> <rank>'");
      const State s = parse_state_literal(line.text.substr(0, close + 1), sig);
      const auto number = detail::trim(line.text.substr(close + 1));
      Rank r = 0;
      const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), r);
      if (ec != std::errc{} || ptr != number.data() + number.size() || number.empty()) {
        throw Error(ErrorCode::MalformedLine, "expected a natural-number rank, got '" + std::string(number) + "'");
      }
      out.emplace_back(s, r);
    } catch (const Error& e) {
      if (e.line()) throw;
      throw e.at_line(line.number);
    }
  }
  return out;
}

namespace {

StateSet satisfiable_models(const Signature& sig, const Formula& f) {
  auto m = models(sig, f);
  if (m.empty()) throw Error(ErrorCode::UnsatisfiableInput, "unsatisfiable input '" + render(f) + "'");
  return m;
}

}  // namespace

BeliefState agm_revise(const FaithfulOrder& order, const Formula& f) {
  return BeliefState(order.minimal(satisfiable_models(order.signature(), f)));
}

BeliefState trust_revise(const FaithfulOrder& order, const StatePartition& partition, const Formula& f) {
  require_same_signature(order.signature(), partition.signature(), "trust revision");
  satisfiable_models(order.signature(), f);
  return BeliefState(order.minimal(expand(partition, f)));
}

BeliefState multi_revise(const FaithfulOrder& order, std::span<const PartitionReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::EmptyReportSet, "no reports to revise by");
  const auto& sig = order.signature();
  StateSet evidence = StateSet::full(sig);
  for (const auto& r : reports) {
    require_same_signature(sig, r.partition.signature(), "multi-report revision");
    satisfiable_models(sig, r.formula);
    evidence &= expand(r.partition, r.formula);
  }
  if (evidence.empty()) {
    throw Error(ErrorCode::ConflictingReports,
                "the expansions of the " + std::to_string(reports.size()) + " reports share no state");
  }
  return BeliefState(order.minimal(evidence));
}

}  // namespace trustrev
