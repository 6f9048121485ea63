#pragma once

// Declarative scenarios: a cast of agents, the trust each holds in the
// others, and a sequence of report events applied in order.
//
// File format (line-oriented, `#` comments):
//
//   signature sick diam
//   mode strict                                  (optional; or `closure`)
//   agent A belief: !sick & diam order: dalal
//   agent B belief: p order: explicit:ranks.txt fallback: dalal
//   agent D                                      (source only)
//   trust A D partition: {sick,diam} {sick} | {diam} {}
//   trust A S metric: d_s.metric                 (relative to the scenario file)
//   report D A: sick & !diam                     (source D, target A)
//   batch A: D: sick ; J: !diam
//   reset A belief: !sick & diam

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "trustrev/logic.hpp"
#include "trustrev/partition.hpp"
#include "trustrev/pseudometric.hpp"
#include "trustrev/revision.hpp"

namespace trustrev {

enum class OrderKind { TwoLevel, Dalal, Explicit };

std::string_view order_kind_name(OrderKind kind);

struct OrderSpec {
  OrderKind kind = OrderKind::Dalal;
  // Explicit orders only.
  std::vector<std::pair<State, Rank>> ranks;
  // Used once the beliefs move away from the ones the explicit ranks were written for.
  std::optional<OrderKind> fallback;
};

// Builds the order for `beliefs`. Explicit ranks apply only while the beliefs
// equal `initial`; afterwards the fallback kind is used, or StaleExplicitOrder
// is thrown.
FaithfulOrder build_order(const OrderSpec& spec, const BeliefState& beliefs, const BeliefState& initial);

using TrustSpec = std::variant<StatePartition, TrustMetric>;

class TrustStore {
 public:
  void set(std::string observer, std::string source, TrustSpec spec);
  const TrustSpec* find(std::string_view observer, std::string_view source) const;
  // Throws UnknownTrust.
  const TrustSpec& at(std::string_view observer, std::string_view source) const;
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t partition_count() const;
  std::size_t metric_count() const;

 private:
  std::map<std::pair<std::string, std::string>, TrustSpec> entries_;
};

struct AgentDecl {
  std::string id;
  // Absent for agents that only ever act as sources.
  std::optional<BeliefState> beliefs;
  std::optional<OrderSpec> order;
};

struct SingleReport {
  std::string source;
  std::string target;
  Formula formula;
};

struct Batch {
  std::string target;
  std::vector<Report> reports;
};

struct Reset {
  std::string target;
  Formula formula;
  BeliefState beliefs;
};

struct Event {
  std::size_t line;
  std::variant<SingleReport, Batch, Reset> body;
};

struct Scenario {
  Signature signature;
  ThresholdMode mode = ThresholdMode::Strict;
  std::vector<AgentDecl> agents;
  TrustStore trust;
  std::vector<Event> events;

  const AgentDecl* agent(std::string_view id) const;
};

struct LoadOptions {
  // Directory that relative metric and ranking paths resolve against.
  std::filesystem::path base_dir;
  std::size_t metric_atom_cap = kDefaultMetricAtomCap;
};

// Fully validates partitions, metrics, orders and agent references. Errors
// carry the offending line number.
Scenario load_scenario(std::string_view text, const LoadOptions& options = {});
Scenario load_scenario_file(const std::filesystem::path& path, std::size_t metric_atom_cap = kDefaultMetricAtomCap);

struct TraceRecord {
  std::size_t event = 0;  // 1-based position in the event list
  std::string target;
  // "partition", "metric", "reset"; empty when the event failed before a
  // mechanism was chosen.
  std::string mechanism;
  std::optional<Distance> threshold;
  std::vector<std::string> result_states;
  std::string result_dnf;
  std::string error;  // empty on success
  std::string kind;   // "report", "batch", "reset"
  std::string input;  // the event's reports, rendered canonically

  bool ok() const noexcept { return error.empty(); }
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Trace {
  std::vector<std::string> signature;
  std::vector<TraceRecord> records;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Applies the events in order. A failed event is recorded and leaves every
// agent unchanged; the run continues.
Trace run_scenario(const Scenario& scenario);

enum class TraceFormat { Text, Structured };

std::string render_trace(const Trace& trace, TraceFormat format);
// Inverse of render_trace(..., Structured). Throws MalformedLine.
Trace parse_structured_trace(std::string_view text);

}  // namespace trustrev
