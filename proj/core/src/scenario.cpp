#include "trustrev/scenario.hpp"

#include <fstream>
#include <sstream>

#include "text_util.hpp"

namespace trustrev {

std::string_view order_kind_name(OrderKind kind) {
  switch (kind) {
    case OrderKind::TwoLevel: return "two_level";
    case OrderKind::Dalal: return "dalal";
    case OrderKind::Explicit: return "explicit";
  }
  return "?";
}

namespace {

FaithfulOrder build_plain(OrderKind kind, const BeliefState& beliefs) {
  return kind == OrderKind::TwoLevel ? two_level_order(beliefs) : dalal_order(beliefs);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

FaithfulOrder build_order(const OrderSpec& spec, const BeliefState& beliefs, const BeliefState& initial) {
  if (spec.kind != OrderKind::Explicit) return build_plain(spec.kind, beliefs);
  if (beliefs == initial) return explicit_order(beliefs, spec.ranks);
  if (spec.fallback) return build_plain(*spec.fallback, beliefs);
  throw Error(ErrorCode::StaleExplicitOrder,
              "explicit ranks describe the initial beliefs only and no fallback order is declared");
}

// ---------------------------------------------------------------------------
// TrustStore

void TrustStore::set(std::string observer, std::string source, TrustSpec spec) {
  entries_.insert_or_assign({std::move(observer), std::move(source)}, std::move(spec));
}

const TrustSpec* TrustStore::find(std::string_view observer, std::string_view source) const {
  const auto it = entries_.find({std::string(observer), std::string(source)});
  return it == entries_.end() ? nullptr : &it->second;
}

const TrustSpec& TrustStore::at(std::string_view observer, std::string_view source) const {
  const auto* spec = find(observer, source);
  if (!spec) {
    throw Error(ErrorCode::UnknownTrust,
                "agent " + std::string(observer) + " has no trust entry for source " + std::string(source));
  }
  return *spec;
}

std::size_t TrustStore::partition_count() const {
  std::size_t n = 0;
  for (const auto& [key, spec] : entries_) n += std::holds_alternative<StatePartition>(spec) ? 1 : 0;
  return n;
}

std::size_t TrustStore::metric_count() const { return entries_.size() - partition_count(); }

const AgentDecl* Scenario::agent(std::string_view id) const {
  for (const auto& a : agents) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

using detail::split_word;
using detail::trim;

// Splits "key: value" style text at the first occurrence of `keyword`.
std::optional<std::pair<std::string_view, std::string_view>> split_at(std::string_view text,
                                                                      std::string_view keyword) {
  const auto at = text.find(keyword);
  if (at == std::string_view::npos) return std::nullopt;
  return std::pair{trim(text.substr(0, at)), trim(text.substr(at + keyword.size()))};
}

std::optional<OrderKind> plain_order_kind(std::string_view text) {
  if (text == "dalal") return OrderKind::Dalal;
  if (text == "two_level") return OrderKind::TwoLevel;
  return std::nullopt;
}

class Loader {
 public:
  Loader(const LoadOptions& options) : options_(options) {}

  Scenario load(std::string_view text) {
    for (const auto& line : detail::content_lines(text)) {
      try {
        directive(line.text, line.number);
      } catch (const Error& e) {
        if (e.line()) throw;
        throw e.at_line(line.number);
      }
    }
    if (!sig_) throw Error(ErrorCode::MalformedLine, "scenario declares no signature");
    return Scenario{*sig_, mode_, std::move(agents_), std::move(trust_), std::move(events_)};
  }

 private:
  void directive(std::string_view text, std::size_t line) {
    const auto [head, rest] = split_word(text);
    if (!sig_) {
      if (head != "signature") throw Error(ErrorCode::MalformedLine, "the first directive must be 'signature'");
      sig_ = Signature::parse(rest);
      return;
    }
    if (head == "signature") throw Error(ErrorCode::MalformedLine, "signature declared twice");
    if (head == "mode") return set_mode(rest);
    if (head == "agent") return add_agent(rest);
    if (head == "trust") return add_trust(rest);
    if (head == "report") return add_report(rest, line);
    if (head == "batch") return add_batch(rest, line);
    if (head == "reset") return add_reset(rest, line);
    throw Error(ErrorCode::MalformedLine, "unknown directive '" + std::string(head) + "'");
  }

  void set_mode(std::string_view rest) {
    const auto mode = parse_mode(rest);
    if (!mode) throw Error(ErrorCode::MalformedLine, "mode must be 'strict' or 'closure'");
    mode_ = *mode;
  }

  const AgentDecl& declared(std::string_view id) const {
    for (const auto& a : agents_) {
      if (a.id == id) return a;
    }
    throw Error(ErrorCode::UnknownAgent, "agent '" + std::string(id) + "' is not declared");
  }

  const AgentDecl& believer(std::string_view id) const {
    const auto& a = declared(id);
    if (!a.beliefs) {
      throw Error(ErrorCode::NotABeliever, "agent '" + std::string(id) + "' has no beliefs to revise");
    }
    return a;
  }

  static std::string agent_id(std::string_view text) {
    if (!is_identifier(text)) throw Error(ErrorCode::MalformedLine, "invalid agent name '" + std::string(text) + "'");
    return std::string(text);
  }

  void add_agent(std::string_view rest) {
    const auto [id_text, tail] = split_word(rest);
    AgentDecl decl{agent_id(id_text), std::nullopt, std::nullopt};
    for (const auto& a : agents_) {
      if (a.id == decl.id) throw Error(ErrorCode::DuplicateAgent, "agent '" + decl.id + "' declared twice");
    }
    if (!tail.empty()) {
      const auto belief = split_at(tail, "belief:");
      if (!belief || !belief->first.empty()) throw Error(ErrorCode::MalformedLine, "expected 'belief: <formula>'");
      const auto order = split_at(belief->second, "order:");
      if (!order) throw Error(ErrorCode::MalformedLine, "agent '" + decl.id + "' must name an order");
      decl.beliefs = BeliefState::from_formula(*sig_, parse_formula(order->first, *sig_));
      decl.order = parse_order(order->second, *decl.beliefs);
    }
    agents_.push_back(std::move(decl));
  }

  OrderSpec parse_order(std::string_view text, const BeliefState& beliefs) const {
    OrderSpec spec;
    std::string_view kind_text = text;
    if (const auto fb = split_at(text, "fallback:")) {
      kind_text = fb->first;
      spec.fallback = plain_order_kind(fb->second);
      if (!spec.fallback) throw Error(ErrorCode::MalformedLine, "fallback order must be 'dalal' or 'two_level'");
    }
    if (const auto plain = plain_order_kind(kind_text)) {
      if (spec.fallback) throw Error(ErrorCode::MalformedLine, "fallback applies to explicit orders only");
      spec.kind = *plain;
      return spec;
    }
    if (kind_text.substr(0, 9) != "explicit:") {
      throw Error(ErrorCode::MalformedLine, "order must be 'dalal', 'two_level' or 'explicit:<path>'");
    }
    spec.kind = OrderKind::Explicit;
    const auto path = options_.base_dir / std::string(trim(kind_text.substr(9)));
    try {
      spec.ranks = parse_ranking_file(read_file(path), *sig_);
      explicit_order(beliefs, spec.ranks);
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + (e.line() ? ":" + std::to_string(*e.line()) : "") + ": " + e.message());
    }
    return spec;
  }

  void add_trust(std::string_view rest) {
    const auto [observer, tail1] = split_word(rest);
    const auto [source, tail2] = split_word(tail1);
    declared(observer);
    declared(source);
    if (trust_.find(observer, source)) {
      throw Error(ErrorCode::MalformedLine,
                  "trust of " + std::string(observer) + " in " + std::string(source) + " declared twice");
    }
    if (const auto part = split_at(tail2, "partition:"); part && part->first.empty()) {
      trust_.set(std::string(observer), std::string(source), parse_partition(part->second, *sig_));
      return;
    }
    if (const auto met = split_at(tail2, "metric:"); met && met->first.empty()) {
      const auto path = options_.base_dir / std::string(met->second);
      try {
        auto metric = parse_metric_file(read_file(path), options_.metric_atom_cap);
        require_same_signature(*sig_, metric.signature(), "metric file");
        trust_.set(std::string(observer), std::string(source), std::move(metric));
      } catch (const Error& e) {
        throw Error(e.code(),
                    path.string() + (e.line() ? ":" + std::to_string(*e.line()) : "") + ": " + e.message());
      }
      return;
    }
    throw Error(ErrorCode::MalformedLine, "expected 'partition: ...' or 'metric: <path>'");
  }

  void add_report(std::string_view rest, std::size_t line) {
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::MalformedLine, "expected 'report <source> <target>: <formula>'");
    const auto [source, tail] = split_word(rest.substr(0, colon));
    const auto [target, extra] = split_word(tail);
    if (target.empty() || !extra.empty()) {
      throw Error(ErrorCode::MalformedLine, "expected 'report <source> <target>: <formula>'");
    }
    declared(source);
    believer(target);
    events_.push_back(Event{line, SingleReport{std::string(source), std::string(target),
                                               parse_formula(rest.substr(colon + 1), *sig_)}});
  }

  void add_batch(std::string_view rest, std::size_t line) {
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::MalformedLine, "expected 'batch <target>: ...'");
    const auto target = trim(rest.substr(0, colon));
    believer(target);
    Batch batch{std::string(target), {}};
    std::string_view items = rest.substr(colon + 1);
    while (true) {
      const auto semi = items.find(';');
      const auto item = trim(items.substr(0, semi));
      const auto item_colon = item.find(':');
      if (item_colon == std::string_view::npos) {
        throw Error(ErrorCode::MalformedLine, "batch items take the form '<source>: <formula>'");
      }
      const auto source = trim(item.substr(0, item_colon));
      declared(source);
      batch.reports.push_back(Report{std::string(source), parse_formula(item.substr(item_colon + 1), *sig_)});
      if (semi == std::string_view::npos) break;
      items = items.substr(semi + 1);
    }
    events_.push_back(Event{line, std::move(batch)});
  }

  void add_reset(std::string_view rest, std::size_t line) {
    const auto [target, tail] = split_word(rest);
    believer(target);
    const auto belief = split_at(tail, "belief:");
    if (!belief || !belief->first.empty()) throw Error(ErrorCode::MalformedLine, "expected 'reset <agent> belief: <formula>'");
    Formula f = parse_formula(belief->second, *sig_);
    BeliefState beliefs = BeliefState::from_formula(*sig_, f);
    events_.push_back(Event{line, Reset{std::string(target), std::move(f), std::move(beliefs)}});
  }

  const LoadOptions& options_;
  std::optional<Signature> sig_;
  ThresholdMode mode_ = ThresholdMode::Strict;
  std::vector<AgentDecl> agents_;
  TrustStore trust_;
  std::vector<Event> events_;
};

}  // namespace

Scenario load_scenario(std::string_view text, const LoadOptions& options) { return Loader(options).load(text); }

Scenario load_scenario_file(const std::filesystem::path& path, std::size_t metric_atom_cap) {
  LoadOptions options;
  options.base_dir = path.parent_path();
  options.metric_atom_cap = metric_atom_cap;
  return load_scenario(read_file(path), options);
}

// ---------------------------------------------------------------------------
// Running

namespace {

struct AgentRuntime {
  const AgentDecl* decl;
  BeliefState current;
};

std::string render_report(const std::string& source, const Formula& f) { return source + ": " + render(f); }

class Runner {
 public:
  explicit Runner(const Scenario& sc) : sc_(sc) {
    for (const auto& a : sc.agents) {
      if (a.beliefs) agents_.emplace(a.id, AgentRuntime{&a, *a.beliefs});
    }
  }

  Trace run() {
    Trace trace;
    trace.signature = sc_.signature.atoms();
    for (std::size_t i = 0; i < sc_.events.size(); ++i) {
      TraceRecord rec;
      rec.event = i + 1;
      std::visit([&](const auto& body) { describe(body, rec); }, sc_.events[i].body);
      try {
        const auto result = std::visit([&](const auto& body) { return apply(body, rec); }, sc_.events[i].body);
        runtime(rec.target).current = result;
        rec.result_states.clear();
        for (State s : display_order(result.models())) rec.result_states.push_back(render_state(sc_.signature, s));
        rec.result_dnf = render(dnf_of_stateset(result.models()));
      } catch (const Error& e) {
        rec.error = e.what();
      }
      trace.records.push_back(std::move(rec));
    }
    return trace;
  }

 private:
  AgentRuntime& runtime(const std::string& id) {
    const auto it = agents_.find(id);
    if (it == agents_.end()) throw Error(ErrorCode::NotABeliever, "agent '" + id + "' has no beliefs to revise");
    return it->second;
  }

  FaithfulOrder order_of(const std::string& id) {
    auto& rt = runtime(id);
    return build_order(*rt.decl->order, rt.current, *rt.decl->beliefs);
  }

  static void describe(const SingleReport& ev, TraceRecord& rec) {
    rec.kind = "report";
    rec.target = ev.target;
    rec.input = render_report(ev.source, ev.formula);
  }

  static void describe(const Batch& ev, TraceRecord& rec) {
    rec.kind = "batch";
    rec.target = ev.target;
    for (const auto& r : ev.reports) {
      if (!rec.input.empty()) rec.input += " ; ";
      rec.input += render_report(r.source, r.formula);
    }
  }

  static void describe(const Reset& ev, TraceRecord& rec) {
    rec.kind = "reset";
    rec.target = ev.target;
    rec.input = render(ev.formula);
  }

  BeliefState apply(const SingleReport& ev, TraceRecord& rec) {
    const auto& spec = sc_.trust.at(ev.target, ev.source);
    const auto order = order_of(ev.target);
    if (const auto* part = std::get_if<StatePartition>(&spec)) {
      rec.mechanism = "partition";
      return trust_revise(order, *part, ev.formula);
    }
    const auto& metric = std::get<TrustMetric>(spec);
    rec.mechanism = "metric";
    rec.threshold = min_nontrivial_threshold(metric);
    return pseudometric_revise(order, metric, ev.formula, sc_.mode);
  }

  BeliefState apply(const Batch& ev, TraceRecord& rec) {
    std::vector<PartitionReport> partition_reports;
    std::vector<MetricReport> metric_reports;
    for (const auto& r : ev.reports) {
      const auto& spec = sc_.trust.at(ev.target, r.source);
      if (const auto* part = std::get_if<StatePartition>(&spec)) {
        partition_reports.push_back({r.formula, *part});
      } else {
        metric_reports.push_back({r.formula, std::get<TrustMetric>(spec)});
      }
    }
    if (!partition_reports.empty() && !metric_reports.empty()) {
      throw Error(ErrorCode::MixedTrustKinds, "batch mixes partition-based and metric-based sources");
    }
    const auto order = order_of(ev.target);
    if (!partition_reports.empty()) {
      rec.mechanism = "partition";
      return multi_revise(order, partition_reports);
    }
    rec.mechanism = "metric";
    auto revised = multi_revise_metric(order, metric_reports, sc_.mode);
    rec.threshold = revised.threshold;
    return revised.beliefs;
  }

  BeliefState apply(const Reset& ev, TraceRecord& rec) {
    runtime(ev.target);
    rec.mechanism = "reset";
    return ev.beliefs;
  }

  const Scenario& sc_;
  std::map<std::string, AgentRuntime> agents_;
};

}  // namespace

Trace run_scenario(const Scenario& scenario) { return Runner(scenario).run(); }

}  // namespace trustrev
