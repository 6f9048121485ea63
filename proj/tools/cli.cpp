#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "trustrev/trustrev.hpp"

namespace trustrev::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> rendered_states(const StateSet& set) {
  std::vector<std::string> out;
  for (State s : display_order(set)) out.push_back(render_state(set.signature(), s));
  return out;
}

ThresholdMode to_mode(const std::string& text) { return *parse_mode(text); }

void warn_metric_cap(std::size_t cap, std::ostream& err) {
  if (cap > kDefaultMetricAtomCap) {
    err << "warning: metric atom cap raised to " << cap
        << "; triangle validation is cubic in the number of states\n";
  }
}

struct ReviseOptions {
  std::string signature;
  std::string beliefs;
  std::string order;
  std::string partition;
  std::string metric;
  std::string formula;
  std::string mode = "strict";
  std::string format = "text";
  std::size_t atom_cap = kDefaultAtomCap;
  std::size_t metric_cap = kDefaultMetricAtomCap;
};

FaithfulOrder make_order(const std::string& spec, const BeliefState& beliefs) {
  if (spec == "dalal") return dalal_order(beliefs);
  if (spec == "two_level") return two_level_order(beliefs);
  const std::string prefix = "explicit:";
  if (spec.rfind(prefix, 0) == 0) {
    const auto ranks = parse_ranking_file(read_file(spec.substr(prefix.size())), beliefs.signature());
    return explicit_order(beliefs, ranks);
  }
  throw CLI::ValidationError("--order", "expected two_level, dalal or explicit:<path>");
}

int cmd_revise(const ReviseOptions& o, std::ostream& out, std::ostream& err) {
  const auto sig = Signature::parse(o.signature, o.atom_cap);
  const auto beliefs = BeliefState::from_formula(sig, parse_formula(o.beliefs, sig));
  const auto order = make_order(o.order, beliefs);
  const auto formula = parse_formula(o.formula, sig);

  std::string mechanism = "agm";
  std::optional<Distance> threshold;
  std::optional<BeliefState> result;
  if (!o.partition.empty()) {
    mechanism = "partition";
    const auto file = parse_partition_file(read_file(o.partition), sig);
    result = trust_revise(order, file.partition, formula);
  } else if (!o.metric.empty()) {
    mechanism = "metric";
    warn_metric_cap(o.metric_cap, err);
    const auto metric = parse_metric_file(read_file(o.metric), o.metric_cap);
    require_same_signature(sig, metric.signature(), "metric file");
    result = pseudometric_revise(order, metric, formula, to_mode(o.mode));
    threshold = min_nontrivial_threshold(metric);
  } else {
    result = agm_revise(order, formula);
  }

  const auto states = rendered_states(result->models());
  const auto dnf = render(dnf_of_stateset(result->models()));
  if (o.format == "structured") {
    json j;
    j["mechanism"] = mechanism;
    j["threshold"] = threshold ? json(*threshold) : json(nullptr);
    j["result_states"] = states;
    j["result_dnf"] = dnf;
    out << j.dump() << "\n";
    return kSuccess;
  }
  if (mechanism == "metric") out << "threshold: " << (threshold ? std::to_string(*threshold) : "none") << "\n";
  out << "result: " << render_states(result->models()) << "\n";
  out << "dnf: " << dnf << "\n";
  return kSuccess;
}

struct ExpandOptions {
  std::string partition;
  std::string formula;
  std::string signature;
  std::string format = "text";
};

int cmd_expand(const ExpandOptions& o, std::ostream& out) {
  std::optional<Signature> sig;
  if (!o.signature.empty()) sig = Signature::parse(o.signature);
  const auto file = parse_partition_file(read_file(o.partition), sig);
  const auto formula = parse_formula(o.formula, file.signature);
  const auto expansion = expand(file.partition, formula);
  const auto dnf = render(trust_expansion(file.partition, formula));
  if (o.format == "structured") {
    json j;
    j["expansion"] = rendered_states(expansion);
    j["dnf"] = dnf;
    out << j.dump() << "\n";
    return kSuccess;
  }
  out << "expansion: " << render_states(expansion) << "\n";
  out << "dnf: " << dnf << "\n";
  return kSuccess;
}

int cmd_check_partition(const std::string& path, const std::string& signature, std::ostream& out) {
  std::optional<Signature> sig;
  if (!signature.empty()) sig = Signature::parse(signature);
  const auto file = parse_partition_file(read_file(path), sig);
  out << "ok, cells=" << file.partition.cell_count() << "\n";
  out << render_partition(file.partition) << "\n";
  return kSuccess;
}

struct CheckMetricOptions {
  std::string path;
  std::optional<Distance> threshold;
  std::string mode = "strict";
  std::size_t metric_cap = kDefaultMetricAtomCap;
};

int cmd_check_metric(const CheckMetricOptions& o, std::ostream& out, std::ostream& err) {
  warn_metric_cap(o.metric_cap, err);
  const auto metric = parse_metric_file(read_file(o.path), o.metric_cap);
  const auto m = min_nontrivial_threshold(metric);
  out << "ok, min_nontrivial_threshold=" << (m ? std::to_string(*m) : "none") << "\n";
  if (o.threshold) out << render_partition(threshold_partition(metric, *o.threshold, to_mode(o.mode))) << "\n";
  return kSuccess;
}

struct ScenarioOptions {
  std::string path;
  std::string format = "text";
  std::string trace_path;
  bool strict_events = false;
  std::size_t metric_cap = kDefaultMetricAtomCap;
};

int cmd_scenario_run(const ScenarioOptions& o, std::ostream& out, std::ostream& err) {
  warn_metric_cap(o.metric_cap, err);
  const auto scenario = load_scenario_file(o.path, o.metric_cap);
  const auto trace = run_scenario(scenario);
  const auto text =
      render_trace(trace, o.format == "structured" ? TraceFormat::Structured : TraceFormat::Text);
  if (o.trace_path.empty()) {
    out << text;
  } else {
    std::ofstream file(o.trace_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::IoError, "cannot write '" + o.trace_path + "'");
    file << text;
  }
  std::size_t failures = 0;
  for (const auto& r : trace.records) failures += r.ok() ? 0 : 1;
  if (failures > 0) err << failures << " of " << trace.records.size() << " events recorded errors\n";
  return (o.strict_events && failures > 0) ? kSemanticError : kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trust-sensitive belief revision"};
  app.name(args.empty() ? "trustrev" : std::filesystem::path(args.front()).filename().string());
  app.require_subcommand(1);

  const std::vector<std::string> formats{"text", "structured"};
  const std::vector<std::string> modes{"strict", "closure"};

  ReviseOptions revise;
  auto* revise_cmd = app.add_subcommand("revise", "Revise beliefs by one formula");
  revise_cmd->add_option("--signature", revise.signature, "Atoms, space or comma separated")->required();
  revise_cmd->add_option("--beliefs", revise.beliefs, "Current beliefs as a formula")->required();
  revise_cmd->add_option("--order", revise.order, "two_level | dalal | explicit:<path>")->required();
  auto* part_opt = revise_cmd->add_option("--partition", revise.partition, "Trust partition file");
  auto* metric_opt = revise_cmd->add_option("--metric", revise.metric, "Trust metric file");
  part_opt->excludes(metric_opt);
  revise_cmd->add_option("--formula", revise.formula, "Reported formula")->required();
  revise_cmd->add_option("--mode", revise.mode, "Threshold mode for metrics")->check(CLI::IsMember(modes));
  revise_cmd->add_option("--format", revise.format)->check(CLI::IsMember(formats));
  revise_cmd->add_option("--atom-cap", revise.atom_cap, "Maximum signature size")
      ->check(CLI::Range(std::size_t{1}, kMaxAtomCap));
  revise_cmd->add_option("--metric-cap", revise.metric_cap, "Maximum signature size for metrics")
      ->check(CLI::Range(std::size_t{1}, kMaxAtomCap));

  ExpandOptions expand_opts;
  auto* expand_cmd = app.add_subcommand("expand", "Expand a formula by a trust partition");
  expand_cmd->add_option("--partition", expand_opts.partition, "Trust partition file")->required();
  expand_cmd->add_option("--formula", expand_opts.formula)->required();
  expand_cmd->add_option("--signature", expand_opts.signature, "Needed when the file declares none");
  expand_cmd->add_option("--format", expand_opts.format)->check(CLI::IsMember(formats));

  auto* check_cmd = app.add_subcommand("check", "Validate partition and metric files");
  check_cmd->require_subcommand(1);
  std::string check_part_path;
  std::string check_part_sig;
  auto* check_part = check_cmd->add_subcommand("partition", "Validate a partition file");
  check_part->add_option("path", check_part_path)->required();
  check_part->add_option("--signature", check_part_sig);
  CheckMetricOptions check_metric;
  auto* check_met = check_cmd->add_subcommand("metric", "Validate a metric file");
  check_met->add_option("path", check_metric.path)->required();
  check_met->add_option("--threshold", check_metric.threshold, "Print the partition at this threshold");
  check_met->add_option("--mode", check_metric.mode)->check(CLI::IsMember(modes));
  check_met->add_option("--metric-cap", check_metric.metric_cap)->check(CLI::Range(std::size_t{1}, kMaxAtomCap));

  auto* scenario_cmd = app.add_subcommand("scenario", "Run scenario files");
  scenario_cmd->require_subcommand(1);
  ScenarioOptions scenario;
  auto* run_cmd = scenario_cmd->add_subcommand("run", "Run a scenario and print its trace");
  run_cmd->add_option("path", scenario.path)->required();
  run_cmd->add_option("--format", scenario.format)->check(CLI::IsMember(formats));
  run_cmd->add_option("--trace", scenario.trace_path, "Write the trace here instead of stdout");
  run_cmd->add_flag("--strict-events", scenario.strict_events, "Exit 2 if any event recorded an error");
  run_cmd->add_option("--metric-cap", scenario.metric_cap)->check(CLI::Range(std::size_t{1}, kMaxAtomCap));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("trustrev");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (revise_cmd->parsed()) return cmd_revise(revise, out, err);
    if (expand_cmd->parsed()) return cmd_expand(expand_opts, out);
    if (check_part->parsed()) return cmd_check_partition(check_part_path, check_part_sig, out);
    if (check_met->parsed()) return cmd_check_metric(check_metric, out, err);
    if (run_cmd->parsed()) return cmd_scenario_run(scenario, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kSemanticError;
  }
  return kUsageError;
}

}  // namespace trustrev::cli
