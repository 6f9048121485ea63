#include "trustrev/pseudometric.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "text_util.hpp"

namespace trustrev {

std::string_view mode_name(ThresholdMode mode) {
  return mode == ThresholdMode::Strict ? "strict" : "closure";
}

std::optional<ThresholdMode> parse_mode(std::string_view text) {
  if (text == "strict") return ThresholdMode::Strict;
  if (text == "closure") return ThresholdMode::Closure;
  return std::nullopt;
}

namespace {

void check_cap(const Signature& sig, std::size_t atom_cap) {
  if (sig.size() > atom_cap) {
    throw Error(ErrorCode::SignatureTooLarge, "metric signature has " + std::to_string(sig.size()) +
                                                  " atoms; the metric cap is " + std::to_string(atom_cap));
  }
}

std::string triple(const Signature& sig, StateIndex x, StateIndex y, StateIndex z) {
  return render_state(sig, State(x)) + ", " + render_state(sig, State(y)) + ", " + render_state(sig, State(z));
}

}  // namespace

TrustMetric::TrustMetric(Signature sig, std::vector<Distance> dist)
    : sig_(std::move(sig)), n_(sig_.state_count()), dist_(std::move(dist)) {
  if (dist_.size() != n_ * n_) {
    throw Error(ErrorCode::MissingPair, "distance matrix must have " + std::to_string(n_ * n_) + " entries");
  }
  for (StateIndex x = 0; x < n_; ++x) {
    if (dist_[x * n_ + x] != 0) {
      throw Error(ErrorCode::NonzeroDiagonal, "d(" + render_state(sig_, State(x)) + ", " +
                                                  render_state(sig_, State(x)) + ") must be 0");
    }
    for (StateIndex y = x + 1; y < n_; ++y) {
      if (dist_[x * n_ + y] != dist_[y * n_ + x]) {
        throw Error(ErrorCode::AxiomViolation, "symmetry fails for " + render_state(sig_, State(x)) + ", " +
                                                   render_state(sig_, State(y)));
      }
    }
  }
  for (StateIndex x = 0; x < n_; ++x) {
    for (StateIndex y = 0; y < n_; ++y) {
      const std::uint64_t dxy = dist_[x * n_ + y];
      for (StateIndex z = 0; z < n_; ++z) {
        if (dist_[x * n_ + z] > dxy + dist_[y * n_ + z]) {
          throw Error(ErrorCode::AxiomViolation,
                      "triangle inequality fails for (" + triple(sig_, x, y, z) + "): d(x,z)=" +
                          std::to_string(dist_[x * n_ + z]) + " > d(x,y)+d(y,z)=" +
                          std::to_string(dxy + dist_[y * n_ + z]));
        }
      }
    }
  }
  max_ = dist_.empty() ? 0 : *std::max_element(dist_.begin(), dist_.end());
}

TrustMetric TrustMetric::from_matrix(const Signature& sig, std::vector<Distance> matrix, std::size_t atom_cap) {
  check_cap(sig, atom_cap);
  return TrustMetric(sig, std::move(matrix));
}

TrustMetric TrustMetric::make(const Signature& sig, std::span<const MetricEntry> entries, std::size_t atom_cap) {
  check_cap(sig, atom_cap);
  const std::size_t n = sig.state_count();
  std::vector<Distance> dist(n * n, 0);
  std::vector<bool> given(n * n, false);
  for (const auto& e : entries) {
    const auto a = e.a.index();
    const auto b = e.b.index();
    if (a >= n || b >= n) throw Error(ErrorCode::InvalidStateLiteral, "state index out of range");
    if (a == b) {
      if (e.distance != 0) {
        throw Error(ErrorCode::NonzeroDiagonal, "d(" + render_state(sig, e.a) + ", " + render_state(sig, e.a) +
                                                    ") = " + std::to_string(e.distance) + ", must be 0");
      }
      continue;
    }
    if (given[a * n + b]) {
      throw Error(ErrorCode::DuplicatePair,
                  "pair " + render_state(sig, e.a) + " " + render_state(sig, e.b) + " given twice");
    }
    given[a * n + b] = given[b * n + a] = true;
    dist[a * n + b] = dist[b * n + a] = e.distance;
  }
  for (StateIndex a = 0; a < n; ++a) {
    for (StateIndex b = a + 1; b < n; ++b) {
      if (!given[a * n + b]) {
        throw Error(ErrorCode::MissingPair,
                    "no distance for " + render_state(sig, State(a)) + " " + render_state(sig, State(b)));
      }
    }
  }
  return TrustMetric(sig, std::move(dist));
}

std::vector<Distance> TrustMetric::levels() const {
  std::set<Distance> values(dist_.begin(), dist_.end());
  values.insert(0);
  return {values.begin(), values.end()};
}

TrustMetric make_metric(const Signature& sig, std::span<const MetricEntry> entries, std::size_t atom_cap) {
  return TrustMetric::make(sig, entries, atom_cap);
}

TrustMetric parse_metric_file(std::string_view text, std::size_t atom_cap) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw Error(ErrorCode::MalformedLine, "empty metric file");
  std::optional<Signature> sig;
  std::vector<MetricEntry> entries;
  std::set<std::pair<StateIndex, StateIndex>> seen;
  for (const auto& line : lines) {
    try {
      const auto [head, rest] = detail::split_word(line.text);
      if (!sig) {
        if (head != "signature") throw Error(ErrorCode::MalformedLine, "first line must be 'signature ...'");
        sig = Signature::parse(rest, std::max(atom_cap, kDefaultAtomCap));
        check_cap(*sig, atom_cap);
        continue;
      }
      const auto first_close = line.text.find('}');
      const auto second_close =
          first_close == std::string_view::npos ? first_close : line.text.find('}', first_close + 1);
      if (second_close == std::string_view::npos) {
        throw Error(ErrorCode::MalformedLine, "expected '<state> <state> <distance>'");
      }
      const State a = parse_state_literal(line.text.substr(0, first_close + 1), *sig);
      const State b = parse_state_literal(line.text.substr(first_close + 1, second_close - first_close), *sig);
      const auto number = detail::trim(line.text.substr(second_close + 1));
      Distance d = 0;
      const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), d);
      if (number.empty() || ec != std::errc{} || ptr != number.data() + number.size()) {
        throw Error(ErrorCode::MalformedLine, "expected a natural-number distance, got '" + std::string(number) + "'");
      }
      if (a == b && d != 0) {
        throw Error(ErrorCode::NonzeroDiagonal,
                    "d(" + render_state(*sig, a) + ", " + render_state(*sig, a) + ") must be 0");
      }
      if (a != b && !seen.insert(std::minmax(a.index(), b.index())).second) {
        throw Error(ErrorCode::DuplicatePair,
                    "pair " + render_state(*sig, a) + " " + render_state(*sig, b) + " given twice");
      }
      entries.push_back({a, b, d});
    } catch (const Error& e) {
      if (e.line()) throw;
      throw e.at_line(line.number);
    }
  }
  if (!sig) throw Error(ErrorCode::MalformedLine, "missing signature line");
  return TrustMetric::make(*sig, entries, atom_cap);
}

std::string render_metric_file(const TrustMetric& metric) {
  const auto& sig = metric.signature();
  std::string out = "signature";
  for (const auto& a : sig.atoms()) out += " " + a;
  out += '\n';
  for (StateIndex a = 0; a < sig.state_count(); ++a) {
    for (StateIndex b = a + 1; b < sig.state_count(); ++b) {
      out += render_state(sig, State(a)) + " " + render_state(sig, State(b)) + " " +
             std::to_string(metric.distance(State(a), State(b))) + "\n";
    }
  }
  return out;
}

namespace {

StatePartition closure_partition(const TrustMetric& metric, Distance threshold) {
  const auto n = static_cast<StateIndex>(metric.signature().state_count());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (StateIndex a = 0; a < n; ++a) {
    for (StateIndex b = a + 1; b < n; ++b) {
      if (metric.distance(State(a), State(b)) <= threshold) {
        const auto ra = find(a);
        const auto rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<std::size_t> labels(n);
  for (StateIndex a = 0; a < n; ++a) labels[a] = find(a);
  return StatePartition::from_labels(metric.signature(), labels);
}

StatePartition strict_partition(const TrustMetric& metric, Distance threshold) {
  const auto& sig = metric.signature();
  const auto n = static_cast<StateIndex>(sig.state_count());
  std::vector<StateSet> balls;
  balls.reserve(n);
  for (StateIndex a = 0; a < n; ++a) {
    StateSet ball(sig);
    for (StateIndex b = 0; b < n; ++b) {
      if (metric.distance(State(a), State(b)) <= threshold) ball.insert(State(b));
    }
    balls.push_back(std::move(ball));
  }
  std::vector<std::size_t> labels(n);
  for (StateIndex a = 0; a < n; ++a) {
    labels[a] = balls[a].first()->index();
    for (StateIndex b = a + 1; b < n; ++b) {
      if (metric.distance(State(a), State(b)) > threshold || balls[a] == balls[b]) continue;
      // Some u is within reach of one of a, b but not the other.
      const auto only_b = balls[b] - balls[a];
      const bool from_b = !only_b.empty();
      const State u = from_b ? *only_b.first() : *(balls[a] - balls[b]).first();
      const State x = from_b ? State(a) : State(b);
      const State y = from_b ? State(b) : State(a);
      throw Error(ErrorCode::ThresholdNotTransitive,
                  "at threshold " + std::to_string(threshold) + ": d(" + render_state(sig, x) + ", " +
                      render_state(sig, y) + ") <= " + std::to_string(threshold) + " and d(" +
                      render_state(sig, y) + ", " + render_state(sig, u) + ") <= " + std::to_string(threshold) +
                      " but d(" + render_state(sig, x) + ", " + render_state(sig, u) +
                      ") = " + std::to_string(metric.distance(x, u)));
    }
  }
  return StatePartition::from_labels(sig, labels);
}

StateSet satisfiable_models(const Signature& sig, const Formula& f) {
  auto m = models(sig, f);
  if (m.empty()) throw Error(ErrorCode::UnsatisfiableInput, "unsatisfiable input '" + render(f) + "'");
  return m;
}

void check_reports(std::span<const MetricReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::EmptyReportSet, "no reports to resolve");
  const auto& sig = reports.front().metric.signature();
  for (const auto& r : reports) {
    require_same_signature(sig, r.metric.signature(), "metric reports");
    satisfiable_models(sig, r.formula);
  }
}

// Threshold values at which some report's partition can change.
std::vector<Distance> candidate_thresholds(std::span<const MetricReport> reports) {
  std::set<Distance> values{0};
  for (const auto& r : reports) {
    const auto lv = r.metric.levels();
    values.insert(lv.begin(), lv.end());
  }
  return {values.begin(), values.end()};
}

StateSet joint_expansion(std::span<const MetricReport> reports, Distance threshold, ThresholdMode mode) {
  StateSet out = StateSet::full(reports.front().metric.signature());
  for (const auto& r : reports) {
    out &= expand(threshold_partition(r.metric, threshold, mode), r.formula);
    if (out.empty()) break;
  }
  return out;
}

}  // namespace

StatePartition threshold_partition(const TrustMetric& metric, Distance threshold, ThresholdMode mode) {
  return mode == ThresholdMode::Strict ? strict_partition(metric, threshold) : closure_partition(metric, threshold);
}

std::optional<Distance> min_nontrivial_threshold(const TrustMetric& metric) {
  // Partitions only change at distance values, and zero-distance classes are
  // always well-formed, so closure mode gives the answer for both modes.
  for (Distance level : metric.levels()) {
    if (!threshold_partition(metric, level, ThresholdMode::Closure).is_trivial()) return level;
  }
  return std::nullopt;
}

BeliefState pseudometric_revise(const FaithfulOrder& order, const TrustMetric& metric, const Formula& f,
                                ThresholdMode mode) {
  require_same_signature(order.signature(), metric.signature(), "pseudometric revision");
  satisfiable_models(order.signature(), f);
  const auto m = min_nontrivial_threshold(metric);
  if (!m) return order.beliefs();
  return trust_revise(order, threshold_partition(metric, *m, mode), f);
}

Distance resolve_threshold(std::span<const MetricReport> reports, ThresholdMode mode) {
  check_reports(reports);
  for (Distance level : candidate_thresholds(reports)) {
    if (!joint_expansion(reports, level, mode).empty()) return level;
  }
  // Unreachable: at the largest distance every partition is trivial and
  // every expansion is the full space.
  throw Error(ErrorCode::ConflictingReports, "no threshold reconciles the reports");
}

MetricRevision multi_revise_metric(const FaithfulOrder& order, std::span<const MetricReport> reports,
                                   ThresholdMode mode) {
  check_reports(reports);
  require_same_signature(order.signature(), reports.front().metric.signature(), "metric revision");
  const Distance m = resolve_threshold(reports, mode);
  return MetricRevision{m, BeliefState(order.minimal(joint_expansion(reports, m, mode)))};
}

}  // namespace trustrev
