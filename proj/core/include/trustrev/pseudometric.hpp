#pragma once

// Graded trust. A source's trust metric measures how confidently it can tell
// two states apart: distance 0 means "indistinguishable to this source".
// Thresholding a metric at i groups states within distance i, giving a
// partition that coarsens as i grows.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trustrev/logic.hpp"
#include "trustrev/partition.hpp"
#include "trustrev/revision.hpp"

namespace trustrev {

using Distance = std::uint32_t;

// Triangle validation is cubic in the state count, so metrics default to a
// smaller signature cap than the rest of the engine.
inline constexpr std::size_t kDefaultMetricAtomCap = 8;

enum class ThresholdMode {
  // Cells are the balls {t : d(s,t) <= i}; fails when those balls overlap
  // without coinciding.
  Strict,
  // Cells are connected components of the graph with edges d(s,t) <= i.
  Closure,
};

std::string_view mode_name(ThresholdMode mode);
// Accepts "strict" / "closure".
std::optional<ThresholdMode> parse_mode(std::string_view text);

struct MetricEntry {
  State a;
  State b;
  Distance distance;
};

class TrustMetric {
 public:
  // Throws MissingPair, DuplicatePair, NonzeroDiagonal, AxiomViolation,
  // SignatureTooLarge.
  static TrustMetric make(const Signature& sig, std::span<const MetricEntry> entries,
                          std::size_t atom_cap = kDefaultMetricAtomCap);
  // Row-major distance matrix over state indices; validated like make().
  static TrustMetric from_matrix(const Signature& sig, std::vector<Distance> matrix,
                                 std::size_t atom_cap = kDefaultMetricAtomCap);

  const Signature& signature() const noexcept { return sig_; }
  Distance distance(State a, State b) const { return dist_[a.index() * n_ + b.index()]; }
  Distance max_distance() const noexcept { return max_; }
  // Distinct distance values in increasing order, always starting at 0.
  std::vector<Distance> levels() const;

  friend bool operator==(const TrustMetric& a, const TrustMetric& b) {
    return a.sig_ == b.sig_ && a.dist_ == b.dist_;
  }

 private:
  TrustMetric(Signature sig, std::vector<Distance> dist);

  Signature sig_;
  std::size_t n_;
  std::vector<Distance> dist_;
  Distance max_ = 0;
};

TrustMetric make_metric(const Signature& sig, std::span<const MetricEntry> entries,
                        std::size_t atom_cap = kDefaultMetricAtomCap);

// Metric file: `signature a b ...` first, then one `<state> <state> <natural>`
// line per unordered pair of distinct states. `#` starts a comment.
TrustMetric parse_metric_file(std::string_view text, std::size_t atom_cap = kDefaultMetricAtomCap);
std::string render_metric_file(const TrustMetric& metric);

// Throws ThresholdNotTransitive in strict mode, naming a witness triple.
StatePartition threshold_partition(const TrustMetric& metric, Distance threshold,
                                   ThresholdMode mode = ThresholdMode::Strict);

// Least threshold whose partition is not the single-cell one; nullopt when
// the metric is identically zero.
std::optional<Distance> min_nontrivial_threshold(const TrustMetric& metric);

// Trust-sensitive revision by the partition at the least non-trivial
// threshold; the belief models when the source distinguishes nothing.
BeliefState pseudometric_revise(const FaithfulOrder& order, const TrustMetric& metric, const Formula& f,
                                ThresholdMode mode = ThresholdMode::Strict);

struct MetricReport {
  Formula formula;
  TrustMetric metric;
};

// Least threshold at which the expansions of all reports share a state.
// Throws EmptyReportSet, UnsatisfiableInput, ThresholdNotTransitive (strict).
Distance resolve_threshold(std::span<const MetricReport> reports, ThresholdMode mode = ThresholdMode::Strict);

struct MetricRevision {
  Distance threshold;
  BeliefState beliefs;
};

// Revision by simultaneous reports at the least consistent threshold, applied
// uniformly to every source.
MetricRevision multi_revise_metric(const FaithfulOrder& order, std::span<const MetricReport> reports,
                                   ThresholdMode mode = ThresholdMode::Strict);

}  // namespace trustrev
