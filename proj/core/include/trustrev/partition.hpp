#pragma once

// State partitions as trust encodings. A source is trusted to distinguish two
// states exactly when they fall in different cells.

#include <string>
#include <string_view>
#include <vector>

#include "trustrev/logic.hpp"

namespace trustrev {

class StatePartition {
 public:
  // Validates exhaustiveness, disjointness and non-emptiness. Cells are stored
  // in canonical order (by least member index), so equality is structural.
  // Throws OverlappingCells, NotExhaustive, EmptyCell, SignatureMismatch.
  static StatePartition make(const Signature& sig, std::vector<StateSet> cells);
  // Cells given as a cell label per state index; labels need not be dense.
  static StatePartition from_labels(const Signature& sig, const std::vector<std::size_t>& labels);

  const Signature& signature() const noexcept { return sig_; }
  const std::vector<StateSet>& cells() const noexcept { return cells_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  std::size_t cell_index_of(State s) const { return cell_of_index_.at(s.index()); }
  const StateSet& cell_of(State s) const { return cells_[cell_index_of(s)]; }

  bool is_trivial() const noexcept { return cells_.size() == 1; }
  bool is_unit() const noexcept { return cells_.size() == sig_.state_count(); }

  friend bool operator==(const StatePartition& a, const StatePartition& b) {
    return a.sig_ == b.sig_ && a.cells_ == b.cells_;
  }

 private:
  StatePartition(Signature sig, std::vector<StateSet> cells, std::vector<std::size_t> cell_of_index)
      : sig_(std::move(sig)), cells_(std::move(cells)), cell_of_index_(std::move(cell_of_index)) {}

  Signature sig_;
  std::vector<StateSet> cells_;
  std::vector<std::size_t> cell_of_index_;
};

StatePartition make_partition(const Signature& sig, std::vector<StateSet> cells);
StatePartition trivial_partition(const Signature& sig);
StatePartition unit_partition(const Signature& sig);

// True iff every cell of `finer` lies inside some cell of `coarser`.
bool is_refinement(const StatePartition& finer, const StatePartition& coarser);

// Union of the cells that contain at least one model of `f`.
StateSet expand(const StatePartition& partition, const Formula& f);
// DNF whose models are exactly expand(partition, f); each cell contributes
// once. Cells and states appear in display order.
Formula trust_expansion(const StatePartition& partition, const Formula& f);

// Text form: cells separated by '|', states separated by spaces or commas,
// e.g. `{sick,diam} {sick} | {diam} {}`. Rendering lists cells and states in
// display order, the reverse of the canonical storage order.
StatePartition parse_partition(std::string_view text, const Signature& sig);
std::string render_partition(const StatePartition& partition);

struct PartitionFile {
  Signature signature;
  StatePartition partition;
};

// A partition file holds an optional `signature a b ...` line and one
// partition line; `#` starts a comment. When `sig` is given and the file also
// declares one, they must agree.
PartitionFile parse_partition_file(std::string_view text, const std::optional<Signature>& sig = std::nullopt);

}  // namespace trustrev
