#include "trustrev/partition.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "text_util.hpp"

namespace trustrev {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

}  // namespace

StatePartition StatePartition::make(const Signature& sig, std::vector<StateSet> cells) {
  std::vector<std::size_t> owner(sig.state_count(), kUnassigned);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    require_same_signature(sig, cells[c].signature(), "partition cell");
    if (cells[c].empty()) throw Error(ErrorCode::EmptyCell, "cell " + std::to_string(c + 1) + " is empty");
    cells[c].for_each([&](State s) {
      if (owner[s.index()] != kUnassigned) {
        throw Error(ErrorCode::OverlappingCells,
                    "cells " + std::to_string(owner[s.index()] + 1) + " and " + std::to_string(c + 1) +
                        " both contain " + render_state(sig, s));
      }
      owner[s.index()] = c;
    });
  }
  for (StateIndex i = 0; i < owner.size(); ++i) {
    if (owner[i] == kUnassigned) {
      throw Error(ErrorCode::NotExhaustive, "state " + render_state(sig, State(i)) + " is in no cell");
    }
  }

  std::sort(cells.begin(), cells.end(),
            [](const StateSet& a, const StateSet& b) { return *a.first() < *b.first(); });
  std::vector<std::size_t> cell_of_index(sig.state_count());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c].for_each([&](State s) { cell_of_index[s.index()] = c; });
  }
  return StatePartition(sig, std::move(cells), std::move(cell_of_index));
}

StatePartition StatePartition::from_labels(const Signature& sig, const std::vector<std::size_t>& labels) {
  if (labels.size() != sig.state_count()) {
    throw Error(ErrorCode::NotExhaustive, "expected a cell label for each of the " +
                                              std::to_string(sig.state_count()) + " states");
  }
  std::map<std::size_t, StateSet> by_label;
  for (StateIndex i = 0; i < labels.size(); ++i) {
    by_label.try_emplace(labels[i], sig).first->second.insert(State(i));
  }
  std::vector<StateSet> cells;
  cells.reserve(by_label.size());
  for (auto& [label, cell] : by_label) cells.push_back(std::move(cell));
  return make(sig, std::move(cells));
}

StatePartition make_partition(const Signature& sig, std::vector<StateSet> cells) {
  return StatePartition::make(sig, std::move(cells));
}

StatePartition trivial_partition(const Signature& sig) {
  return StatePartition::make(sig, {StateSet::full(sig)});
}

StatePartition unit_partition(const Signature& sig) {
  std::vector<StateSet> cells;
  cells.reserve(sig.state_count());
  for (StateIndex i = 0; i < sig.state_count(); ++i) cells.push_back(StateSet::of(sig, {State(i)}));
  return StatePartition::make(sig, std::move(cells));
}

bool is_refinement(const StatePartition& finer, const StatePartition& coarser) {
  require_same_signature(finer.signature(), coarser.signature(), "refinement test");
  return std::all_of(finer.cells().begin(), finer.cells().end(), [&](const StateSet& cell) {
    return cell.is_subset_of(coarser.cell_of(*cell.first()));
  });
}

namespace {

// Positions of the cells that meet the models of `f`, in canonical order.
std::vector<std::size_t> cells_hit(const StatePartition& partition, const Formula& f) {
  const StateSet m = models(partition.signature(), f);
  std::vector<bool> hit(partition.cell_count(), false);
  m.for_each([&](State s) { hit[partition.cell_index_of(s)] = true; });
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < hit.size(); ++c) {
    if (hit[c]) out.push_back(c);
  }
  return out;
}

}  // namespace

StateSet expand(const StatePartition& partition, const Formula& f) {
  StateSet out(partition.signature());
  for (auto c : cells_hit(partition, f)) out |= partition.cells()[c];
  return out;
}

Formula trust_expansion(const StatePartition& partition, const Formula& f) {
  const auto& sig = partition.signature();
  std::optional<Formula> out;
  const auto hit = cells_hit(partition, f);
  for (auto c = hit.rbegin(); c != hit.rend(); ++c) {
    for (State s : display_order(partition.cells()[*c])) {
      Formula term = prop_of_state(sig, s);
      out = out ? Formula::disjunction(std::move(*out), std::move(term)) : std::move(term);
    }
  }
  return out ? *out : Formula::bottom();
}

StatePartition parse_partition(std::string_view text, const Signature& sig) {
  std::vector<StateSet> cells;
  std::size_t start = 0;
  while (true) {
    const auto bar = text.find('|', start);
    const auto chunk = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    std::vector<std::string_view> literals;
    if (!detail::split_state_literals(chunk, literals)) {
      throw Error(ErrorCode::InvalidStateLiteral,
                  "cell " + std::to_string(cells.size() + 1) + ": expected state literals, got '" +
                      std::string(detail::trim(chunk)) + "'");
    }
    StateSet cell(sig);
    for (auto lit : literals) {
      const State s = parse_state_literal(lit, sig);
      if (cell.contains(s)) {
        throw Error(ErrorCode::OverlappingCells,
                    "cell " + std::to_string(cells.size() + 1) + " lists " + render_state(sig, s) + " twice");
      }
      cell.insert(s);
    }
    cells.push_back(std::move(cell));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return make_partition(sig, std::move(cells));
}

std::string render_partition(const StatePartition& partition) {
  std::string out;
  const auto& cells = partition.cells();
  for (auto cell = cells.rbegin(); cell != cells.rend(); ++cell) {
    if (!out.empty()) out += " | ";
    out += render_states(*cell);
  }
  return out;
}

PartitionFile parse_partition_file(std::string_view text, const std::optional<Signature>& sig) {
  std::optional<Signature> declared;
  std::optional<StatePartition> partition;
  for (const auto& line : detail::content_lines(text)) {
    try {
      const auto [head, rest] = detail::split_word(line.text);
      if (head == "signature") {
        if (declared || partition) throw Error(ErrorCode::MalformedLine, "unexpected signature line");
        declared = Signature::parse(rest);
        if (sig) require_same_signature(*sig, *declared, "partition file");
        continue;
      }
      if (partition) throw Error(ErrorCode::MalformedLine, "a partition file holds a single partition");
      const auto& use = declared ? declared : sig;
      if (!use) throw Error(ErrorCode::MalformedLine, "no signature declared before the partition");
      partition = parse_partition(line.text, *use);
    } catch (const Error& e) {
      if (e.line()) throw;
      throw e.at_line(line.number);
    }
  }
  if (!partition) throw Error(ErrorCode::MalformedLine, "no partition found");
  return PartitionFile{partition->signature(), *partition};
}

}  // namespace trustrev
