#pragma once

// Propositional substrate: signatures, states, state sets, formulas.
//
// A state over a signature of n atoms is identified by its canonical index
// sum(2^position) over the atoms it makes true, so the state space is always
// [0, 2^n). Everything downstream enumerates states explicitly.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustrev/error.hpp"

namespace trustrev {

inline constexpr std::size_t kDefaultAtomCap = 16;
// Hard ceiling on any raised cap; 2^24 states is where explicit sets stop being practical.
inline constexpr std::size_t kMaxAtomCap = 24;

using StateIndex = std::uint32_t;

class Signature {
 public:
  // Throws InvalidSignature on malformed or duplicate names and
  // SignatureTooLarge when the atom count exceeds `cap`.
  static Signature make(std::vector<std::string> atoms, std::size_t cap = kDefaultAtomCap);
  // Atoms separated by whitespace and/or commas.
  static Signature parse(std::string_view text, std::size_t cap = kDefaultAtomCap);

  std::size_t size() const noexcept { return impl_->atoms.size(); }
  std::size_t state_count() const noexcept { return std::size_t{1} << size(); }
  const std::vector<std::string>& atoms() const noexcept { return impl_->atoms; }
  const std::string& atom(std::size_t position) const { return impl_->atoms.at(position); }
  std::optional<std::size_t> position(std::string_view name) const;

  friend bool operator==(const Signature& a, const Signature& b) noexcept;

 private:
  struct Impl {
    std::vector<std::string> atoms;
  };
  explicit Signature(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

bool is_identifier(std::string_view text) noexcept;

// Throws SignatureMismatch unless both signatures are equal.
void require_same_signature(const Signature& a, const Signature& b, std::string_view context);

class State {
 public:
  constexpr State() = default;
  constexpr explicit State(StateIndex index) : index_(index) {}

  constexpr StateIndex index() const noexcept { return index_; }
  constexpr bool has(std::size_t position) const noexcept { return (index_ >> position) & 1U; }

  friend constexpr auto operator<=>(State, State) = default;

 private:
  StateIndex index_ = 0;
};

std::vector<std::string> true_atoms(const Signature& sig, State s);
// Throws UnknownAtom.
State state_from_atoms(const Signature& sig, const std::vector<std::string>& names);

// `{a,b}` / `{}`; atoms may appear in any order, whitespace is ignored.
State parse_state_literal(std::string_view text, const Signature& sig);
// Atoms rendered in signature order.
std::string render_state(const Signature& sig, State s);

// A set of states over one signature, stored as a bitset over the state space.
class StateSet {
 public:
  explicit StateSet(Signature sig);
  static StateSet full(Signature sig);
  static StateSet of(Signature sig, std::initializer_list<State> states);

  const Signature& signature() const noexcept { return sig_; }

  bool contains(State s) const noexcept {
    return (words_[s.index() >> 6] >> (s.index() & 63U)) & 1U;
  }
  void insert(State s) noexcept { words_[s.index() >> 6] |= std::uint64_t{1} << (s.index() & 63U); }
  void erase(State s) noexcept { words_[s.index() >> 6] &= ~(std::uint64_t{1} << (s.index() & 63U)); }

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  bool is_full() const noexcept { return size() == sig_.state_count(); }
  std::optional<State> first() const noexcept;
  // Members in canonical index order.
  std::vector<State> states() const;

  bool is_subset_of(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

  StateSet operator&(const StateSet& other) const;
  StateSet operator|(const StateSet& other) const;
  StateSet operator-(const StateSet& other) const;
  StateSet complement() const;
  StateSet& operator&=(const StateSet& other);
  StateSet& operator|=(const StateSet& other);

  friend bool operator==(const StateSet& a, const StateSet& b);

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<StateIndex>(__builtin_ctzll(bits));
        fn(State(static_cast<StateIndex>(w * 64) + bit));
        bits &= bits - 1;
      }
    }
  }

 private:
  friend StateSet atom_models(const Signature& sig, std::size_t position);
  void trim() noexcept;

  Signature sig_;
  std::vector<std::uint64_t> words_;
};

// Members in display order: descending canonical index, so the all-true state
// comes first and the empty state last. All text output uses this order.
std::vector<State> display_order(const StateSet& set);

// `{a,b} {a}` in display order; empty string for the empty set.
std::string render_states(const StateSet& set);

StateSet all_states(const Signature& sig);
// States in which the atom at `position` is true.
StateSet atom_models(const Signature& sig, std::size_t position);

class Formula {
 public:
  enum class Kind { Top, Bottom, Atom, Not, And, Or, Implies, Iff };

  static Formula top();
  static Formula bottom();
  static Formula atom(std::size_t position, std::string name);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Kind kind() const noexcept { return node_->kind; }
  std::size_t atom_position() const noexcept { return node_->position; }
  const std::string& atom_name() const noexcept { return node_->name; }
  // Operand of Not, or left child of a binary connective.
  const Formula& lhs() const { return node_->children.at(0); }
  const Formula& rhs() const { return node_->children.at(1); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::size_t position = 0;
    std::string name;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Kind kind, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

// Throws SyntaxError (with position and expected token) or UnknownAtom.
Formula parse_formula(std::string_view text, const Signature& sig);
// Minimal parentheses under the parse grammar; parse(render(f)) == f.
std::string render(const Formula& f);

bool holds(State s, const Formula& f);
// Throws UnknownAtom if `f` mentions an atom outside `sig`.
StateSet models(const Signature& sig, const Formula& f);
bool satisfiable(const Signature& sig, const Formula& f);

// Conjunction of one literal per atom in signature order.
Formula prop_of_state(const Signature& sig, State s);
// Disjunction of prop_of_state over members in display order; bottom when empty.
Formula dnf_of_stateset(const StateSet& set);

// The states an agent considers possible; never empty.
class BeliefState {
 public:
  // Throws InconsistentBeliefs when `models` is empty.
  explicit BeliefState(StateSet models);
  static BeliefState from_formula(const Signature& sig, const Formula& f);

  const StateSet& models() const noexcept { return models_; }
  const Signature& signature() const noexcept { return models_.signature(); }

  friend bool operator==(const BeliefState&, const BeliefState&) = default;

 private:
  StateSet models_;
};

}  // namespace trustrev
