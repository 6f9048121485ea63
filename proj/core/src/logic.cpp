#include "trustrev/logic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>

namespace trustrev {

// ---------------------------------------------------------------------------
// Signature

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  const auto head = static_cast<unsigned char>(text.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

Signature Signature::make(std::vector<std::string> atoms, std::size_t cap) {
  if (cap > kMaxAtomCap) {
    throw Error(ErrorCode::SignatureTooLarge,
                "atom cap " + std::to_string(cap) + " exceeds the hard limit of " +
                    std::to_string(kMaxAtomCap));
  }
  if (atoms.empty()) throw Error(ErrorCode::InvalidSignature, "signature has no atoms");
  if (atoms.size() > cap) {
    throw Error(ErrorCode::SignatureTooLarge, "signature has " + std::to_string(atoms.size()) +
                                                  " atoms; the cap is " + std::to_string(cap));
  }
  std::set<std::string_view> seen;
  for (const auto& a : atoms) {
    if (!is_identifier(a)) throw Error(ErrorCode::InvalidSignature, "invalid atom name '" + a + "'");
    if (a == "true" || a == "false") {
      throw Error(ErrorCode::InvalidSignature, "'" + a + "' is reserved");
    }
    if (!seen.insert(a).second) throw Error(ErrorCode::InvalidSignature, "duplicate atom '" + a + "'");
  }
  return Signature(std::make_shared<const Impl>(Impl{std::move(atoms)}));
}

Signature Signature::parse(std::string_view text, std::size_t cap) {
  std::vector<std::string> atoms;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!current.empty()) atoms.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) atoms.push_back(std::move(current));
  return make(std::move(atoms), cap);
}

std::optional<std::size_t> Signature::position(std::string_view name) const {
  const auto& atoms = impl_->atoms;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i] == name) return i;
  }
  return std::nullopt;
}

bool operator==(const Signature& a, const Signature& b) noexcept {
  return a.impl_ == b.impl_ || a.impl_->atoms == b.impl_->atoms;
}

void require_same_signature(const Signature& a, const Signature& b, std::string_view context) {
  if (!(a == b)) {
    throw Error(ErrorCode::SignatureMismatch, std::string(context) + ": operands use different signatures");
  }
}

// ---------------------------------------------------------------------------
// States

std::vector<std::string> true_atoms(const Signature& sig, State s) {
  std::vector<std::string> out;
  for (std::size_t p = 0; p < sig.size(); ++p) {
    if (s.has(p)) out.push_back(sig.atom(p));
  }
  return out;
}

State state_from_atoms(const Signature& sig, const std::vector<std::string>& names) {
  StateIndex index = 0;
  for (const auto& n : names) {
    const auto pos = sig.position(n);
    if (!pos) throw Error(ErrorCode::UnknownAtom, "atom '" + n + "' is not in the signature");
    index |= StateIndex{1} << *pos;
  }
  return State(index);
}

State parse_state_literal(std::string_view text, const Signature& sig) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::InvalidStateLiteral, "'" + std::string(text) + "': " + why);
  };
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '{') throw fail("expected '{'");
  ++i;
  StateIndex index = 0;
  bool expect_atom = false;
  bool any = false;
  while (true) {
    skip_ws();
    if (i >= text.size()) throw fail("missing '}'");
    if (text[i] == '}') {
      if (expect_atom) throw fail("expected an atom after ','");
      ++i;
      break;
    }
    if (any && !expect_atom) {
      if (text[i] != ',') throw fail("expected ',' or '}'");
      ++i;
      expect_atom = true;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    const auto name = text.substr(start, i - start);
    if (!is_identifier(name)) throw fail("expected an atom name");
    const auto pos = sig.position(name);
    if (!pos) throw Error(ErrorCode::UnknownAtom, "atom '" + std::string(name) + "' is not in the signature");
    const StateIndex bit = StateIndex{1} << *pos;
    if (index & bit) throw fail("atom '" + std::string(name) + "' listed twice");
    index |= bit;
    any = true;
    expect_atom = false;
  }
  skip_ws();
  if (i != text.size()) throw fail("trailing characters");
  return State(index);
}

std::string render_state(const Signature& sig, State s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t p = 0; p < sig.size(); ++p) {
    if (!s.has(p)) continue;
    if (!first) out += ',';
    out += sig.atom(p);
    first = false;
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// StateSet

namespace {

std::size_t word_count(const Signature& sig) { return (sig.state_count() + 63) / 64; }

std::uint64_t tail_mask(const Signature& sig) {
  const std::size_t n = sig.state_count();
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

StateSet::StateSet(Signature sig) : sig_(std::move(sig)), words_(word_count(sig_), 0) {}

StateSet StateSet::full(Signature sig) {
  StateSet out(std::move(sig));
  std::fill(out.words_.begin(), out.words_.end(), ~std::uint64_t{0});
  out.trim();
  return out;
}

StateSet StateSet::of(Signature sig, std::initializer_list<State> states) {
  StateSet out(std::move(sig));
  for (State s : states) {
    if (s.index() >= out.sig_.state_count()) {
      throw Error(ErrorCode::InvalidStateLiteral, "state index " + std::to_string(s.index()) + " out of range");
    }
    out.insert(s);
  }
  return out;
}

void StateSet::trim() noexcept { words_.back() &= tail_mask(sig_); }

std::size_t StateSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool StateSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::optional<State> StateSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return State(static_cast<StateIndex>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]))));
    }
  }
  return std::nullopt;
}

std::vector<State> StateSet::states() const {
  std::vector<State> out;
  out.reserve(size());
  for_each([&](State s) { out.push_back(s); });
  return out;
}

bool StateSet::is_subset_of(const StateSet& other) const {
  require_same_signature(sig_, other.sig_, "subset test");
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool StateSet::intersects(const StateSet& other) const {
  require_same_signature(sig_, other.sig_, "intersection test");
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

StateSet& StateSet::operator&=(const StateSet& other) {
  require_same_signature(sig_, other.sig_, "intersection");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

StateSet& StateSet::operator|=(const StateSet& other) {
  require_same_signature(sig_, other.sig_, "union");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

StateSet StateSet::operator&(const StateSet& other) const {
  StateSet out = *this;
  out &= other;
  return out;
}

StateSet StateSet::operator|(const StateSet& other) const {
  StateSet out = *this;
  out |= other;
  return out;
}

StateSet StateSet::operator-(const StateSet& other) const {
  require_same_signature(sig_, other.sig_, "difference");
  StateSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= ~other.words_[w];
  return out;
}

StateSet StateSet::complement() const {
  StateSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

bool operator==(const StateSet& a, const StateSet& b) {
  return a.sig_ == b.sig_ && a.words_ == b.words_;
}

std::vector<State> display_order(const StateSet& set) {
  auto out = set.states();
  std::reverse(out.begin(), out.end());
  return out;
}

std::string render_states(const StateSet& set) {
  std::string out;
  for (State s : display_order(set)) {
    if (!out.empty()) out += ' ';
    out += render_state(set.signature(), s);
  }
  return out;
}

StateSet all_states(const Signature& sig) { return StateSet::full(sig); }

StateSet atom_models(const Signature& sig, std::size_t position) {
  static constexpr std::uint64_t kLowPatterns[6] = {
      0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
      0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
  };
  StateSet out(sig);
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    if (position < 6) {
      out.words_[w] = kLowPatterns[position];
    } else {
      out.words_[w] = ((w >> (position - 6)) & 1U) ? ~std::uint64_t{0} : 0;
    }
  }
  out.trim();
  return out;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::top() { return Formula(std::make_shared<const Node>(Node{Kind::Top, 0, {}, {}})); }

Formula Formula::bottom() {
  return Formula(std::make_shared<const Node>(Node{Kind::Bottom, 0, {}, {}}));
}

Formula Formula::atom(std::size_t position, std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, position, std::move(name), {}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, 0, {}, {std::move(operand)}}));
}

Formula Formula::binary(Kind kind, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{kind, 0, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) { return binary(Kind::And, std::move(lhs), std::move(rhs)); }
Formula Formula::disjunction(Formula lhs, Formula rhs) { return binary(Kind::Or, std::move(lhs), std::move(rhs)); }
Formula Formula::implication(Formula lhs, Formula rhs) {
  return binary(Kind::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::equivalence(Formula lhs, Formula rhs) { return binary(Kind::Iff, std::move(lhs), std::move(rhs)); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.position == y.position && x.name == y.name && x.children == y.children;
}

bool holds(State s, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Bottom: return false;
    case Formula::Kind::Atom: return s.has(f.atom_position());
    case Formula::Kind::Not: return !holds(s, f.lhs());
    case Formula::Kind::And: return holds(s, f.lhs()) && holds(s, f.rhs());
    case Formula::Kind::Or: return holds(s, f.lhs()) || holds(s, f.rhs());
    case Formula::Kind::Implies: return !holds(s, f.lhs()) || holds(s, f.rhs());
    case Formula::Kind::Iff: return holds(s, f.lhs()) == holds(s, f.rhs());
  }
  return false;
}

StateSet models(const Signature& sig, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top: return StateSet::full(sig);
    case Formula::Kind::Bottom: return StateSet(sig);
    case Formula::Kind::Atom: {
      const auto pos = sig.position(f.atom_name());
      if (!pos || *pos != f.atom_position()) {
        throw Error(ErrorCode::UnknownAtom, "atom '" + f.atom_name() + "' is not bound to this signature");
      }
      return atom_models(sig, *pos);
    }
    case Formula::Kind::Not: return models(sig, f.lhs()).complement();
    case Formula::Kind::And: return models(sig, f.lhs()) & models(sig, f.rhs());
    case Formula::Kind::Or: return models(sig, f.lhs()) | models(sig, f.rhs());
    case Formula::Kind::Implies: return models(sig, f.lhs()).complement() | models(sig, f.rhs());
    case Formula::Kind::Iff: {
      const auto l = models(sig, f.lhs());
      const auto r = models(sig, f.rhs());
      return (l & r) | (l.complement() & r.complement());
    }
  }
  return StateSet(sig);
}

bool satisfiable(const Signature& sig, const Formula& f) { return !models(sig, f).empty(); }

Formula prop_of_state(const Signature& sig, State s) {
  std::optional<Formula> out;
  for (std::size_t p = 0; p < sig.size(); ++p) {
    Formula lit = Formula::atom(p, sig.atom(p));
    if (!s.has(p)) lit = Formula::negation(std::move(lit));
    out = out ? Formula::conjunction(std::move(*out), std::move(lit)) : std::move(lit);
  }
  return *out;
}

Formula dnf_of_stateset(const StateSet& set) {
  std::optional<Formula> out;
  for (State s : display_order(set)) {
    Formula term = prop_of_state(set.signature(), s);
    out = out ? Formula::disjunction(std::move(*out), std::move(term)) : std::move(term);
  }
  return out ? *out : Formula::bottom();
}

// ---------------------------------------------------------------------------
// BeliefState

BeliefState::BeliefState(StateSet models) : models_(std::move(models)) {
  if (models_.empty()) throw Error(ErrorCode::InconsistentBeliefs, "belief state has no models");
}

BeliefState BeliefState::from_formula(const Signature& sig, const Formula& f) {
  auto m = trustrev::models(sig, f);
  if (m.empty()) {
    throw Error(ErrorCode::InconsistentBeliefs, "beliefs '" + render(f) + "' are unsatisfiable");
  }
  return BeliefState(std::move(m));
}

}  // namespace trustrev
