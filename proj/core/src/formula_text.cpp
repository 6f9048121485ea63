// Formula grammar, loosest binding first:
//
//   iff     := implies ( "<->" iff )?
//   implies := or ( "->" implies )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "!" unary | primary
//   primary := atom | "true" | "false" | "(" iff ")"

#include <cctype>

#include "trustrev/logic.hpp"

namespace trustrev {

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "atom";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) { advance(); }

  Formula parse() {
    Formula f = parse_iff();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(std::string_view expected) const {
    std::string found = cur_.kind == Tok::End ? "end of input" : "'" + std::string(cur_.text) + "'";
    throw Error(ErrorCode::SyntaxError, "at position " + std::to_string(cur_.pos) + ": expected " +
                                            std::string(expected) + ", found " + found);
  }

  void expect(Tok kind, std::string_view expected) {
    if (cur_.kind != kind) fail(expected);
    advance();
  }

  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    const std::size_t start = i_;
    if (i_ >= text_.size()) {
      cur_ = {Tok::End, {}, start};
      return;
    }
    const char c = text_[i_];
    auto single = [&](Tok t) {
      ++i_;
      cur_ = {t, text_.substr(start, 1), start};
    };
    switch (c) {
      case '!': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    if (text_.substr(i_, 2) == "->") {
      i_ += 2;
      cur_ = {Tok::Implies, text_.substr(start, 2), start};
      return;
    }
    if (text_.substr(i_, 3) == "<->") {
      i_ += 3;
      cur_ = {Tok::Iff, text_.substr(start, 3), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) ++i_;
      const auto word = text_.substr(start, i_ - start);
      const Tok kind = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
      cur_ = {kind, word, start};
      return;
    }
    cur_ = {Tok::End, text_.substr(start, 1), start};
    throw Error(ErrorCode::SyntaxError,
                "at position " + std::to_string(start) + ": unexpected character '" + std::string(1, c) + "'");
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (cur_.kind == Tok::Iff) {
      advance();
      return Formula::equivalence(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (cur_.kind == Tok::Implies) {
      advance();
      return Formula::implication(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (cur_.kind == Tok::Or) {
      advance();
      lhs = Formula::disjunction(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (cur_.kind == Tok::And) {
      advance();
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    if (cur_.kind == Tok::Not) {
      advance();
      return Formula::negation(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    switch (cur_.kind) {
      case Tok::True: advance(); return Formula::top();
      case Tok::False: advance(); return Formula::bottom();
      case Tok::Ident: {
        const auto pos = sig_.position(cur_.text);
        if (!pos) {
          throw Error(ErrorCode::UnknownAtom, "atom '" + std::string(cur_.text) + "' at position " +
                                                  std::to_string(cur_.pos) + " is not in the signature");
        }
        Formula f = Formula::atom(*pos, std::string(cur_.text));
        advance();
        return f;
      }
      case Tok::LParen: {
        advance();
        Formula inner = parse_iff();
        expect(Tok::RParen, describe(Tok::RParen));
        return inner;
      }
      default: fail("atom, constant, '!' or '('");
    }
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t i_ = 0;
  Token cur_{Tok::End, {}, 0};
};

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

bool right_associative(Formula::Kind k) {
  return k == Formula::Kind::Implies || k == Formula::Kind::Iff;
}

std::string_view op_text(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::And: return " & ";
    case Formula::Kind::Or: return " | ";
    case Formula::Kind::Implies: return " -> ";
    case Formula::Kind::Iff: return " <-> ";
    default: return "";
  }
}

void render_into(const Formula& f, std::string& out);

void render_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(child, out);
  if (parens) out += ')';
}

void render_into(const Formula& f, std::string& out) {
  const auto k = f.kind();
  switch (k) {
    case Formula::Kind::Top: out += "true"; return;
    case Formula::Kind::Bottom: out += "false"; return;
    case Formula::Kind::Atom: out += f.atom_name(); return;
    case Formula::Kind::Not:
      out += '!';
      render_child(f.lhs(), precedence(f.lhs().kind()) < precedence(k), out);
      return;
    default: break;
  }
  const int p = precedence(k);
  const int lp = precedence(f.lhs().kind());
  const int rp = precedence(f.rhs().kind());
  render_child(f.lhs(), lp < p || (lp == p && right_associative(k)), out);
  out += op_text(k);
  render_child(f.rhs(), rp < p || (rp == p && !right_associative(k)), out);
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).parse(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace trustrev
