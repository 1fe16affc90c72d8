#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"

namespace mmerge {

// Grammar, loosest binding first:
//   iff     := implies ( "<->" iff )?
//   implies := or ( "->" implies )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "!" unary | atom
//   atom    := "true" | "false" | identifier | "(" iff ")"
// A flat chain `a & b & c` becomes one n-ary node; explicit parentheses keep
// their nesting so printing and re-parsing reproduce the same tree.
class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    skip_space();
    if (at_end()) fail("empty formula");
    Formula f = parse_iff();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (accept("<->")) return Formula::Iff(lhs, parse_iff());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept("->")) return Formula::Implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> kids{parse_and()};
    while (accept("|")) kids.push_back(parse_and());
    return kids.size() == 1 ? kids.front() : Formula::Or(std::move(kids));
  }

  Formula parse_and() {
    std::vector<Formula> kids{parse_unary()};
    while (accept("&")) kids.push_back(parse_unary());
    return kids.size() == 1 ? kids.front() : Formula::And(std::move(kids));
  }

  Formula parse_unary() {
    if (accept("!")) return Formula::Not(parse_unary());
    return parse_atom();
  }

  Formula parse_atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    if (accept("(")) {
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    const std::size_t start = pos_;
    auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto is_alnum = [&](char c) { return is_alpha(c) || (c >= '0' && c <= '9'); };
    if (!is_alpha(text_[pos_])) fail(std::string("unexpected '") + text_[pos_] + "'");
    while (!at_end() && is_alnum(text_[pos_])) advance();
    while (!at_end() && text_[pos_] == '\'') advance();
    const std::string word(text_.substr(start, pos_ - start));
    if (word == "true") return Formula::True();
    if (word == "false") return Formula::False();
    return Formula::Var(Variable(word));
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void skip_space() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      advance();
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

inline Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

}  // namespace mmerge
