#pragma once

// Small lexer shared by the word, point, spec and rule parsers.

#include <cctype>
#include <string>
#include <string_view>

#include "shiftz/words.hpp"

namespace shiftz::detail {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool consume(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!consume(tok)) fail("expected '" + std::string(tok) + "'");
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_) + " in \"" +
                                      std::string(s_) + "\"");
  }

  std::int64_t integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      int d = s_[pos_] - '0';
      if (v > (INT64_MAX - d) / 10) fail("integer overflow");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return neg ? -v : v;
  }

  bool at_cell() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '<' || c == '_' || c == '*' ||
           c == '~' || c == '[';
  }

  // A pattern cell. `_` is rejected since patterns never match ø.
  Cell cell() {
    char c = peek();
    if (c == '*') {
      ++pos_;
      return Cell::wild();
    }
    if (c == '~') {
      ++pos_;
      expect("{");
      std::vector<Letter> ex;
      if (!consume("}")) {
        do {
          ex.push_back(letter_value());
        } while (consume(","));
        expect("}");
      }
      return Cell::except(std::move(ex));
    }
    if (c == '[') {
      ++pos_;
      std::vector<Cell> parts;
      while (!consume("]")) {
        if (done()) fail("unterminated tuple");
        parts.push_back(cell());
      }
      if (parts.empty()) fail("empty tuple");
      bool exact = true;
      for (const auto& p : parts) exact = exact && p.is_exact();
      if (exact) {
        Word t;
        for (const auto& p : parts) t.push_back(p.letter);
        return Cell::exact(block_encode(t));
      }
      return Cell::tuple(std::move(parts));
    }
    if (c == '_') fail("ø is not allowed in a pattern");
    return Cell::exact(single_letter());
  }

  // A letter or ø for words and points.
  Letter letter_or_empty() {
    if (peek() == '_') {
      ++pos_;
      return kEmpty;
    }
    Cell c = cell();
    if (!c.is_exact()) fail("expected a letter");
    return c.letter;
  }

 private:
  Letter single_letter() {
    char c = peek();
    if (c == '<') {
      ++pos_;
      std::int64_t v = integer();
      if (v < 0) fail("letters are nonnegative");
      expect(">");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++pos_;
      return c - '0';
    }
    fail("expected a letter");
  }
  // Decimal letter inside an Except set.
  Letter letter_value() {
    skip_ws();
    if (peek() == '<') return single_letter();
    std::int64_t v = integer();
    if (v < 0) fail("letters are nonnegative");
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace shiftz::detail
