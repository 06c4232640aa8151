#include "fermatci/expr.hpp"

#include <cctype>
#include <cstdint>
#include <optional>

#include "fermatci/errors.hpp"

namespace fermatci {

namespace {

enum class Tok { Ident, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names, PrimeField field,
         std::size_t line, std::size_t column)
      : text_(text), names_(names), field_(field), line_(line), column_(column) {
    advance();
  }

  RatFunc expression() {
    RatFunc acc = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool minus = cur_.kind == Tok::Minus;
      advance();
      RatFunc rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  bool at_end() const { return cur_.kind == Tok::End; }
  bool at_comma() const { return cur_.kind == Tok::Comma; }
  void skip() { advance(); }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, cur_.offset); }

 private:
  [[noreturn]] void fail_at(const std::string& msg, std::size_t offset) const {
    std::size_t line = line_;
    std::size_t col = column_;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  RatFunc term() {
    RatFunc acc = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      bool div = cur_.kind == Tok::Slash;
      std::size_t at = cur_.offset;
      advance();
      RatFunc rhs = unary();
      if (div) {
        if (rhs.is_zero()) fail_at("division by zero", at);
        acc = acc / rhs;
      } else {
        acc = acc * rhs;
      }
    }
    return acc;
  }

  RatFunc unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    if (cur_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Int) fail("expected a non-negative integer exponent");
      std::uint64_t n = 0;
      for (char c : cur_.text) {
        n = n * 10 + static_cast<std::uint64_t>(c - '0');
        if (n > (1u << 20)) fail("exponent too large");
      }
      advance();
      if (cur_.kind == Tok::Caret) fail("chained exponents need parentheses");
      if (n == 0) return RatFunc::one(field_, names_.size());
      return base.pow(static_cast<std::int64_t>(n));
    }
    return base;
  }

  RatFunc primary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Ident: {
        advance();
        for (std::size_t i = 0; i < names_.size(); ++i) {
          if (names_[i] == t.text) return RatFunc::variable(field_, names_.size(), i);
        }
        fail_at("unknown identifier '" + std::string(t.text) + "'", t.offset);
      }
      case Tok::Int: {
        advance();
        std::int64_t v = 0;
        const std::int64_t p = field_.characteristic();
        for (char c : t.text) v = (v * 10 + (c - '0')) % p;
        return RatFunc::constant(field_, names_.size(), v);
      }
      case Tok::LParen: {
        advance();
        RatFunc inner = expression();
        if (cur_.kind != Tok::RParen) fail("expected ')'");
        advance();
        return inner;
      }
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected '" + std::string(t.text) + "'");
    }
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      cur_ = Token{Tok::End, {}, text_.size()};
      return;
    }
    std::size_t start = pos_;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      cur_ = Token{Tok::Ident, text_.substr(start, pos_ - start), start};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      cur_ = Token{Tok::Int, text_.substr(start, pos_ - start), start};
      return;
    }
    ++pos_;
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      default:
        fail_at(std::string("unexpected character '") + c + "'", start);
    }
    cur_ = Token{k, text_.substr(start, 1), start};
  }

  std::string_view text_;
  std::span<const std::string> names_;
  PrimeField field_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, {}, 0};
};

}  // namespace

bool is_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

RatFunc parse_expression(std::string_view text, std::span<const std::string> names,
                         PrimeField field, std::size_t line, std::size_t column) {
  Parser parser(text, names, field, line, column);
  RatFunc value = parser.expression();
  if (!parser.at_end()) parser.fail("trailing input after expression");
  return value;
}

std::vector<RatFunc> parse_expression_list(std::string_view text,
                                           std::span<const std::string> names, PrimeField field,
                                           std::size_t line, std::size_t column) {
  Parser parser(text, names, field, line, column);
  std::vector<RatFunc> out;
  while (!parser.at_end()) {
    out.push_back(parser.expression());
    if (parser.at_comma()) {
      parser.skip();
      if (parser.at_end()) parser.fail("expected an expression after ','");
    }
  }
  return out;
}

}  // namespace fermatci
