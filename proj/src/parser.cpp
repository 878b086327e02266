#include "phaseweb/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace pw {

namespace {

enum class TokKind { sensor, tilde_sensor, literal, plus, star, lparen, rparen, end };

struct Token {
  TokKind kind;
  int value = 0;  // sensor index or literal value
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == TokKind::end) break;
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  char take() {
    char c = text_[pos_++];
    ++col_;
    return c;
  }

  Token token(TokKind kind, int value, int line, int col) const {
    return Token{kind, value, line, col};
  }

  int lex_digits() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (take() - '0');
      if (v > kMaxUniverse * 10) fail("number too large");
    }
    return static_cast<int>(v);
  }

  int lex_sensor_index() {
    int idx = lex_digits();
    if (idx < 1) fail("unknown sensor token: sensor indices start at s1");
    if (idx > kMaxUniverse) fail("sensor index exceeds the supported universe");
    return idx;
  }

  Token next() {
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return token(TokKind::end, 0, line, col);
    char c = peek();
    switch (c) {
      case '(': take(); return token(TokKind::lparen, 0, line, col);
      case ')': take(); return token(TokKind::rparen, 0, line, col);
      case '+': take(); return token(TokKind::plus, 0, line, col);
      case '*': take(); return token(TokKind::star, 0, line, col);
      case '-': {
        take();
        if (peek() != '1') fail("'-' is only valid in the literal -1");
        take();
        if (std::isdigit(static_cast<unsigned char>(peek())))
          fail("integer literal must be 0, 1, 2 or -1");
        return token(TokKind::literal, -1, line, col);
      }
      case '~': {
        take();
        if (peek() != 's') fail("'~' must be followed by a sensor atom");
        take();
        return token(TokKind::tilde_sensor, lex_sensor_index(), line, col);
      }
      case 's': {
        take();
        return token(TokKind::sensor, lex_sensor_index(), line, col);
      }
      default:
        if (std::isdigit(static_cast<unsigned char>(c))) {
          int v = lex_digits();
          if (v > 2) fail("integer literal must be 0, 1, 2 or -1");
          return token(TokKind::literal, v, line, col);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, int universe, const Signature& sig)
      : tokens_(tokens), universe_(universe), sig_(sig) {}

  Multivector run() {
    Multivector v = expr();
    expect(TokKind::end, "expected end of expression");
    return v;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }

  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().column);
  }

  void expect(TokKind kind, const std::string& msg) {
    if (cur().kind != kind) fail(msg);
    advance();
  }

  bool starts_factor() const {
    switch (cur().kind) {
      case TokKind::sensor:
      case TokKind::tilde_sensor:
      case TokKind::literal:
      case TokKind::lparen:
        return true;
      default:
        return false;
    }
  }

  Multivector expr() {
    Multivector acc = term();
    while (cur().kind == TokKind::plus) {
      advance();
      acc = acc + term();
    }
    return acc;
  }

  Multivector term() {
    Multivector acc = factor();
    while (true) {
      if (cur().kind == TokKind::star) {
        advance();
        if (!starts_factor()) fail("expected a factor after '*'");
        acc = geometric_product(acc, factor(), sig_);
      } else if (starts_factor()) {
        acc = geometric_product(acc, factor(), sig_);
      } else {
        break;
      }
    }
    return acc;
  }

  Multivector factor() {
    switch (cur().kind) {
      case TokKind::sensor: {
        int i = cur().value;
        advance();
        return Multivector::basis(universe_, i);
      }
      case TokKind::tilde_sensor: {
        int i = cur().value;
        advance();
        return Multivector::blade(universe_, {i}, Z3::minus_one());
      }
      case TokKind::literal: {
        int v = cur().value;
        advance();
        return Multivector::scalar(universe_, Z3::of(v));
      }
      case TokKind::lparen: {
        advance();
        Multivector v = expr();
        expect(TokKind::rparen, "expected ')'");
        return v;
      }
      default:
        fail("expected a sensor, literal or '('");
    }
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  int universe_;
  const Signature& sig_;
};

}  // namespace

Multivector parse_expression(std::string_view text, int sig_sign,
                             std::optional<int> universe) {
  auto tokens = Lexer(text).run();
  int max_index = 0;
  for (const Token& t : tokens)
    if (t.kind == TokKind::sensor || t.kind == TokKind::tilde_sensor)
      max_index = std::max(max_index, t.value);
  int n = universe.value_or(max_index);
  if (n < max_index)
    throw Error("universe of size " + std::to_string(n) +
                " does not cover sensor s" + std::to_string(max_index));
  Signature sig = Signature::uniform(n, sig_sign);
  return Parser(tokens, n, sig).run();
}

}  // namespace pw
