#include "stlsmooth/parser.hpp"

#include <cctype>
#include <string>

#include "stlsmooth/error.hpp"

namespace stlsmooth {
namespace {

enum class Tok { Ident, Int, LParen, RParen, Bang, Amp, Bar, Eventually, Always, Until, Comma, RBracket, End };

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        word += advance();
      }
      if (word == "F" || word == "G" || word == "U") {
        const std::size_t save_pos = pos_;
        const int save_line = line_, save_col = col_;
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == '[') {
          advance();
          t.kind = word == "F" ? Tok::Eventually : word == "G" ? Tok::Always : Tok::Until;
          t.text = word + "[";
          return t;
        }
        pos_ = save_pos;
        line_ = save_line;
        col_ = save_col;
      }
      t.kind = Tok::Ident;
      t.text = std::move(word);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::string digits;
      if (c == '-') digits += advance();
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        throw ParseError("expected digits after '-'", t.line, t.column);
      }
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += advance();
      }
      if (digits.size() > 12) throw ParseError("integer literal too large", t.line, t.column);
      t.kind = Tok::Int;
      t.text = digits;
      t.value = std::stoll(digits);
      return t;
    }
    advance();
    t.text = std::string(1, c);
    switch (c) {
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '!': t.kind = Tok::Bang; break;
      case '&': t.kind = Tok::Amp; break;
      case '|': t.kind = Tok::Bar; break;
      case ',': t.kind = Tok::Comma; break;
      case ']': t.kind = Tok::RBracket; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }
    return t;
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, const PredicateTable& table) : lex_(text), table_(table) {
    cur_ = lex_.next();
  }

  Formula parse_all() {
    Formula f = parse_or();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.line, cur_.column);
  }

  Token take() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) {
      fail(std::string("expected ") + what + (cur_.kind == Tok::End ? " before end of input" : ", found '" + cur_.text + "'"));
    }
    take();
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (cur_.kind == Tok::Bar) {
      take();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts[0] : Formula::disj(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_until()};
    while (cur_.kind == Tok::Amp) {
      take();
      parts.push_back(parse_until());
    }
    return parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts));
  }

  Formula parse_until() {
    Formula left = parse_unary();
    while (cur_.kind == Tok::Until) {
      take();
      auto [a, b] = parse_bounds();
      Formula right = parse_unary();
      left = Formula::until(a, b, std::move(left), std::move(right));
    }
    return left;
  }

  Formula parse_unary() {
    switch (cur_.kind) {
      case Tok::Bang:
        take();
        return Formula::negate(parse_unary());
      case Tok::Eventually: {
        take();
        auto [a, b] = parse_bounds();
        return Formula::eventually(a, b, parse_unary());
      }
      case Tok::Always: {
        take();
        auto [a, b] = parse_bounds();
        return Formula::always(a, b, parse_unary());
      }
      default:
        return parse_atom();
    }
  }

  Formula parse_atom() {
    if (cur_.kind == Tok::LParen) {
      take();
      Formula f = parse_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (cur_.kind == Tok::Ident) {
      const Token t = take();
      auto f = table_.lookup(t.text);
      if (!f) {
        throw UnknownIdentifierError("unknown predicate '" + t.text + "' at line " +
                                     std::to_string(t.line) + ", column " +
                                     std::to_string(t.column));
      }
      return *f;
    }
    if (cur_.kind == Tok::End) fail("unexpected end of input");
    fail("unexpected '" + cur_.text + "'");
  }

  std::pair<int, int> parse_bounds() {
    const Token lo = cur_;
    expect(Tok::Int, "an integer lower bound");
    expect(Tok::Comma, "','");
    const Token hi = cur_;
    expect(Tok::Int, "an integer upper bound");
    expect(Tok::RBracket, "']'");
    if (lo.value < 0 || hi.value < 0) {
      throw IntervalError("negative interval bound at line " + std::to_string(lo.line) +
                          ", column " + std::to_string(lo.column));
    }
    if (hi.value < lo.value) {
      throw IntervalError("interval [" + lo.text + "," + hi.text + "] has t2 < t1 at line " +
                          std::to_string(lo.line) + ", column " + std::to_string(lo.column));
    }
    if (hi.value > 1'000'000) throw IntervalError("interval bound too large");
    return {static_cast<int>(lo.value), static_cast<int>(hi.value)};
  }

  Lexer lex_;
  const PredicateTable& table_;
  Token cur_;
};

}  // namespace

Formula parse(std::string_view text, const PredicateTable& table) {
  return Parser(text, table).parse_all();
}

}  // namespace stlsmooth
