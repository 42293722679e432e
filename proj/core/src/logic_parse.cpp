#include <algorithm>
#include <cctype>

#include "tesselogic/error.hpp"
#include "tesselogic/logic.hpp"

namespace tesselogic {

namespace {

enum class Tok { Ident, At, LParen, RParen, Comma, Dot, Bang, Amp, Bar, Arrow, DArrow, EqSign, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, int len) {
    out.push_back({k, std::move(text), line, col});
    i += static_cast<std::size_t>(len);
    col += len;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      push(Tok::Ident, std::string(s.substr(i, j - i)), static_cast<int>(j - i));
      continue;
    }
    if (s.substr(i, 3) == "<->") {
      push(Tok::DArrow, "<->", 3);
      continue;
    }
    if (s.substr(i, 2) == "->") {
      push(Tok::Arrow, "->", 2);
      continue;
    }
    switch (c) {
      case '@':
        push(Tok::At, "@", 1);
        break;
      case '(':
        push(Tok::LParen, "(", 1);
        break;
      case ')':
        push(Tok::RParen, ")", 1);
        break;
      case ',':
        push(Tok::Comma, ",", 1);
        break;
      case '.':
        push(Tok::Dot, ".", 1);
        break;
      case '!':
        push(Tok::Bang, "!", 1);
        break;
      case '&':
        push(Tok::Amp, "&", 1);
        break;
      case '|':
        push(Tok::Bar, "|", 1);
        break;
      case '=':
        push(Tok::EqSign, "=", 1);
        break;
      default:
        throw FormatError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

bool is_direction(const std::string& s) { return s == "N" || s == "S" || s == "E" || s == "W"; }

Dir to_dir(char c) {
  switch (c) {
    case 'N':
      return Dir::N;
    case 'S':
      return Dir::S;
    case 'E':
      return Dir::E;
    default:
      return Dir::W;
  }
}

bool is_fo_name(const std::string& s) { return !s.empty() && std::islower(static_cast<unsigned char>(s[0])); }
bool is_so_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])) && !is_direction(s);
}
bool is_keyword(const std::string& s) { return s == "forall" || s == "exists" || s == "true" || s == "false"; }
bool is_edge_name(const std::string& s) { return s.size() == 5 && s.compare(0, 4, "edge") == 0 && is_direction(s.substr(4)); }

class Parser {
 public:
  Parser(std::string_view text, const std::optional<Alphabet>& alphabet) : toks_(lex(text)), alphabet_(alphabet) {}

  Formula run(Mode hint) {
    Expr e = formula();
    expect(Tok::End, "end of input");
    if (saw_edge_ && saw_compound_)
      throw FormatError("formula mixes relational edges with direction functions", edge_tok_.line, edge_tok_.column);
    Mode m = saw_edge_ ? Mode::Relational : saw_compound_ ? Mode::Functional : hint;
    return Formula{e, m};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw FormatError(msg, t.line, t.column); }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + ", found '" + peek().text + "'", peek());
    return next();
  }

  bool at_quantifier() const {
    return peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists");
  }

  Expr formula() {
    Expr lhs = implication();
    while (peek().kind == Tok::DArrow) {
      next();
      lhs = iff(lhs, implication());
    }
    return lhs;
  }

  Expr implication() {
    Expr lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return implies(lhs, implication());
    }
    return lhs;
  }

  // Only unparenthesized chains become one n-ary node, so parenthesized
  // nesting survives a print/parse roundtrip.
  Expr nary(Tok op, Kind k, Expr (Parser::*sub)()) {
    std::vector<Expr> kids{(this->*sub)()};
    while (peek().kind == op) {
      next();
      kids.push_back((this->*sub)());
    }
    if (kids.size() == 1) return kids[0];
    return with_kids(Node{k, {}, Dir::N, {}, {}}, std::move(kids));
  }

  Expr disjunction() { return nary(Tok::Bar, Kind::Or, &Parser::conjunction); }
  Expr conjunction() { return nary(Tok::Amp, Kind::And, &Parser::unary); }

  Expr unary() {
    if (peek().kind == Tok::Bang) {
      next();
      return not_(unary());
    }
    if (at_quantifier()) return quantified();
    return primary();
  }

  Expr quantified() {
    bool universal = next().text == "forall";
    const Token& v = expect(Tok::Ident, "variable name");
    bool so = false;
    if (is_fo_name(v.text) && !is_keyword(v.text) && !is_edge_name(v.text))
      so = false;
    else if (is_so_name(v.text))
      so = true;
    else
      fail("'" + v.text + "' cannot be bound", v);
    if (std::find(bound_.begin(), bound_.end(), v.text) != bound_.end())
      fail("variable '" + v.text + "' is already bound here", v);
    expect(Tok::Dot, "'.'");
    bound_.push_back(v.text);
    Expr body = formula();
    bound_.pop_back();
    Kind k = so ? (universal ? Kind::ForallSO : Kind::ExistsSO) : (universal ? Kind::ForallFO : Kind::ExistsFO);
    return quant(k, v.text, body);
  }

  Expr primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Expr e = formula();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::At) {
      next();
      const Token& c = expect(Tok::Ident, "color name");
      if (alphabet_ && !alphabet_->index_of(c.text)) fail("unknown color '" + c.text + "'", c);
      expect(Tok::LParen, "'('");
      Term arg = term();
      expect(Tok::RParen, "')'");
      return color(c.text, arg);
    }
    if (t.kind != Tok::Ident) fail("unexpected '" + t.text + "'", t);
    if (t.text == "true") {
      next();
      return mk_true();
    }
    if (t.text == "false") {
      next();
      return mk_false();
    }
    if (is_edge_name(t.text)) {
      Token et = next();
      if (!saw_edge_) edge_tok_ = et;
      saw_edge_ = true;
      expect(Tok::LParen, "'('");
      std::string a = fo_variable();
      expect(Tok::Comma, "','");
      std::string b = fo_variable();
      expect(Tok::RParen, "')'");
      return edge(to_dir(et.text[4]), a, b);
    }
    if (is_so_name(t.text)) {
      next();
      expect(Tok::LParen, "'('");
      Term arg = term();
      expect(Tok::RParen, "')'");
      return set_var(t.text, arg);
    }
    Term a = term();
    expect(Tok::EqSign, "'='");
    Term b = term();
    return eq(a, b);
  }

  std::string fo_variable() {
    const Token& v = expect(Tok::Ident, "first-order variable");
    if (!is_fo_name(v.text) || is_keyword(v.text) || is_edge_name(v.text))
      fail("expected a first-order variable, found '" + v.text + "'", v);
    return v.text;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && is_direction(t.text) && toks_[pos_ + 1].kind == Tok::LParen) {
      next();
      next();
      Term inner = term();
      expect(Tok::RParen, "')'");
      saw_compound_ = true;
      return apply(to_dir(t.text[0]), std::move(inner));
    }
    return var(fo_variable());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::optional<Alphabet>& alphabet_;
  std::vector<std::string> bound_;
  bool saw_edge_ = false;
  bool saw_compound_ = false;
  Token edge_tok_{Tok::End, "", 0, 0};
};

}  // namespace

Formula parse_formula(std::string_view text, const std::optional<Alphabet>& alphabet, Mode hint) {
  return Parser(text, alphabet).run(hint);
}

}  // namespace tesselogic
