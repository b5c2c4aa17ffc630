#include "ellfib/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ellfib {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_])))
      ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_ = {Tok::End, "", i_};
      return;
    }
    char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j])))
        ++j;
      tok_ = {Tok::Int, src_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      tok_ = {Tok::Ident, src_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", i_);
    }
    tok_ = {k, std::string(1, c), i_};
    ++i_;
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Token tok_;
};

// Pulls the largest square divisor out of d: sqrt(d) = f * sqrt(d0).
std::pair<long, long> split_square(long d) {
  long f = 1;
  for (long p = 2; p * p <= d; ++p) {
    while (d % (p * p) == 0) {
      d /= p * p;
      f *= p;
    }
  }
  return {f, d};
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    if (lex_.peek().kind != Tok::End)
      throw parse_error("unexpected trailing input", lex_.peek().pos);
    return p;
  }

 private:
  MultiPoly expr() {
    MultiPoly p = term();
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      Token op = lex_.take();
      MultiPoly q = term();
      p = op.kind == Tok::Plus ? p + q : p - q;
    }
    return p;
  }

  MultiPoly term() {
    MultiPoly p = factor();
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
      Token op = lex_.take();
      MultiPoly q = factor();
      if (op.kind == Tok::Star) {
        p = p * q;
      } else {
        if (!q.is_constant())
          throw parse_error("division by a non-constant expression", op.pos);
        QElem c = q.constant_value();
        if (c.is_zero()) throw parse_error("division by zero", op.pos);
        p = p.scaled(c.inverse());
      }
    }
    return p;
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    if (lex_.peek().kind == Tok::Caret) {
      Token op = lex_.take();
      if (lex_.peek().kind != Tok::Int)
        throw parse_error("exponent must be a nonnegative integer", lex_.peek().pos);
      Token e = lex_.take();
      unsigned long n = std::stoul(e.text);
      if (n > 512) throw parse_error("exponent too large", e.pos);
      (void)op;
      base = base.pow(static_cast<unsigned>(n));
    }
    return base;
  }

  MultiPoly primary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Minus:
        lex_.take();
        return -factor();
      case Tok::Int: {
        Token n = lex_.take();
        return MultiPoly::constant(QElem(rat_from_string(n.text)));
      }
      case Tok::Ident: {
        Token id = lex_.take();
        if (id.text == "sqrt") {
          if (lex_.peek().kind != Tok::LParen)
            throw parse_error("expected '(' after sqrt", lex_.peek().pos);
          lex_.take();
          if (lex_.peek().kind != Tok::Int)
            throw parse_error("sqrt argument must be a positive integer",
                              lex_.peek().pos);
          Token d = lex_.take();
          long dv = std::stol(d.text);
          if (dv <= 0)
            throw parse_error("sqrt argument must be positive", d.pos);
          if (lex_.peek().kind != Tok::RParen)
            throw parse_error("expected ')' after sqrt argument", lex_.peek().pos);
          lex_.take();
          auto [f, d0] = split_square(dv);
          if (d0 == 1) return MultiPoly::constant(QElem(f));
          return MultiPoly::constant(QElem(Rat(0), Rat(f), d0));
        }
        return MultiPoly::variable(id.text);
      }
      case Tok::LParen: {
        Token open = lex_.take();
        MultiPoly p = expr();
        if (lex_.peek().kind != Tok::RParen)
          throw parse_error("unbalanced parenthesis", open.pos);
        lex_.take();
        return p;
      }
      default:
        throw parse_error("expected a number, variable or '('", t.pos);
    }
  }

  Lexer lex_;
};

std::string strip(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

// Splits file text into logical clauses: comments removed, lines split on ';'.
std::vector<std::string> clauses_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t start = 0;
    while (start <= line.size()) {
      auto semi = line.find(';', start);
      std::string piece = semi == std::string::npos
                              ? line.substr(start)
                              : line.substr(start, semi - start);
      piece = strip(piece);
      if (!piece.empty()) out.push_back(piece);
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
  }
  return out;
}

}  // namespace

MultiPoly parse_poly(const std::string& src) { return Parser(src).parse(); }

std::string caret_message(const std::string& src, const parse_error& err) {
  std::ostringstream os;
  os << "syntax error: " << err.what() << "\n  " << src << "\n  ";
  for (std::size_t i = 0; i < err.pos && i < src.size() + 1; ++i) os << ' ';
  os << '^';
  return os.str();
}

long parse_field_descriptor(const std::string& s) {
  std::string t = strip(s);
  if (t == "Q") return 0;
  if (t.rfind("Q(", 0) == 0 && t.back() == ')') {
    std::string inner = t.substr(2, t.size() - 3);
    MultiPoly p = parse_poly(inner);
    if (p.is_constant()) {
      QElem v = p.constant_value();
      if (v.b() == 1 && v.a() == 0) return v.d();
    }
  }
  throw parse_error("unrecognized field descriptor: " + t, 0);
}

std::string field_descriptor_str(long d) {
  if (d == 0) return "Q";
  return "Q(sqrt(" + std::to_string(d) + "))";
}

ModelFile parse_model_file(const std::string& text) {
  ModelFile mf;
  for (const std::string& clause : clauses_of(text)) {
    auto eq = clause.find('=');
    auto colon = clause.find(':');
    if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
      std::string key = strip(clause.substr(0, colon));
      std::string val = strip(clause.substr(colon + 1));
      if (key == "base") {
        mf.base_var = val;
      } else if (key == "field") {
        mf.field_d = parse_field_descriptor(val);
      } else if (key == "params") {
        mf.params = split_words(val);
      } else {
        throw parse_error("unknown model-file clause: " + key, 0);
      }
      continue;
    }
    if (eq == std::string::npos)
      throw parse_error("expected 'name = expression': " + clause, 0);
    std::string name = strip(clause.substr(0, eq));
    std::string body = strip(clause.substr(eq + 1));
    mf.entries[name] = parse_poly(body);
  }
  if (mf.base_var.empty())
    throw parse_error("model file is missing the 'base:' clause", 0);
  return mf;
}

PencilFile parse_pencil_file(const std::string& text) {
  PencilFile pf;
  for (const std::string& clause : clauses_of(text)) {
    auto colon = clause.find(':');
    bool header = false;
    if (colon != std::string::npos) {
      std::string key = strip(clause.substr(0, colon));
      std::string val = strip(clause.substr(colon + 1));
      if (key == "point") {
        pf.point_vars = split_words(val);
        header = true;
      } else if (key == "param") {
        pf.param_vars = split_words(val);
        header = true;
      } else if (key == "field") {
        pf.field_d = parse_field_descriptor(val);
        header = true;
      }
    }
    if (!header) pf.polys.push_back(parse_poly(clause));
  }
  if (pf.point_vars.empty())
    throw parse_error("pencil file is missing the 'point:' clause", 0);
  return pf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw arith_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ellfib
