#include "nejac/parse.hpp"

#include <cctype>
#include <optional>

namespace nejac {

namespace {

enum class Tok { number, var, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  int column;  // 1-based
  std::string text;
  std::size_t var = 0;
};

class Lexer {
 public:
  Lexer(std::string_view text, const std::vector<std::string>& vars, int line, int column_offset)
      : text_(text), vars_(vars), line_(line), offset_(column_offset) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text_.size()) {
      const char ch = text_[i];
      const int col = static_cast<int>(i) + 1 + offset_;
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        out.push_back({Tok::number, col, std::string(text_.substr(i, j - i))});
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        split_identifier(text_.substr(i, j - i), col, out);
        i = j;
      } else {
        Tok k;
        switch (ch) {
          case '+': k = Tok::plus; break;
          case '-': k = Tok::minus; break;
          case '*': k = Tok::star; break;
          case '/': k = Tok::slash; break;
          case '^': k = Tok::caret; break;
          case '(': k = Tok::lparen; break;
          case ')': k = Tok::rparen; break;
          default: throw ParseError(std::string("unexpected character '") + ch + "'", line_, col);
        }
        out.push_back({k, col, std::string(1, ch)});
        ++i;
      }
    }
    out.push_back({Tok::end, static_cast<int>(text_.size()) + 1 + offset_, ""});
    return out;
  }

 private:
  void split_identifier(std::string_view ident, int col, std::vector<Token>& out) {
    std::size_t pos = 0;
    while (pos < ident.size()) {
      std::optional<std::size_t> best;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        const auto& name = vars_[v];
        if (ident.substr(pos, name.size()) == name && (!best || name.size() > vars_[*best].size())) best = v;
      }
      if (!best) throw ParseError("undeclared variable '" + std::string(ident) + "'", line_, col);
      out.push_back({Tok::var, col + static_cast<int>(pos), vars_[*best], *best});
      pos += vars_[*best].size();
    }
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  int line_, offset_;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::size_t nvars, int line) : toks_(std::move(toks)), n_(nvars), line_(line) {}

  Poly parse() {
    if (peek().kind == Tok::end) fail("empty polynomial");
    Poly p = expr();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, peek().column); }

  Poly expr() {
    Poly acc = unary();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = take().kind == Tok::minus;
      Poly rhs = term();
      if (minus)
        acc -= rhs;
      else
        acc += rhs;
    }
    return acc;
  }

  // A term that may carry a leading sign.
  Poly unary() {
    if (peek().kind == Tok::minus) {
      take();
      return -unary();
    }
    if (peek().kind == Tok::plus) {
      take();
      return unary();
    }
    return term();
  }

  static bool starts_primary(Tok k) { return k == Tok::number || k == Tok::var || k == Tok::lparen; }

  Poly term() {
    Poly acc = signed_power();
    for (;;) {
      const Tok k = peek().kind;
      if (k == Tok::star) {
        take();
        acc *= signed_power();
      } else if (k == Tok::slash) {
        take();
        const int col = peek().column;
        Poly d = signed_power();
        if (!d.is_constant() || d.is_zero())
          throw ParseError("division is only allowed by a nonzero constant", line_, col);
        acc *= Rational(1) / d.constant_term();
      } else if (starts_primary(k)) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  Poly signed_power() {
    if (peek().kind == Tok::minus) {
      take();
      return -signed_power();
    }
    if (peek().kind == Tok::plus) {
      take();
      return signed_power();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (peek().kind == Tok::caret) {
      take();
      if (peek().kind != Tok::number) fail("exponent must be a non-negative integer");
      const Token& t = take();
      if (t.text.size() > 4) throw ParseError("exponent too large", line_, t.column);
      base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  Poly primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        take();
        return Poly::constant(n_, Rational(mpz_class(t.text, 10)));
      }
      case Tok::var:
        take();
        return Poly::variable(n_, t.var);
      case Tok::lparen: {
        take();
        Poly inner = expr();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        take();
        return inner;
      }
      case Tok::end:
        fail("expected a term");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t n_;
  int line_;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Poly parse_poly(std::string_view text, const std::vector<std::string>& variables, int line, int column_offset) {
  Lexer lex(text, variables, line, column_offset);
  Parser parser(lex.run(), variables.size(), line);
  return parser.parse();
}

Poly parse_poly(std::string_view text, std::size_t nvars) { return parse_poly(text, default_names(nvars)); }

SystemFile read_system(std::string_view text) {
  SystemFile sys;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    if (t.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto directive = [&](std::string_view key) -> std::optional<std::string> {
      if (t.rfind(std::string(key) + ":", 0) == 0) return trim(std::string_view(t).substr(key.size() + 1));
      return std::nullopt;
    };
    if (auto v = directive("vars")) {
      std::string cur;
      for (char ch : *v + ",") {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
          if (!cur.empty()) sys.variables.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
    } else if (auto v = directive("name")) {
      sys.name = *v;
    } else if (auto v = directive("expect")) {
      auto eq = v->find('=');
      if (eq == std::string::npos) throw ParseError("expect directive needs key = value", line_no, 1);
      sys.expected[trim(std::string_view(*v).substr(0, eq))] = trim(std::string_view(*v).substr(eq + 1));
    } else {
      std::size_t piece_start = 0;
      while (piece_start <= line.size()) {
        std::size_t semi = line.find(';', piece_start);
        if (semi == std::string_view::npos) semi = line.size();
        std::string_view raw = line.substr(piece_start, semi - piece_start);
        std::string piece = trim(raw);
        if (!piece.empty()) {
          sys.polynomials.push_back(piece);
          sys.lines.push_back(line_no);
          sys.columns.push_back(static_cast<int>(piece_start + raw.find_first_not_of(" \t\r")));
        }
        piece_start = semi + 1;
      }
    }
    if (end == text.size()) break;
  }
  return sys;
}

PolyMap to_polymap(const SystemFile& sys) {
  if (sys.polynomials.empty()) throw std::invalid_argument("system contains no polynomials");
  std::vector<std::string> vars = sys.variables.empty() ? default_names(sys.polynomials.size()) : sys.variables;
  if (vars.size() != sys.polynomials.size())
    throw std::invalid_argument("non-square system: " + std::to_string(sys.polynomials.size()) + " polynomials in " +
                                std::to_string(vars.size()) + " variables");
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < sys.polynomials.size(); ++i) {
    const int col = i < sys.columns.size() ? sys.columns[i] : 0;
    Poly p = parse_poly(sys.polynomials[i], vars, sys.lines.empty() ? 1 : sys.lines[i], col);
    if (p.is_zero()) throw ParseError("polynomial is identically zero", sys.lines.empty() ? 1 : sys.lines[i], col + 1);
    comps.push_back(std::move(p));
  }
  return PolyMap(std::move(comps));
}

PolyMap parse_system(std::string_view text) { return to_polymap(read_system(text)); }

}  // namespace nejac
