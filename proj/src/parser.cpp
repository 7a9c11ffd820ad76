#include "conslaw/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "conslaw/error.hpp"

namespace conslaw {

namespace {

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;    // identifier base name, digits, or operator character
  std::string suffix;  // derivative letters after '_'
  int primes = 0;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  auto is_alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (is_alpha(c)) {
      std::size_t start = i;
      while (i < src.size() && is_alnum(src[i])) advance();
      tok.kind = Tok::Ident;
      tok.text = std::string(src.substr(start, i - start));
      if (i < src.size() && src[i] == '_') {
        advance();
        std::size_t s = i;
        while (i < src.size() && is_alpha(src[i])) advance();
        if (s == i) throw ParseError(line, col, "expected derivative letters after '_'");
        tok.suffix = std::string(src.substr(s, i - s));
      }
      while (i < src.size() && src[i] == '\'') {
        ++tok.primes;
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance();
      if (i < src.size() && (src[i] == '.' || is_alpha(src[i]))) {
        throw ParseError(line, col, "only integer literals are allowed");
      }
      tok.kind = Tok::Number;
      tok.text = std::string(src.substr(start, i - start));
    } else if (std::string_view("+-*/^(),=;").find(c) != std::string_view::npos) {
      tok.kind = Tok::Op;
      tok.text = std::string(1, c);
      advance();
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Convention* conv, int max_order)
      : tokens_(std::move(tokens)), conv_(conv), max_order_(max_order) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }

  bool is_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool is_word(const char* w) const {
    return peek().kind == Tok::Ident && peek().text == w && peek().suffix.empty() &&
           peek().primes == 0;
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(at.line, at.column, msg);
  }

  void expect_op(const char* op) {
    if (!is_op(op)) fail(peek(), std::string("expected '") + op + "'" + found());
    next();
  }

  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::End) return ", found end of input";
    return ", found '" + t.text + (t.suffix.empty() ? "" : "_" + t.suffix) + "'";
  }

  std::string expect_name() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || !t.suffix.empty() || t.primes != 0) {
      fail(t, "expected a name" + found());
    }
    return next().text;
  }

  int expect_integer() {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail(t, "expected an integer" + found());
    if (t.text.size() > 6) fail(t, "integer too large");
    return std::stoi(next().text);
  }

  void set_convention(const Convention* conv) { conv_ = conv; }

  DiffPoly expression() {
    DiffPoly acc = product();
    while (is_op("+") || is_op("-")) {
      bool minus = next().text == "-";
      DiffPoly rhs = product();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

 private:
  DiffPoly product() {
    DiffPoly acc = unary();
    while (is_op("*") || is_op("/")) {
      Token op = next();
      const Token& at = peek();
      DiffPoly rhs = unary();
      if (op.text == "*") {
        acc *= rhs;
      } else {
        if (!rhs.is_constant() || rhs.is_zero()) {
          fail(at, "division is only allowed by a nonzero constant");
        }
        acc *= Rational(1) / rhs.constant_value();
      }
    }
    return acc;
  }

  DiffPoly unary() {
    if (is_op("-")) {
      next();
      return -unary();
    }
    if (is_op("+")) {
      next();
      return unary();
    }
    return power();
  }

  DiffPoly power() {
    DiffPoly base = primary();
    if (is_op("^")) {
      next();
      int e = expect_integer();
      return base.pow(e);
    }
    return base;
  }

  DiffPoly primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return DiffPoly(Rational(t.text));
    }
    if (is_op("(")) {
      next();
      DiffPoly inner = expression();
      expect_op(")");
      return inner;
    }
    if (t.kind == Tok::Ident && t.text == "D" && t.suffix.empty() && t.primes == 0) {
      return derivative_call();
    }
    if (t.kind == Tok::Ident) return symbol(next());
    fail(t, "expected an expression" + found());
  }

  DiffPoly derivative_call() {
    next();
    expect_op("(");
    DiffPoly inner = expression();
    expect_op(",");
    const Token& var_tok = peek();
    std::string var = expect_name();
    auto idx = conv_->find_independent(var);
    if (!idx) fail(var_tok, "'" + var + "' is not an independent variable");
    expect_op(",");
    int n = expect_integer();
    expect_op(")");
    MultiIndex k{};
    k[*idx] = n;
    try {
      return total_derivative(inner, k, max_order_);
    } catch (const OrderOverflow& e) {
      fail(var_tok, e.what());
    }
  }

  DiffPoly symbol(const Token& t) {
    const Convention& conv = *conv_;
    if (auto dep = conv.find_dependent(t.text)) {
      if (t.primes) fail(t, "primes are only allowed on functions");
      JetVar v{*dep, {}};
      for (char c : t.suffix) {
        auto idx = conv.find_independent(std::string(1, c));
        if (!idx) fail(t, std::string("'") + c + "' is not an independent variable");
        ++v.multi[*idx];
      }
      if (v.order() > max_order_) {
        fail(t, "derivative order " + std::to_string(v.order()) + " exceeds the maximum " +
                    std::to_string(max_order_));
      }
      return DiffPoly::jet(v);
    }
    if (auto fn = conv.find_function(t.text)) {
      int arg = conv.functions()[*fn].arg;
      int order = t.primes;
      for (char c : t.suffix) {
        if (conv.independents()[arg] != std::string(1, c)) {
          fail(t, "function '" + t.text + "' depends only on " + conv.independents()[arg]);
        }
        ++order;
      }
      return DiffPoly::function(*fn, arg, order);
    }
    if (auto idx = conv.find_independent(t.text)) {
      if (!t.suffix.empty() || t.primes) fail(t, "cannot differentiate a coordinate");
      return DiffPoly::coordinate(*idx);
    }
    fail(t, "undeclared symbol '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Convention* conv_;
  int max_order_;
};

void expect_end(Parser& p) {
  if (!p.at_end()) p.fail(p.peek(), "unexpected trailing input" + p.found());
}

std::vector<std::string> name_list(Parser& p) {
  std::vector<std::string> names;
  names.push_back(p.expect_name());
  while (p.is_op(",")) {
    p.next();
    names.push_back(p.expect_name());
  }
  return names;
}

}  // namespace

DiffPoly parse_expression(std::string_view text, const Convention& conv, int max_order) {
  Parser p(tokenize(text), &conv, max_order);
  if (p.at_end()) p.fail(p.peek(), "empty expression");
  DiffPoly out = p.expression();
  expect_end(p);
  return out;
}

SystemSpec parse_system(std::string_view text, int max_order) {
  SystemSpec sys;
  Parser p(tokenize(text), &sys.conv, max_order);
  auto declare = [&](const Token& at, auto&& fn) {
    try {
      fn();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      p.fail(at, e.what());
    }
  };

  while (!p.at_end()) {
    Token head = p.peek();
    if (p.is_word("indep")) {
      p.next();
      for (const auto& n : name_list(p)) declare(head, [&] { sys.conv.add_independent(n); });
    } else if (p.is_word("dep")) {
      p.next();
      for (const auto& n : name_list(p)) declare(head, [&] { sys.conv.add_dependent(n); });
    } else if (p.is_word("func")) {
      p.next();
      while (true) {
        Token name_tok = p.peek();
        std::string name = p.expect_name();
        p.expect_op("(");
        Token arg_tok = p.peek();
        std::string arg = p.expect_name();
        p.expect_op(")");
        auto idx = sys.conv.find_independent(arg);
        if (!idx) p.fail(arg_tok, "'" + arg + "' is not an independent variable");
        declare(name_tok, [&] { sys.conv.add_function(name, *idx); });
        if (!p.is_op(",")) break;
        p.next();
      }
    } else if (p.is_word("eq")) {
      p.next();
      Equation eq;
      eq.line = head.line;
      eq.lhs = p.expression();
      p.expect_op("=");
      eq.lhs -= p.expression();
      if (p.is_word("solve")) {
        p.next();
        Token var_tok = p.peek();
        DiffPoly var = p.expression();
        if (var.size() != 1 || var.terms().begin()->second != 1 ||
            var.terms().begin()->first.jets().size() != 1 ||
            !var.terms().begin()->first.coefficient_part().is_one() ||
            var.terms().begin()->first.jets()[0].second != 1) {
          p.fail(var_tok, "solve target must be a single derivative");
        }
        eq.solved = var.terms().begin()->first.jets()[0].first;
        declare(var_tok, [&] { solved_coefficient(eq.lhs, *eq.solved); });
      }
      sys.equations.push_back(std::move(eq));
    } else {
      p.fail(head, "expected 'indep', 'dep', 'func' or 'eq'" + p.found());
    }
    p.expect_op(";");
  }
  if (sys.equations.empty()) throw ParseError(1, 1, "system has no equations");
  return sys;
}

Generator parse_generator(std::string_view text, const Convention& conv, std::string name,
                          int num_dependents) {
  int ndep = num_dependents < 0 ? conv.num_dependents() : num_dependents;
  Generator gen;
  gen.name = std::move(name);
  gen.xi.assign(conv.num_independents(), DiffPoly());
  gen.eta.assign(ndep, DiffPoly());
  std::vector<bool> seen_xi(gen.xi.size()), seen_eta(gen.eta.size());

  Parser p(tokenize(text), &conv, kDefaultMaxOrder);
  while (!p.at_end()) {
    Token head = p.peek();
    bool is_xi = p.is_word("xi");
    if (!is_xi && !p.is_word("eta")) p.fail(head, "expected 'xi' or 'eta'" + p.found());
    p.next();
    Token var_tok = p.peek();
    std::string var = p.expect_name();
    p.expect_op("=");
    Token expr_tok = p.peek();
    DiffPoly coeff = p.expression();
    p.expect_op(";");
    if (coeff.jet_order() > 0) {
      p.fail(expr_tok, "generator coefficients must not contain derivatives");
    }
    for (int d : coeff.dependents()) {
      if (d >= ndep) p.fail(expr_tok, "generator coefficient uses an adjoint variable");
    }
    if (is_xi) {
      auto idx = conv.find_independent(var);
      if (!idx) p.fail(var_tok, "'" + var + "' is not an independent variable");
      if (seen_xi[*idx]) p.fail(var_tok, "duplicate coefficient for '" + var + "'");
      seen_xi[*idx] = true;
      gen.xi[*idx] = std::move(coeff);
    } else {
      auto idx = conv.find_dependent(var);
      if (!idx || *idx >= ndep) p.fail(var_tok, "'" + var + "' is not a dependent variable");
      if (seen_eta[*idx]) p.fail(var_tok, "duplicate coefficient for '" + var + "'");
      seen_eta[*idx] = true;
      gen.eta[*idx] = std::move(coeff);
    }
  }
  return gen;
}

SubstitutionRule parse_substitution(std::string_view text, const Convention& conv) {
  Parser p(tokenize(text), &conv, kDefaultMaxOrder);
  std::map<int, DiffPoly> targets;
  if (p.at_end()) return SubstitutionRule();
  while (true) {
    Token var_tok = p.peek();
    std::string var = p.expect_name();
    auto dep = conv.find_dependent(var);
    if (!dep) p.fail(var_tok, "'" + var + "' is not a dependent variable");
    if (targets.count(*dep)) p.fail(var_tok, "'" + var + "' is substituted twice");
    p.expect_op("=");
    targets[*dep] = p.expression();
    if (!p.is_op(",")) break;
    p.next();
  }
  expect_end(p);
  try {
    return SubstitutionRule(std::move(targets));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace conslaw
