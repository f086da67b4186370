#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "tailvar/catalog.hpp"
#include "tailvar/errors.hpp"

// Distribution spec files: line-oriented `key = value` pairs.
//   family = <catalog name or expr>
//   params = name:value[,name:value...]
//   t0     = <real>
//   expr   = <arithmetic in t using + - * / ^ exp log sqrt erfc>
// Unknown keys are an error, not a warning; parse errors name the line.

namespace tailvar {

namespace detail {

// Recursive-descent parser for the expression grammar. Produces a closed
// evaluator over the variable t.
class ExprParser {
 public:
  ExprParser(const std::string& text, int line) : s_(text), line_(line) {}

  RealFn parse() {
    RealFn e = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input starting at '" + rest() + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("expression: " + msg, line_);
  }
  std::string rest() const { return s_.substr(pos_, 12); }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RealFn expression() {
    RealFn lhs = term();
    for (;;) {
      if (eat('+')) {
        RealFn rhs = term();
        lhs = [lhs, rhs](double t) { return lhs(t) + rhs(t); };
      } else if (eat('-')) {
        RealFn rhs = term();
        lhs = [lhs, rhs](double t) { return lhs(t) - rhs(t); };
      } else {
        return lhs;
      }
    }
  }

  RealFn term() {
    RealFn lhs = factor();
    for (;;) {
      if (eat('*')) {
        RealFn rhs = factor();
        lhs = [lhs, rhs](double t) { return lhs(t) * rhs(t); };
      } else if (eat('/')) {
        RealFn rhs = factor();
        lhs = [lhs, rhs](double t) { return lhs(t) / rhs(t); };
      } else {
        return lhs;
      }
    }
  }

  RealFn factor() {  // right-associative '^'
    RealFn base = unary();
    if (eat('^')) {
      RealFn expo = factor();
      return [base, expo](double t) { return std::pow(base(t), expo(t)); };
    }
    return base;
  }

  RealFn unary() {
    if (eat('-')) {
      RealFn inner = unary();
      return [inner](double t) { return -inner(t); };
    }
    return primary();
  }

  RealFn primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RealFn e = expression();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number at '" + rest() + "'");
      }
      pos_ += used;
      return [v](double) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "t") return [](double t) { return t; };
      RealFn arg;
      if (!eat('(')) fail("expected '(' after '" + name + "'");
      arg = expression();
      if (!eat(')')) fail("missing ')' after argument of '" + name + "'");
      if (name == "exp") return [arg](double t) { return std::exp(arg(t)); };
      if (name == "log") return [arg](double t) { return std::log(arg(t)); };
      if (name == "sqrt") return [arg](double t) { return std::sqrt(arg(t)); };
      if (name == "erfc") return [arg](double t) { return std::erfc(arg(t)); };
      fail("unknown function '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

inline double param_or(const std::map<std::string, double>& params,
                       const std::string& key, double fallback, bool required,
                       int line) {
  auto it = params.find(key);
  if (it != params.end()) return it->second;
  if (required) throw parse_error("missing parameter '" + key + "'", line);
  return fallback;
}

}  // namespace detail

struct ParsedSpec {
  CatalogEntry entry;     // truth fields empty for expr specs
  bool from_catalog = false;
};

inline ParsedSpec parse_spec_text(std::istream& in) {
  std::string family, expr_text;
  std::map<std::string, double> params;
  double t0 = std::numeric_limits<double>::quiet_NaN();
  int line_no = 0, family_line = 0, expr_line = 0;

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    const auto first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (trimmed[first] == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) throw parse_error("expected 'key = value'", line_no);
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = strip(trimmed.substr(0, eq));
    const std::string value = strip(trimmed.substr(eq + 1));
    if (key == "family") {
      family = value;
      family_line = line_no;
    } else if (key == "t0") {
      try {
        t0 = std::stod(value);
      } catch (const std::exception&) {
        throw parse_error("bad t0 value '" + value + "'", line_no);
      }
    } else if (key == "params") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw parse_error("params must be name:value pairs", line_no);
        const std::string name = strip(item.substr(0, colon));
        try {
          params[name] = std::stod(item.substr(colon + 1));
        } catch (const std::exception&) {
          throw parse_error("bad value for parameter '" + name + "'", line_no);
        }
      }
    } else if (key == "expr") {
      expr_text = value;
      expr_line = line_no;
    } else {
      throw parse_error("unknown key '" + key + "'", line_no);
    }
  }
  if (family.empty()) throw parse_error("missing 'family'", line_no);

  ParsedSpec out;
  if (family == "expr") {
    if (expr_text.empty()) throw parse_error("family expr requires 'expr'", family_line);
    RealFn fn = detail::ExprParser(expr_text, expr_line).parse();
    const double lo = std::isnan(t0) ? 1.0 : t0;
    TailFunction f = make_analytic(fn, lo, "expr(" + expr_text + ")");
    out.entry.distribution = {f, std::nullopt, std::nullopt, f.label()};
    return out;
  }

  out.from_catalog = true;
  if (family == "exponential")
    out.entry = exponential(detail::param_or(params, "lambda", 1.0, false, family_line));
  else if (family == "pareto")
    out.entry = pareto(detail::param_or(params, "alpha", 0.0, true, family_line));
  else if (family == "standard_normal")
    out.entry = standard_normal();
  else if (family == "log_tail")
    out.entry = log_tail();
  else if (family == "weibull_hazard")
    out.entry = weibull_hazard(detail::param_or(params, "k", 0.0, true, family_line));
  else if (family == "frechet")
    out.entry = frechet(detail::param_or(params, "alpha", 0.0, true, family_line));
  else if (family == "lognormal")
    out.entry = lognormal();
  else if (family == "slow_survival")
    out.entry = slow_survival();
  else
    throw parse_error("unknown family '" + family + "'", family_line);
  return out;
}

inline ParsedSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file " + path);
  return parse_spec_text(in);
}

}  // namespace tailvar
