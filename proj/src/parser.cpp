#include "matgeo/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

namespace matgeo {
namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "'", i);
  }

  ScalarField2 parse_expr() {
    ScalarField2 v = parse_term();
    for (;;) {
      if (accept('+'))
        v = v + parse_term();
      else if (accept('-'))
        v = v - parse_term();
      else
        return v;
    }
  }

  ScalarField2 parse_term() {
    ScalarField2 v = parse_factor();
    for (;;) {
      if (accept('*'))
        v = v * parse_factor();
      else if (accept('/'))
        v = v / parse_factor();
      else
        return v;
    }
  }

  ScalarField2 parse_factor() {
    ScalarField2 v = parse_base();
    if (accept('^')) v = pow(v, parse_int());
    return v;
  }

  int parse_int() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) throw ParseError("expected integer exponent", start);
    return std::atoi(s.substr(start, i - start).c_str());
  }

  ScalarField2 parse_base() {
    skip_ws();
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (c == '(') {
      ++i;
      ScalarField2 v = parse_expr();
      expect(')');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }

  ScalarField2 parse_number() {
    std::size_t start = i;
    while (i < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'))
      ++i;
    // Exponent notation: 1.5e-3
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
      if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        i = j;
        while (i < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[i])))
          ++i;
      }
    }
    char* end = nullptr;
    const std::string tok = s.substr(start, i - start);
    double val = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw ParseError("malformed number '" + tok + "'", start);
    return ScalarField2::constant(val);
  }

  ScalarField2 parse_name() {
    std::size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    const std::string name = s.substr(start, i - start);
    if (name == "x") return ScalarField2::coordinate(1);
    if (name == "y") return ScalarField2::coordinate(2);
    if (name == "atan2") {
      expect('(');
      ScalarField2 a = parse_expr();
      expect(',');
      ScalarField2 b = parse_expr();
      expect(')');
      return atan2(a, b);
    }
    expect('(');
    ScalarField2 arg = parse_expr();
    expect(')');
    if (name == "exp") return exp(arg);
    if (name == "ln") return log(arg);
    if (name == "sin") return sin(arg);
    if (name == "cos") return cos(arg);
    if (name == "sqrt") return sqrt(arg);
    throw ParseError("unknown function '" + name + "'", start);
  }
};

}  // namespace

ScalarField2 parse_field(const std::string& text, Domain dom) {
  Parser p(text);
  ScalarField2 f = p.parse_expr();
  if (!p.eof()) throw ParseError("trailing input", p.i);
  return f.restricted(dom);
}

}  // namespace matgeo
