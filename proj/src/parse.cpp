#include "multiheight/parse.hpp"

#include <cctype>
#include <limits>

namespace mh {

ParseError::ParseError(const std::string& msg, size_t p)
    : Error(msg + " at position " + std::to_string(p)), pos(p) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Spec& spec) : s_(text), spec_(spec) {}

  MPoly run() {
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    MPoly f = expr();
    skip();
    if (!at_end()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return f;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (!at_end() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    MPoly acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = factor();
    while (eat('*')) acc *= factor();
    skip();
    if (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_'))
      throw ParseError("missing '*' between factors", pos_);
    return acc;
  }

  MPoly factor() {
    MPoly base = primary();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected an exponent", start);
      mpz_class e(digits);
      if (e > std::numeric_limits<int32_t>::max()) throw ParseError("exponent overflow", start);
      base = mp_pow(base, static_cast<int>(e.get_si()));
    }
    return base;
  }

  std::string read_digits() {
    size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  MPoly primary() {
    skip();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(read_digits());
      mpz_class den = 1;
      size_t save = pos_;
      if (eat('/')) {
        skip();
        size_t start = pos_;
        std::string d = read_digits();
        if (d.empty()) throw ParseError("expected a denominator", start);
        den = mpz_class(d);
        if (den == 0) throw ParseError("zero denominator", start);
      } else {
        pos_ = save;
      }
      mpq_class q(num, den);
      q.canonicalize();
      return MPoly::constant(spec_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto v = spec_->find_var(name);
      if (!v) throw ParseError("unknown variable '" + name + "'", start);
      return MPoly::variable(spec_, *v);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  const Spec& spec_;
  size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(std::string_view text, const Spec& spec) {
  MPoly f = Parser(text, spec).run();
  return f.has_integer_coeffs() ? f.as_integer() : f;
}

std::string print_poly(const MPoly& f) { return f.to_string(); }

}  // namespace mh
