#include <cctype>

#include "germ/errors.hpp"
#include "germ/polynomial.hpp"

namespace germ {

namespace {

constexpr unsigned kMaxExponent = 4096;

// expr  := term (('+' | '-') term)*
// term  := unary ('*' unary)*
// unary := ('+' | '-') unary | power
// power := atom ('^' INT)?
// atom  := INT ('/' INT)? | 'i' | IDENT | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> vars) : text_(text), vars_(vars) {
    for (const auto& v : vars_) {
      if (v == "i") throw InputError("'i' is reserved for the imaginary unit");
    }
  }

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("exponent must be a non-negative integer literal", at);
    }
    const mpz_class e = integer();
    if (e > kMaxExponent) throw ParseError("exponent too large", at);
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", at);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class value(integer());
      if (accept('/')) {
        skip_space();
        const std::size_t den_at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          throw ParseError("expected integer denominator", den_at);
        }
        const mpz_class den = integer();
        if (den == 0) throw ParseError("zero denominator", den_at);
        value /= den;
      }
      check_no_implicit_product();
      return Polynomial::constant(vars_.size(), GaussianRational(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      check_no_implicit_product();
      if (name == "i") return Polynomial::constant(vars_.size(), GaussianRational::imaginary_unit());
      for (std::size_t k = 0; k < vars_.size(); ++k) {
        if (vars_[k] == name) return Polynomial::variable(vars_.size(), k);
      }
      throw ParseError("unknown variable '" + std::string(name) + "'", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", at);
  }

  // "2x", "x y" and "2(x)" are rejected: multiplication must be explicit.
  void check_no_implicit_product() {
    std::size_t p = pos_;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    if (p < text_.size()) {
      const char c = text_[p];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
        throw ParseError("implicit multiplication is not allowed", p);
      }
    }
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Monomial& m, std::span<const std::string> vars) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables) {
  if (variables.empty()) throw InputError("at least one variable name is required");
  return Parser(text, variables).parse();
}

std::string format_polynomial(const Polynomial& f, std::span<const std::string> variables) {
  if (variables.size() != f.nvars()) throw InputError("variable name count does not match polynomial arity");
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    const std::string mono = monomial_text(m, variables);
    // Sign is pulled out for real and purely imaginary coefficients; general ones stay parenthesized.
    bool negative = false;
    GaussianRational mag = c;
    if (c.is_real() ? sgn(c.re()) < 0 : (sgn(c.re()) == 0 && sgn(c.im()) < 0)) {
      negative = true;
      mag = -c;
    }
    std::string coef;
    if (!(mag == GaussianRational(1) && !mono.empty())) coef = mag.to_string();
    std::string body = coef;
    if (!mono.empty()) body += (coef.empty() ? "" : "*") + mono;
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace germ
