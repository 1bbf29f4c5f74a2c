#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "germ/rational.hpp"
#include "germ/univariate.hpp"

namespace germ {

/// Exponent vector z_1^{a_1} ... z_n^{a_n}. Ordered graded-lexicographically.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }

  const std::vector<int>& exponents() const { return exps_; }
  std::size_t nvars() const { return exps_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  /// Graded lexicographic: total degree first, then lexicographic on exponents.
  friend bool operator<(const Monomial& a, const Monomial& b);
  friend bool operator>(const Monomial& a, const Monomial& b) { return b < a; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Sparse multivariate polynomial over Q(i) with a fixed number of variables.
/// Terms iterate in graded-lex descending order; no stored coefficient is zero.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, GaussianRational, std::greater<Monomial>>;

  explicit Polynomial(std::size_t nvars = 1);
  static Polynomial constant(std::size_t nvars, const GaussianRational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  GaussianRational coefficient(const Monomial& m) const;
  GaussianRational constant_term() const { return coefficient(Monomial::one(nvars_)); }

  /// Adds c·m to the polynomial, dropping the term if it cancels.
  void add_term(const Monomial& m, const GaussianRational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const GaussianRational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const GaussianRational& c) { return a *= c; }
  Polynomial operator-() const;
  Polynomial pow(unsigned exponent) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_arity(const Polynomial& o) const;

  std::size_t nvars_;
  TermMap terms_;
};

/// Lowest total degree among the terms; nullopt stands for the infinite order of 0.
std::optional<int> ord0(const Polynomial& f);

/// Homogeneous component of degree ord0(f). Throws InputError on the zero polynomial.
Polynomial initial_form(const Polynomial& f);

std::map<int, Polynomial> homog_components(const Polynomial& f);

/// Throws InputError when var >= nvars.
Polynomial derivative(const Polynomial& f, std::size_t var);

/// The zero polynomial counts as homogeneous with no degree.
bool is_homogeneous(const Polynomial& f);
std::optional<int> homogeneous_degree(const Polynomial& f);

/// Coefficients of t -> f(base + t dir), evaluated in double precision.
UnivariatePoly restrict_to_line(const Polynomial& f, std::span<const Complex> base, std::span<const Complex> dir);

Complex evaluate(const Polynomial& f, std::span<const Complex> point);
GaussianRational evaluate(const Polynomial& f, std::span<const GaussianRational> point);

/// f(images[0], ..., images[n-1]); all images must share one arity, which becomes the result's arity.
Polynomial compose(const Polynomial& f, std::span<const Polynomial> images);

/// x, y, z, w for up to four variables, x1..xn otherwise.
std::vector<std::string> default_variable_names(std::size_t n);

/// Parses `+ - * ^`, parentheses, integer and `p/q` literals, the imaginary unit `i`, and the
/// given variable names. Throws ParseError with the byte offset of the offending token.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables);

/// Canonical text: graded-lex descending terms, exact coefficients. Parses back to `f`.
std::string format_polynomial(const Polynomial& f, std::span<const std::string> variables);

}  // namespace germ
