#include "germ/polynomial.hpp"

#include <algorithm>

#include "germ/errors.hpp"

namespace germ {

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw InputError("negative exponent in monomial");
    degree_ += e;
  }
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<int> e(a.exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps_[i] + b.exps_[i];
  return Monomial(std::move(e));
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  return a.exps_ < b.exps_;
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw InputError("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(std::size_t nvars, const GaussianRational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial::one(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("variable index out of range");
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  Polynomial p(nvars);
  p.add_term(Monomial(std::move(e)), 1);
  return p;
}

int Polynomial::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

GaussianRational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

void Polynomial::add_term(const Monomial& m, const GaussianRational& c) {
  if (m.nvars() != nvars_) throw InputError("monomial arity does not match polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void Polynomial::check_arity(const Polynomial& o) const {
  if (o.nvars_ != nvars_) {
    throw InputError("arity mismatch: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) +
                     " variables");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_arity(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_arity(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_arity(b);
  Polynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::optional<int> ord0(const Polynomial& f) {
  if (f.is_zero()) return std::nullopt;
  return f.terms().rbegin()->first.degree();
}

Polynomial initial_form(const Polynomial& f) {
  const auto order = ord0(f);
  if (!order) throw InputError("initial form of the zero polynomial is undefined");
  Polynomial out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() == *order) out.add_term(m, c);
  }
  return out;
}

std::map<int, Polynomial> homog_components(const Polynomial& f) {
  std::map<int, Polynomial> out;
  for (const auto& [m, c] : f.terms()) {
    out.try_emplace(m.degree(), f.nvars()).first->second.add_term(m, c);
  }
  return out;
}

Polynomial derivative(const Polynomial& f, std::size_t var) {
  if (var >= f.nvars()) throw InputError("derivative variable index out of range");
  Polynomial out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    const int e = m[var];
    if (e == 0) continue;
    std::vector<int> exps = m.exponents();
    --exps[var];
    out.add_term(Monomial(std::move(exps)), c * GaussianRational(e));
  }
  return out;
}

std::optional<int> homogeneous_degree(const Polynomial& f) {
  if (f.is_zero()) return std::nullopt;
  const int top = f.degree();
  return *ord0(f) == top ? std::optional<int>(top) : std::nullopt;
}

bool is_homogeneous(const Polynomial& f) { return f.is_zero() || homogeneous_degree(f).has_value(); }

namespace {

void check_point_arity(const Polynomial& f, std::size_t n) {
  if (n != f.nvars()) {
    throw InputError("point has " + std::to_string(n) + " coordinates, polynomial has " +
                     std::to_string(f.nvars()) + " variables");
  }
}

// powers[i][k] = x_i^k for k up to the largest exponent of variable i in f.
template <class T, class Mul>
std::vector<std::vector<T>> power_table(const Polynomial& f, std::span<const T> xs, const T& one, Mul mul) {
  std::vector<int> maxe(f.nvars(), 0);
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < f.nvars(); ++i) maxe[i] = std::max(maxe[i], m[i]);
  }
  std::vector<std::vector<T>> table(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    table[i].reserve(maxe[i] + 1);
    table[i].push_back(one);
    for (int k = 1; k <= maxe[i]; ++k) table[i].push_back(mul(table[i].back(), xs[i]));
  }
  return table;
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

UnivariatePoly restrict_to_line(const Polynomial& f, std::span<const Complex> base, std::span<const Complex> dir) {
  check_point_arity(f, base.size());
  check_point_arity(f, dir.size());
  if (std::all_of(dir.begin(), dir.end(), [](Complex c) { return c == Complex{}; })) {
    throw InputError("line direction must be nonzero");
  }
  std::vector<std::vector<Complex>> lines(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) lines[i] = {base[i], dir[i]};
  const auto table = power_table<std::vector<Complex>>(f, lines, std::vector<Complex>{1.0}, poly_mul);

  std::vector<Complex> acc(std::max(f.degree(), 0) + 1);
  for (const auto& [m, c] : f.terms()) {
    std::vector<Complex> term{c.to_complex()};
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (m[i] > 0) term = poly_mul(term, table[i][m[i]]);
    }
    for (std::size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
  }
  return UnivariatePoly(std::move(acc));
}

Complex evaluate(const Polynomial& f, std::span<const Complex> point) {
  check_point_arity(f, point.size());
  const auto table = power_table<Complex>(f, point, Complex{1.0}, std::multiplies<>{});
  Complex acc{};
  for (const auto& [m, c] : f.terms()) {
    Complex term = c.to_complex();
    for (std::size_t i = 0; i < f.nvars(); ++i) term *= table[i][m[i]];
    acc += term;
  }
  return acc;
}

GaussianRational evaluate(const Polynomial& f, std::span<const GaussianRational> point) {
  check_point_arity(f, point.size());
  const auto table = power_table<GaussianRational>(f, point, GaussianRational{1}, std::multiplies<>{});
  GaussianRational acc;
  for (const auto& [m, c] : f.terms()) {
    GaussianRational term = c;
    for (std::size_t i = 0; i < f.nvars(); ++i) term *= table[i][m[i]];
    acc += term;
  }
  return acc;
}

Polynomial compose(const Polynomial& f, std::span<const Polynomial> images) {
  check_point_arity(f, images.size());
  const std::size_t out_vars = images[0].nvars();
  for (const auto& g : images) {
    if (g.nvars() != out_vars) throw InputError("composition images must share one arity");
  }
  const auto table = power_table<Polynomial>(f, images, Polynomial::constant(out_vars, 1),
                                             [](const Polynomial& a, const Polynomial& b) { return a * b; });
  Polynomial out(out_vars);
  for (const auto& [m, c] : f.terms()) {
    Polynomial term = Polynomial::constant(out_vars, c);
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (m[i] > 0) term = term * table[i][m[i]];
    }
    out += term;
  }
  return out;
}

std::vector<std::string> default_variable_names(std::size_t n) {
  static const char* kShort[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(n <= 4 ? kShort[i] : "x" + std::to_string(i + 1));
  return names;
}

}  // namespace germ
