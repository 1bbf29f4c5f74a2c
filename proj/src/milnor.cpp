#include "germ/milnor.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include <gmpxx.h>

#include "germ/errors.hpp"
#include "germ/seeding.hpp"

namespace germ {

namespace {

using SparseRow = std::vector<std::pair<int, GaussianRational>>;

void monomials_below(std::size_t nvars, int bound, std::vector<Monomial>& out) {
  std::vector<int> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var + 1 == nvars) {
      for (int k = 0; k <= left; ++k) {
        e[var] = k;
        out.emplace_back(e);
      }
      e[var] = 0;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  if (bound > 0) rec(rec, 0, bound - 1);
}

// row -= c * pivot, both sorted by column.
SparseRow axpy(const SparseRow& row, const GaussianRational& c, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(c * pivot[j].second));
      ++j;
    } else {
      GaussianRational v = row[i].second - c * pivot[j].second;
      if (!v.is_zero()) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// dim of (polynomials of degree < D) / truncation of J.
int quotient_dimension(const std::vector<Polynomial>& partials, std::size_t nvars, int d) {
  std::vector<Monomial> cols;
  monomials_below(nvars, d, cols);
  std::map<Monomial, int> index;
  for (std::size_t k = 0; k < cols.size(); ++k) index.emplace(cols[k], static_cast<int>(k));

  std::map<int, SparseRow> pivots;  // leading column -> row with leading coefficient 1
  for (const auto& p : partials) {
    if (p.is_zero()) continue;
    const int low = *ord0(p);
    for (const auto& alpha : cols) {
      if (alpha.degree() + low >= d) continue;
      SparseRow row;
      for (const auto& [m, c] : p.terms()) {
        const Monomial prod = alpha * m;
        if (prod.degree() < d) row.emplace_back(index.at(prod), c);
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      while (!row.empty()) {
        const auto it = pivots.find(row.front().first);
        if (it == pivots.end()) {
          const GaussianRational lead = row.front().second;
          for (auto& entry : row) entry.second = entry.second / lead;
          pivots.emplace(row.front().first, std::move(row));
          break;
        }
        row = axpy(row, row.front().second, it->second);
      }
    }
  }
  return static_cast<int>(cols.size() - pivots.size());
}

}  // namespace

MilnorResult milnor_number(const Polynomial& f) {
  if (f.is_zero()) throw InputError("the zero polynomial has no Milnor number");
  std::vector<Polynomial> partials;
  for (std::size_t i = 0; i < f.nvars(); ++i) partials.push_back(derivative(f, i));
  const int cap = std::max(2 * f.degree() * f.degree(), 4);
  int previous = quotient_dimension(partials, f.nvars(), 1);
  for (int d = 1; d < cap; ++d) {
    const int next = quotient_dimension(partials, f.nvars(), d + 1);
    if (next == previous) return {previous, d, true};
    previous = next;
  }
  std::ostringstream msg;
  msg << "singularity possibly non-isolated: quotient dimension still growing at truncation degree " << cap;
  throw NumericError(msg.str());
}

int transversal_milnor(const Polynomial& f, const std::vector<GaussianRational>& line, std::uint64_t seed) {
  if (f.nvars() != 3) throw InputError("transversal Milnor number needs a polynomial in three variables");
  if (f.is_zero() || !is_homogeneous(f)) throw InputError("transversal Milnor number needs a homogeneous polynomial");
  if (line.size() != 3) throw InputError("the singular line needs a direction with three coordinates");
  if (std::all_of(line.begin(), line.end(), [](const GaussianRational& c) { return c.is_zero(); })) {
    throw InputError("the singular line needs a nonzero direction");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!evaluate(derivative(f, i), line).is_zero()) {
      throw InputError("the gradient does not vanish on the given line; it is not in the singular locus");
    }
  }
  std::mt19937_64 rng(derive_seed(seed, "transversal-slice"));
  std::uniform_int_distribution<int> coeff(-3, 3);
  const Polynomial u = Polynomial::variable(2, 0), v = Polynomial::variable(2, 1);
  int best = -1, isolated = 0;
  std::string last_error;
  for (int attempt = 0; attempt < 10 && isolated < 2; ++attempt) {
    std::vector<GaussianRational> a(3), b(3);
    for (auto& c : a) c = GaussianRational(coeff(rng), coeff(rng));
    for (auto& c : b) c = GaussianRational(coeff(rng), coeff(rng));
    const GaussianRational det = line[0] * (a[1] * b[2] - a[2] * b[1]) - line[1] * (a[0] * b[2] - a[2] * b[0]) +
                                 line[2] * (a[0] * b[1] - a[1] * b[0]);
    if (det.is_zero()) continue;
    // f is homogeneous, so its transversal type is the same at every point of the line minus 0.
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < 3; ++i) {
      images.push_back(Polynomial::constant(2, line[i]) + u * a[i] + v * b[i]);
    }
    try {
      const int mu = milnor_number(compose(f, images)).mu;
      best = (best < 0) ? mu : std::min(best, mu);
      ++isolated;
    } catch (const NumericError& e) {
      last_error = e.what();
    }
  }
  if (isolated == 0) {
    throw InputError("no transverse slice has an isolated singularity (singular locus is not the given line, or f "
                     "is not reduced): " +
                     last_error);
  }
  return best;
}

long long randell_chi(int d, int n, long long mu_prime) {
  if (d < 1) throw InputError("degree must be at least 1");
  if (n < 1) throw InputError("n must be at least 1");
  if (mu_prime < 0) throw InputError("mu' must be non-negative");
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(n + 1));
  const mpz_class inner = power - mpz_class(d) * mpz_class(std::to_string(mu_prime));
  const mpz_class chi = 1 + ((n % 2 == 0) ? inner : mpz_class(-inner));
  if (!chi.fits_slong_p()) throw InputError("Euler characteristic overflows 64 bits");
  return chi.get_si();
}

std::vector<int> recover_degree(long long chi, int n, long long mu_prime) {
  if (n < 1) throw InputError("n must be at least 1");
  if (mu_prime < 0) throw InputError("mu' must be non-negative");
  // For d = mu' + 2 + k, (d-1)^(n+1) - d mu' >= 1 + k, so d beyond mu' + |chi| + 4 cannot match.
  const long long magnitude = chi < 0 ? -chi : chi;
  const long long limit = mu_prime + magnitude + 4;
  std::vector<int> out;
  for (long long d = 2; d <= limit; ++d) {
    try {
      if (randell_chi(static_cast<int>(d), n, mu_prime) == chi) out.push_back(static_cast<int>(d));
    } catch (const InputError&) {
      break;  // overflow: the value is far beyond chi
    }
  }
  return out;
}

}  // namespace germ
