#pragma once

// Exact univariate polynomials over Q(i): ascending coefficients, no trailing zeros.

#include <utility>
#include <vector>

#include "germ/rational.hpp"
#include "germ/univariate.hpp"

namespace germ::exact {

using Poly = std::vector<GaussianRational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * GaussianRational(static_cast<long>(k)));
  trim(d);
  return d;
}

// Quotient and remainder of a / b, b nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - db);
  for (std::size_t k = a.size(); k-- > db;) {
    const GaussianRational c = a[k] / b.back();
    q[k - db] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly monic(Poly p) {
  const GaussianRational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic(a);
}

inline Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  trim(a);
  return a;
}

// Yun's squarefree decomposition: p = c * prod_i factor_i^i with squarefree, coprime factors.
inline std::vector<std::pair<Poly, int>> squarefree_parts(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  const Poly dp = derivative(p);
  const Poly c = gcd(p, dp);
  Poly w = divmod(p, c).first;
  Poly y = divmod(dp, c).first;
  Poly z = sub(y, derivative(w));
  for (int i = 1; w.size() > 1; ++i) {
    const Poly g = gcd(w, z);
    if (g.size() > 1) out.emplace_back(g, i);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = sub(y, derivative(w));
  }
  return out;
}

inline UnivariatePoly to_numeric(const Poly& p) {
  std::vector<Complex> c;
  for (const auto& x : p) c.push_back(x.to_complex());
  return UnivariatePoly(std::move(c));
}

/// True when p has no repeated root (gcd(p, p') is constant).
inline bool is_squarefree(const Poly& p) { return gcd(p, derivative(p)).size() <= 1; }

}  // namespace germ::exact
