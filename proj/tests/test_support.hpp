#pragma once

#include <random>
#include <string>
#include <vector>

#include "germ/polynomial.hpp"

namespace germ::testing {

inline Polynomial poly(const std::string& text, std::size_t nvars = 2) {
  const auto vars = default_variable_names(nvars);
  return parse_polynomial(text, vars);
}

/// Random sparse polynomial with small Gaussian-rational coefficients.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t nvars, int max_degree, int max_terms,
                                    int min_degree = 0) {
  std::uniform_int_distribution<int> deg(min_degree, max_degree);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> terms(1, max_terms);
  Polynomial p(nvars);
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    const int d = deg(rng);
    std::vector<int> e(nvars, 0);
    for (int k = 0; k < d; ++k) e[std::uniform_int_distribution<std::size_t>(0, nvars - 1)(rng)]++;
    const mpq_class re(num(rng), den(rng));
    const mpq_class im((rng() % 3 == 0) ? num(rng) : 0, den(rng));
    p.add_term(Monomial(e), GaussianRational(re, im));
  }
  return p;
}

inline Complex random_unit_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  return std::polar(1.0, angle(rng));
}

}  // namespace germ::testing
