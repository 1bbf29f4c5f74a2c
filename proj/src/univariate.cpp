#include "germ/univariate.hpp"

#include <cmath>

namespace germ {

UnivariatePoly::UnivariatePoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex UnivariatePoly::operator()(Complex t) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return UnivariatePoly(std::move(d));
}

double UnivariatePoly::magnitude_at(Complex t) const {
  const double r = std::abs(t);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

}  // namespace germ
