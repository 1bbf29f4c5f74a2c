#pragma once

#include <complex>
#include <vector>

namespace germ {

using Complex = std::complex<double>;

/// Dense univariate polynomial with complex double coefficients, ascending degree.
/// Trailing (highest-degree) zeros are trimmed; the zero polynomial has no coefficients.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  Complex operator[](int k) const { return k <= degree() ? coeffs_[k] : Complex{}; }

  Complex operator()(Complex t) const;
  UnivariatePoly derivative() const;

  /// Sum of |a_k| |t|^k, the scale against which a residual |p(t)| is judged.
  double magnitude_at(Complex t) const;

 private:
  std::vector<Complex> coeffs_;
};

}  // namespace germ
