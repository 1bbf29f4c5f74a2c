#pragma once

#include <array>
#include <cstdint>

#include "germ/polynomial.hpp"
#include "germ/tangent_cone.hpp"

namespace germ {

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Unitary change of coordinates on C^2 in which projection to the first coordinate is finite
/// on V(f) near 0: no tangent line of f is vertical, and every tangent line has slope at most
/// `kMaxFrameSlope` in the new coordinates.
struct GenericFrame {
  /// Exact unitary U over Q(i); original point = U * frame point.
  std::array<std::array<GaussianRational, 2>, 2> exact;
  Matrix2 numeric;
  /// f(U (x', y')).
  Polynomial transformed;
  /// ord0 of f, the number of sheets over a small x'-disc.
  int sheets = 0;
  /// Tangent lines of f in original coordinates.
  std::vector<TangentLine> cone_lines;

  std::array<Complex, 2> to_original(Complex x, Complex y) const {
    return {numeric[0][0] * x + numeric[0][1] * y, numeric[1][0] * x + numeric[1][1] * y};
  }
};

inline constexpr double kMaxFrameSlope = 4.0;

/// g(x, y) as a family of polynomials in y, with the y-coefficients precomputed as polynomials
/// in x for fast numeric evaluation.
class FiberFamily {
 public:
  explicit FiberFamily(const Polynomial& g);
  UnivariatePoly operator()(Complex x) const;
  int degree_in_y() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<UnivariatePoly> coeffs_;
};

/// Draws exact unitary matrices (Cayley transforms of random skew-Hermitian matrices) until one
/// is generic for f. Throws InputError for non-plane-curve input or f(0) != 0, NumericError
/// after 20 failed draws.
GenericFrame choose_generic_frame(const Polynomial& f, std::uint64_t seed);

}  // namespace germ
