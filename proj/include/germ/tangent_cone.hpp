#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "germ/polynomial.hpp"

namespace germ {

/// A complex line through 0 in C^2, as the projective point (a:b).
struct TangentLine {
  /// Normalized: the first coordinate of (near-)maximal modulus is exactly 1.
  std::array<Complex, 2> direction{1.0, 0.0};
  /// Multiplicity of the matching linear factor in the initial form.
  int cone_multiplicity = 1;

  static TangentLine through(Complex a, Complex b, int multiplicity = 1);
};

/// "(1:0)", "(1:-1)", "(1:0.5+0.25i)": coordinates rounded to 6 significant digits.
std::string format_line(const TangentLine& line);

/// Lines agree when their normalized coordinates agree within `tol`.
bool same_line(const TangentLine& a, const TangentLine& b, double tol = 1e-9);

/// Sine of the angle between the complex lines spanned by u and v (0 = same line, 1 = orthogonal).
double projective_distance(std::span<const Complex> u, std::span<const Complex> v);

/// Tangent cone of a hypersurface germ: zero set of the initial form.
struct ConeDescription {
  Polynomial defining_form;
  /// Populated for plane curves only.
  std::vector<TangentLine> lines;
};

/// Throws InputError for the zero polynomial or when f(0) != 0.
ConeDescription hypersurface_cone(const Polynomial& f);

/// Linear factors of a nonzero homogeneous form in two variables, with multiplicities summing
/// to its degree. Multiplicities come from an exact squarefree split over Q(i); the roots of
/// each squarefree part are then found numerically.
std::vector<TangentLine> tangent_lines(const Polynomial& form);

struct SecantSample {
  /// Unit vectors p / |p| for points p on V(f) with |p| close to the requested scale.
  std::vector<std::vector<Complex>> directions;
  /// Cluster index per direction.
  std::vector<int> labels;
  /// Unit representative of each cluster (top eigenvector of the mean projector).
  std::vector<std::vector<Complex>> centers;
};

/// Samples secant directions of V(f) at distance about `scale` from 0 by slicing with random
/// complex lines, then clusters them projectively (single linkage, threshold 10 * scale on
/// the distance between rank-one projectors). Throws NumericError when no point is found.
SecantSample secant_directions(const Polynomial& f, double scale, int count, std::uint64_t seed = 0);

using ComplexVector = std::vector<Complex>;

/// Black-box map phi with phi(0) = 0, optionally with bi-Lipschitz constants (C1, C2).
struct MapSample {
  std::function<ComplexVector(std::span<const Complex>)> map;
  std::optional<std::pair<double, double>> lipschitz_hint;
};

struct DerivativeEstimate {
  /// phi(t v) / t at the smallest t.
  ComplexVector value;
  /// |q(t_{k+1}) - q(t_k)| along the grid, q(t) = phi(t v) / t.
  std::vector<double> differences;
  /// Differences never grow; false signals an oscillating or divergent limit.
  bool converging = true;
};

/// 1e-2 halving down to 1e-6.
std::vector<double> default_tgrid();

/// Estimates d phi(v) as the limit of phi(t v) / t along a decreasing grid. Throws InputError
/// when phi(0) is not 0 to 1e-12 or when the grid is unusable (fewer than 4 entries, not
/// strictly decreasing, not positive).
DerivativeEstimate map_derivative_estimate(const MapSample& phi, std::span<const Complex> v,
                                           std::span<const double> tgrid);

}  // namespace germ
