#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "germ/generic_frame.hpp"
#include "germ/polynomial.hpp"
#include "germ/tangent_cone.hpp"

namespace germ {

/// One local irreducible component of a plane-curve germ, seen as a cycle of the y-root
/// monodromy around |x| = epsilon in a generic frame.
struct Branch {
  /// Sheet indices (positions in the root list at x = epsilon) permuted cyclically by the loop.
  std::vector<std::size_t> cycle;
  int order = 0;
  /// The tangent-cone line this branch is assigned to (original coordinates).
  TangentLine tangent;
  /// Extrapolated limit direction of the branch, before assignment to a cone line.
  std::array<Complex, 2> estimated_direction{};
  double witness_radius = 0.0;
};

struct BranchDecomposition {
  std::vector<Branch> branches;
  double epsilon_used = 0.0;
  /// Unitary U with original = U * frame coordinates.
  Matrix2 coordinate_change{};
  /// Tangent lines of the curve, for reference by index.
  std::vector<TangentLine> cone_lines;
};

/// k_X(L) per tangent line L: the number of local sheets of the curve over L.
struct RelativeMultiplicities {
  std::vector<std::pair<TangentLine, int>> entries;

  int total() const {
    int s = 0;
    for (const auto& e : entries) s += e.second;
    return s;
  }
};

struct BranchOptions {
  std::uint64_t seed = 0;
  /// Fixed loop radius; when absent the radius is chosen by `stabilize_epsilon`.
  std::optional<double> epsilon{};
};

/// 1e-1, 1e-2, ..., 1e-6.
std::vector<double> epsilon_ladder();

/// Branches of a reduced plane curve f(x, y) = 0 at the origin. Throws InputError when f is
/// not a plane curve through 0 or has a repeated factor, NumericError when tracking or tangent
/// assignment fails (or no radius on the ladder is stable).
BranchDecomposition branches(const Polynomial& f, const BranchOptions& opts = {});

/// k(L) = sum of orders of branches tangent to L.
RelativeMultiplicities relative_multiplicities(const BranchDecomposition& decomposition);
RelativeMultiplicities relative_multiplicities(const Polynomial& f, const BranchOptions& opts = {});

/// Largest epsilon on the ladder at which branch count, orders, and tangent assignment agree
/// with those at epsilon / 2. Throws NumericError when no rung is stable.
double stabilize_epsilon(const Polynomial& f, std::uint64_t seed = 0);

}  // namespace germ
