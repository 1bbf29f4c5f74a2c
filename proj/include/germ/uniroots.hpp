#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "germ/univariate.hpp"

namespace germ {

struct RootSet {
  std::vector<Complex> roots;
  /// Largest relative backward error max_k |p(r_k)| / sum_j |a_j| |r_k|^j.
  double residual = 0.0;
  bool converged = false;
};

/// All roots with multiplicity by simultaneous (Aberth-Ehrlich) iteration. Exact zero roots
/// are split off first. `initial` optionally warm-starts the iteration; it is used only when it
/// has exactly `degree` entries. Throws InputError for degree < 1.
RootSet find_roots(const UnivariatePoly& p, double tol = 1e-12, std::span<const Complex> initial = {});

struct DiscCountOptions {
  /// A root certified within guard * radius of the circle (Newton bound n |p/p'| at a sample)
  /// counts as a root on the boundary.
  double guard = 1e-6;
  std::size_t min_samples = 64;
  std::size_t max_samples = 1 << 18;
};

/// Number of roots in the open disc, with multiplicity, from the winding number of p along the
/// boundary circle. Throws NumericError when a root sits (numerically) on the circle.
int count_roots_in_disc(const UnivariatePoly& p, Complex center, double radius, const DiscCountOptions& opts = {});

using PolyFamily = std::function<UnivariatePoly(Complex)>;

/// Parameter path s in [0, 1] -> complex parameter. A closed path returns to its start.
struct ParameterPath {
  std::function<Complex(double)> at;
  bool closed = false;

  static ParameterPath circle(Complex center, double radius, int turns = 1);
  static ParameterPath segment(Complex from, Complex to);
};

struct TrackOptions {
  double tol = 1e-12;
  int initial_steps = 64;
  double min_step = 1e-9;
  /// Accept a match only when nearest <= margin * second nearest.
  double margin = 1.0 / 3.0;
};

struct TrackedPath {
  struct Sample {
    double s;
    Complex parameter;
    std::vector<Complex> roots;
  };
  std::vector<Sample> samples;
  /// permutation[i] = index in `reference` of the root where tracked root i ends up.
  std::vector<std::size_t> permutation;
  /// Start roots for a closed path, a fresh solve at the end parameter otherwise.
  std::vector<Complex> reference;
};

/// Follows every root of `family` along `path` with adaptive step halving. Throws NumericError
/// when two roots cannot be separated above `min_step` (a collision on the path).
TrackedPath track_roots(const PolyFamily& family, const ParameterPath& path, const TrackOptions& opts = {});

/// Disjoint cycles of a permutation, each starting at its smallest index, ordered by that index.
std::vector<std::vector<std::size_t>> permutation_cycles(std::span<const std::size_t> permutation);

}  // namespace germ
