#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "germ/branch.hpp"
#include "germ/polynomial.hpp"

namespace germ {

using RealPoint = std::vector<double>;

/// Samples of a set in C^n flattened to R^2n, with a weighted neighbour graph.
struct PointCloud {
  std::vector<RealPoint> points;
  /// adjacency[i] = (j, Euclidean length of edge ij); symmetric.
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
  double scale = 0.0;
  /// Index of the adjoined origin, when present.
  std::optional<std::size_t> origin;
  /// Fibre of the sampling projection each point came from (-1 for the origin).
  std::vector<long> fibre;
};

struct CurveSampleOptions {
  std::size_t count = 2000;
  std::size_t neighbours = 16;
  std::uint64_t seed = 0;
  bool adjoin_origin = true;
};

/// Points of V(f) with norms in [scale/4, scale] over a polar grid of fibres in a generic frame.
/// Each sample is joined to its continuation on the same sheet in the 8 (or 16, adding knight
/// moves) neighbouring fibres. The origin is joined, per graph component, to the innermost
/// samples of that component. Throws NumericError when fewer than `count` points are found after
/// refinement, InputError when `neighbours` is not 8 or 16.
PointCloud sample_curve(const Polynomial& f, double scale, const CurveSampleOptions& opts = {});

/// Recomputes every edge length from the current point coordinates.
void reweight(PointCloud& cloud);

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Shortest-path length in the cloud graph; kInfiniteDistance for disconnected points.
double inner_distance(const PointCloud& cloud, std::size_t a, std::size_t b);
/// Shortest-path lengths from `a` to every point.
std::vector<double> inner_distances_from(const PointCloud& cloud, std::size_t a);

/// Distance from the origin to the segment [a, b].
double segment_clearance(const RealPoint& a, const RealPoint& b);

struct LneEstimate {
  double ratio = 1.0;
  std::pair<std::size_t, std::size_t> witness{0, 0};
  double scale = 0.0;
  std::size_t pairs = 0;
};

struct LneOptions {
  std::size_t count = 2000;
  std::size_t neighbours = 16;
  std::size_t sources = 96;
  std::uint64_t seed = 0;
};

/// Max of inner over Euclidean distance over pairs (p, q) from a spread of source points (one per
/// norm stratum, plus up to `sources` innermost samples that share their fibre) to every sample,
/// restricted to pairs whose straight segment avoids the unsampled ball B(0, scale/4).
LneEstimate cloud_lne_ratio(const PointCloud& cloud, const LneOptions& opts = {});

/// sample_curve followed by cloud_lne_ratio.
LneEstimate lne_ratio(const Polynomial& f, double scale, const LneOptions& opts = {});

struct LneDecision {
  bool lne = false;
  /// Empty when lne is true; otherwise e.g. "branch of order 2" or "shared tangent (1:0)".
  std::string reason;
  BranchDecomposition branches;
};

/// A reduced plane-curve germ is LNE iff every branch is smooth and the tangents are distinct.
LneDecision lne_decide_plane_curve(const Polynomial& f, std::uint64_t seed = 0);

struct LipschitzSample {
  RealPoint point;
  double value = 0.0;
};

/// McShane extension H(x) = min_i (h_i + C |x - p_i|). Throws InputError naming the first pair
/// (i, j) with |h_i - h_j| > C |p_i - p_j| (relative slack 1e-12), for C < 0, an empty sample
/// set, or mismatched dimensions.
double lipschitz_extend(const std::vector<LipschitzSample>& samples, double c, const RealPoint& query);

/// Checks the hypothesis of lipschitz_extend; returns the first violating pair, if any.
std::optional<std::pair<std::size_t, std::size_t>> lipschitz_violation(const std::vector<LipschitzSample>& samples,
                                                                        double c);

}  // namespace germ
