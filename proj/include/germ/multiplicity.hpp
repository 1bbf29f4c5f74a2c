#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "germ/polynomial.hpp"

namespace germ {

/// m = ord0(f) for a hypersurface germ. Throws InputError for the zero polynomial or f(0) != 0.
int mult_order(const Polynomial& f);

struct LineVote {
  double radius = 0.0;
  std::uint64_t seed = 0;
  /// Roots in the disc, or -1 when the count could not be certified.
  int count = -1;
};

struct GenericLineWitness {
  int multiplicity = 0;
  std::vector<Complex> direction;
  std::vector<Complex> offset;
  double radius = 0.0;
  std::vector<LineVote> votes;
};

struct GenericLineOptions {
  std::uint64_t seed = 0;
  std::vector<double> radii{1e-2, 5e-3, 2.5e-3};
  int seeds = 3;
  double offset_ratio = 0.1;
};

/// Number of intersections near 0 of V(f) with a random affine line at distance
/// offset_ratio * rho from the origin, counted in |t| < rho. A seed votes when its count is the
/// same at every radius; a strict majority of seeds must agree, otherwise NumericError listing
/// the vote table.
GenericLineWitness mult_generic_line(const Polynomial& f, const GenericLineOptions& opts = {});

/// Sum over tangent lines of the relative multiplicities (plane curves, reduced).
int mult_cone_sum(const Polynomial& f, std::uint64_t seed = 0);

struct DensityRow {
  double radius = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::size_t discarded = 0;
};

struct DensityEstimate {
  /// Estimate at the smallest radius.
  double estimate = 0.0;
  double std_error = 0.0;
  std::vector<DensityRow> table;
};

struct DensityOptions {
  std::vector<double> radii{1e-1, 3e-2, 1e-2};
  std::size_t samples_per_radius = 100000;
  std::uint64_t seed = 0;
};

/// Monte-Carlo area of V(f) in the ball B_r over pi r^2, for a plane curve.
DensityEstimate mult_density(const Polynomial& f, const DensityOptions& opts = {});

/// dim O/(in f, M^k) for a degree-m initial form in n variables: C(n+k-1, n) - C(n+k-1-m, n).
long long hilbert_function_hypersurface(int nvars, int m, int k);
/// dim O/M^k in n variables: C(n+k-1, n).
long long hilbert_function_ambient(int nvars, int k);

struct HilbertData {
  std::map<int, long long> values;
  /// Coefficients of P(t), constant term first.
  std::vector<mpq_class> samuel_coefficients;
  long long e = 0;
  int d = 0;
};

/// Fits the degree-d Hilbert-Samuel polynomial through the last d+1 values; the (d+1)-st
/// difference over the last d+2 values must vanish. Throws InputError "window too small" otherwise
/// or when the window is not contiguous.
HilbertData hilbert_samuel_extract(const std::map<int, long long>& values, int d);

struct GrowthOptions {
  std::vector<double> scales{1e-2, 1e-3, 1e-4, 1e-5};
  int rays = 32;
  std::uint64_t seed = 0;
};

/// Minimum over random unit rays v of the least-squares slope of log|f(t v)| against log t. Rays
/// with |f| < 1e-14 at the largest scale, or whose log-log profile is visibly bent, are skipped.
double growth_exponent(const Polynomial& f, const GrowthOptions& opts = {});

struct LipschitzBounds {
  double lower = 0.0;
  double upper = 0.0;
  int integers_inside = 0;
  bool pinned = false;
};

/// [m / K, m K] with K = (C1 C2)^(2d). Pinned iff exactly one integer lies in the interval.
LipschitzBounds lipschitz_mult_bounds(int m, double c1, double c2, int d);

struct RouteError {
  std::string route;
  std::string message;
  /// The route rejected the input (as opposed to failing numerically).
  bool input_error = false;
};

struct MultiplicityReport {
  std::optional<int> order;
  std::optional<GenericLineWitness> line;
  std::optional<int> cone_sum;
  std::optional<DensityEstimate> density;
  std::optional<HilbertData> hilbert;
  bool agree = false;
  std::vector<RouteError> failures;
  std::vector<std::string> notes;
};

struct ReportOptions {
  std::uint64_t seed = 0;
  /// Subset of {"order", "line", "cone", "density", "hilbert"}; empty means all that apply.
  std::vector<std::string> routes{};
  std::size_t density_samples = 20000;
  std::vector<double> density_radii{1e-1, 3e-2, 1e-2};
  double density_tolerance = 0.1;
};

/// Runs every requested route that applies to f. Route errors are recorded, not thrown; agree is
/// false when any requested route failed.
MultiplicityReport report(const Polynomial& f, const ReportOptions& opts = {});

}  // namespace germ
