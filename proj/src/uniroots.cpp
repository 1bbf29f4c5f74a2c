#include "germ/uniroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "germ/errors.hpp"

namespace germ {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double backward_error(const UnivariatePoly& p, Complex z) {
  const double scale = p.magnitude_at(z);
  return scale == 0.0 ? 0.0 : std::abs(p(z)) / scale;
}

// p(z) and p'(z) in one Horner pass.
std::pair<Complex, Complex> eval_with_derivative(const std::vector<Complex>& a, Complex z) {
  Complex v{}, d{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

std::vector<Complex> aberth(const UnivariatePoly& p, std::span<const Complex> initial, bool& all_frozen) {
  const int n = p.degree();
  const auto& a = p.coeffs();
  std::vector<Complex> z(n);
  if (static_cast<int>(initial.size()) == n) {
    std::copy(initial.begin(), initial.end(), z.begin());
    // Coincident warm starts would stall the repulsion term.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (z[i] == z[j]) z[i] += Complex(1e-9, 1e-9) * (1.0 + std::abs(z[i])) * static_cast<double>(i + 1);
      }
    }
  } else {
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k] / a[n]));
    const double radius = 1.0 + bound;
    for (int k = 0; k < n; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / n + 0.4;
      z[k] = std::polar(radius, theta);
    }
  }

  std::vector<bool> frozen(n, false);
  const double freeze_level = 4.0 * n * kEps;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool moved = false;
    for (int k = 0; k < n; ++k) {
      if (frozen[k]) continue;
      const auto [v, d] = eval_with_derivative(a, z[k]);
      if (std::abs(v) <= freeze_level * p.magnitude_at(z[k])) {
        frozen[k] = true;
        continue;
      }
      const Complex ratio = v / d;
      Complex repel{};
      for (int j = 0; j < n; ++j) {
        if (j != k) repel += 1.0 / (z[k] - z[j]);
      }
      const Complex denom = 1.0 - ratio * repel;
      const Complex step = (std::isfinite(std::abs(denom)) && denom != Complex{}) ? ratio / denom : ratio;
      if (!std::isfinite(std::abs(step))) continue;
      z[k] -= step;
      moved = true;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[k])) frozen[k] = true;
    }
    if (!moved) break;
  }
  all_frozen = std::all_of(frozen.begin(), frozen.end(), [](bool f) { return f; });
  return z;
}

}  // namespace

RootSet find_roots(const UnivariatePoly& p, double tol, std::span<const Complex> initial) {
  if (p.degree() < 1) throw InputError("root finding needs degree >= 1");
  if (std::abs(p.leading()) <= 1e-300) throw InputError("leading coefficient is numerically zero");

  const auto& c = p.coeffs();
  std::size_t zeros = 0;
  while (c[zeros] == Complex{}) ++zeros;
  const UnivariatePoly reduced(std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));

  RootSet out;
  bool frozen = true;
  std::vector<Complex> nonzero;
  if (reduced.degree() == 1) {
    nonzero = {-reduced[0] / reduced[1]};
  } else if (reduced.degree() > 1) {
    std::vector<Complex> warm;
    if (initial.size() == static_cast<std::size_t>(p.degree())) {
      // Drop the warm-start entries closest to the split-off zero roots.
      warm.assign(initial.begin(), initial.end());
      for (std::size_t k = 0; k < zeros; ++k) {
        auto it = std::min_element(warm.begin(), warm.end(),
                                   [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
        warm.erase(it);
      }
    }
    nonzero = aberth(reduced, warm, frozen);
  }

  // Keep warm-start order when possible so callers can match cheaply.
  out.roots.assign(zeros, Complex{});
  out.roots.insert(out.roots.end(), nonzero.begin(), nonzero.end());
  for (const Complex r : out.roots) out.residual = std::max(out.residual, backward_error(p, r));
  out.converged = out.residual <= tol || (frozen && out.residual <= std::max(tol, 1e3 * kEps));
  return out;
}

int count_roots_in_disc(const UnivariatePoly& p, Complex center, double radius, const DiscCountOptions& opts) {
  if (!(radius > 0.0)) throw InputError("disc radius must be positive");
  if (p.is_zero()) throw InputError("cannot count roots of the zero polynomial");
  if (p.degree() == 0) return 0;

  const UnivariatePoly dp = p.derivative();
  const double n = p.degree();
  // min_distance: smallest Newton bound n |p / p'| over the samples; some root lies that close.
  auto winding = [&](std::size_t samples, double& min_distance, double& max_jump) {
    std::vector<Complex> values(samples);
    min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
      const Complex z = center + std::polar(radius, theta);
      values[k] = p(z);
      const double slope = std::abs(dp(z));
      if (values[k] == Complex{}) {
        min_distance = 0.0;
      } else if (slope > 0.0) {
        min_distance = std::min(min_distance, n * std::abs(values[k]) / slope);
      }
    }
    double total = 0.0;
    max_jump = 0.0;
    if (min_distance == 0.0) return total;
    for (std::size_t k = 0; k < samples; ++k) {
      const double jump = std::arg(values[(k + 1) % samples] / values[k]);
      total += jump;
      max_jump = std::max(max_jump, std::abs(jump));
    }
    return total / (2.0 * std::numbers::pi);
  };

  std::size_t samples = std::max<std::size_t>(opts.min_samples, 64 * static_cast<std::size_t>(p.degree()));
  double min_distance = 0.0, jump = 0.0;
  double previous = winding(samples, min_distance, jump);
  while (true) {
    if (min_distance < opts.guard * radius) {
      std::ostringstream msg;
      msg << "root within guard distance of the circle |t - c| = " << radius << "; perturb the radius";
      throw NumericError(msg.str());
    }
    samples *= 2;
    if (samples > opts.max_samples) throw NumericError("winding number did not stabilize; perturb the radius");
    const double current = winding(samples, min_distance, jump);
    // Stable count and phase increments well below pi: no increment can have been aliased.
    if (std::lround(current) == std::lround(previous) && std::abs(current - std::lround(current)) < 1e-6 &&
        jump < std::numbers::pi / 4) {
      return static_cast<int>(std::lround(current));
    }
    previous = current;
  }
}

ParameterPath ParameterPath::circle(Complex center, double radius, int turns) {
  return {[=](double s) { return center + std::polar(radius, 2.0 * std::numbers::pi * turns * s); }, true};
}

ParameterPath ParameterPath::segment(Complex from, Complex to) {
  return {[=](double s) { return from + s * (to - from); }, false};
}

namespace {

// Mutual nearest-neighbour matching with a separation margin; empty on failure.
std::vector<std::size_t> match_roots(std::span<const Complex> from, std::span<const Complex> to, double margin) {
  const std::size_t n = from.size();
  if (to.size() != n) return {};
  std::vector<std::size_t> match(n);
  std::vector<bool> taken(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity(), second = best;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(from[i] - to[j]);
      if (d < best) {
        second = best;
        best = d;
        arg = j;
      } else if (d < second) {
        second = d;
      }
    }
    if (n > 1 && best > margin * second) return {};
    if (taken[arg]) return {};
    taken[arg] = true;
    match[i] = arg;
  }
  return match;
}

}  // namespace

TrackedPath track_roots(const PolyFamily& family, const ParameterPath& path, const TrackOptions& opts) {
  TrackedPath out;
  const Complex start_param = path.at(0.0);
  const UnivariatePoly p0 = family(start_param);
  RootSet start = find_roots(p0, opts.tol);
  if (!start.converged) throw NumericError("root finder did not converge at path start");
  const int degree = p0.degree();
  out.samples.push_back({0.0, start_param, start.roots});

  double s = 0.0;
  double h = 1.0 / opts.initial_steps;
  const double max_step = 1.0 / opts.initial_steps;
  std::vector<Complex> current = start.roots;
  // Secant predictor: last accepted displacement per root and the step that produced it.
  std::vector<Complex> velocity(current.size(), Complex{});
  double last_h = 0.0;
  while (s < 1.0) {
    const double s_next = std::min(1.0, s + h);
    std::vector<Complex> predicted = current;
    if (last_h > 0.0) {
      for (std::size_t i = 0; i < predicted.size(); ++i) predicted[i] += velocity[i] * ((s_next - s) / last_h);
    }
    const Complex param = path.at(s_next);
    const UnivariatePoly p = family(param);
    if (p.degree() != degree) {
      std::ostringstream msg;
      msg << "family degree changes along the path at s = " << s_next;
      throw NumericError(msg.str());
    }
    const RootSet next = find_roots(p, opts.tol, predicted);
    std::vector<std::size_t> match;
    if (next.converged) match = match_roots(predicted, next.roots, opts.margin);
    if (match.empty()) {
      h *= 0.5;
      if (h < opts.min_step) {
        std::ostringstream msg;
        msg << "root collision on path near s = " << s << " (parameter " << path.at(s) << ")";
        throw NumericError(msg.str());
      }
      continue;
    }
    std::vector<Complex> ordered(current.size());
    for (std::size_t i = 0; i < match.size(); ++i) ordered[i] = next.roots[match[i]];
    for (std::size_t i = 0; i < ordered.size(); ++i) velocity[i] = ordered[i] - current[i];
    last_h = s_next - s;
    current = std::move(ordered);
    s = s_next;
    out.samples.push_back({s, param, current});
    h = std::min(max_step, 2.0 * h);
  }

  if (path.closed) {
    out.reference = start.roots;
  } else {
    const RootSet end = find_roots(family(path.at(1.0)), opts.tol);
    out.reference = end.roots;
  }
  out.permutation = match_roots(current, out.reference, 0.5);
  if (out.permutation.empty()) throw NumericError("tracked roots do not match the reference roots at path end");
  return out;
}

std::vector<std::vector<std::size_t>> permutation_cycles(std::span<const std::size_t> permutation) {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> seen(permutation.size(), false);
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t j = i; !seen[j]; j = permutation[j]) {
      seen[j] = true;
      cycle.push_back(j);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace germ
