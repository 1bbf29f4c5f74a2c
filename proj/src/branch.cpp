#include "germ/branch.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "exact_univariate.hpp"
#include "germ/errors.hpp"
#include "germ/seeding.hpp"
#include "germ/uniroots.hpp"

namespace germ {

namespace {

// Roots |y| <= kSmallFactor * kMaxFrameSlope * eps belong to the germ; the next root must lie
// beyond kGapFactor times that bound.
constexpr double kSmallFactor = 2.0;
constexpr double kGapFactor = 4.0;

// A repeated factor h^2 | f makes g(x0, .) non-squarefree for every x0; a reduced f does so
// only at finitely many x0. Two random rational abscissae decide it exactly.
void require_squarefree(const Polynomial& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 97);
  for (int trial = 0; trial < 2; ++trial) {
    const GaussianRational x0(mpq_class(num(rng), 101), mpq_class(num(rng), 103));
    exact::Poly fiber(g.degree() + 1);
    for (const auto& [m, c] : g.terms()) {
      GaussianRational term = c;
      for (int k = 0; k < m[0]; ++k) term *= x0;
      fiber[m[1]] += term;
    }
    exact::trim(fiber);
    if (exact::is_squarefree(fiber)) return;
  }
  throw InputError("input is not squarefree (repeated factor); branches need a reduced curve");
}

std::size_t assign_line(const std::array<Complex, 2>& direction, const std::vector<TangentLine>& lines) {
  double best = 2.0, second = 2.0;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const double d = projective_distance(direction, lines[k].direction);
    if (d < best) {
      second = best;
      best = d;
      arg = k;
    } else if (d < second) {
      second = d;
    }
  }
  if (lines.empty() || best > 0.25 || (lines.size() > 1 && best > second / 3.0)) {
    std::ostringstream msg;
    msg << "branch direction (" << direction[0] << " : " << direction[1]
        << ") cannot be assigned to a unique tangent line";
    throw NumericError(msg.str());
  }
  return arg;
}

struct Rung {
  BranchDecomposition decomposition;
  std::vector<std::pair<int, std::size_t>> signature;  // sorted (order, cone line index)
};

Rung decompose_at(const GenericFrame& frame, double eps) {
  const FiberFamily family(frame.transformed);
  const PolyFamily fam = [&family](Complex x) { return family(x); };

  const TrackedPath loop = track_roots(fam, ParameterPath::circle(0.0, eps));
  const TrackedPath radial = track_roots(fam, ParameterPath::segment(eps, eps / 2));
  const auto& near = loop.samples.front().roots;
  const double bound = kSmallFactor * kMaxFrameSlope * eps;
  std::vector<std::size_t> small;
  for (std::size_t i = 0; i < near.size(); ++i) {
    const double r = std::abs(near[i]);
    if (r <= bound) small.push_back(i);
    else if (r <= kGapFactor * bound) throw NumericError("no clear gap between local and distant sheets");
  }
  if (small.empty()) throw NumericError("no local sheets found at this radius");

  // The two paths solve the same start polynomial; pair their sheets by position.
  std::vector<Complex> half(near.size());
  for (std::size_t i = 0; i < near.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < near.size(); ++k) {
      if (std::abs(radial.samples.front().roots[k] - near[i]) <
          std::abs(radial.samples.front().roots[best] - near[i])) {
        best = k;
      }
    }
    half[i] = radial.samples.back().roots[best];
  }

  std::vector<bool> is_small(near.size(), false);
  for (const std::size_t i : small) is_small[i] = true;
  for (const std::size_t i : small) {
    if (!is_small[loop.permutation[i]]) throw NumericError("monodromy mixes local and distant sheets");
  }

  Rung rung;
  auto& dec = rung.decomposition;
  dec.epsilon_used = eps;
  dec.coordinate_change = frame.numeric;
  dec.cone_lines = frame.cone_lines;
  for (const auto& cycle : permutation_cycles(loop.permutation)) {
    if (!is_small[cycle.front()]) continue;
    // Averaging over the conjugate sheets cancels the fractional Puiseux terms; one Richardson
    // step between eps and eps/2 removes the linear error in the slope.
    Complex s1{}, s2{};
    for (const std::size_t j : cycle) {
      s1 += near[j] / eps;
      s2 += half[j] / (eps / 2);
    }
    const double q = static_cast<double>(cycle.size());
    const Complex slope = 2.0 * (s2 / q) - s1 / q;
    Branch b;
    b.cycle = cycle;
    b.order = static_cast<int>(cycle.size());
    b.estimated_direction = frame.to_original(1.0, slope);
    const std::size_t line = assign_line(b.estimated_direction, frame.cone_lines);
    b.tangent = frame.cone_lines[line];
    b.witness_radius = eps;
    dec.branches.push_back(std::move(b));
    rung.signature.emplace_back(dec.branches.back().order, line);
  }
  std::sort(rung.signature.begin(), rung.signature.end());
  return rung;
}

struct Prepared {
  GenericFrame frame;
};

Prepared prepare(const Polynomial& f, std::uint64_t seed) {
  if (f.nvars() != 2) throw InputError("branches are computed for plane curves (two variables)");
  Prepared p{choose_generic_frame(f, derive_seed(seed, "branch-frame"))};
  require_squarefree(p.frame.transformed, derive_seed(seed, "squarefree"));
  return p;
}

Rung stable_rung(const GenericFrame& frame) {
  std::ostringstream failures;
  for (const double eps : epsilon_ladder()) {
    try {
      Rung here = decompose_at(frame, eps);
      const Rung finer = decompose_at(frame, eps / 2);
      if (here.signature == finer.signature) return here;
      failures << " eps=" << eps << ": structure changes at eps/2;";
    } catch (const NumericError& e) {
      failures << " eps=" << eps << ": " << e.what() << ";";
    }
  }
  throw NumericError("branch structure did not stabilize on the epsilon ladder (try exact preprocessing):" +
                     failures.str());
}

}  // namespace

std::vector<double> epsilon_ladder() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

BranchDecomposition branches(const Polynomial& f, const BranchOptions& opts) {
  const Prepared p = prepare(f, opts.seed);
  if (opts.epsilon) {
    if (!(*opts.epsilon > 0.0)) throw InputError("epsilon must be positive");
    return decompose_at(p.frame, *opts.epsilon).decomposition;
  }
  return stable_rung(p.frame).decomposition;
}

double stabilize_epsilon(const Polynomial& f, std::uint64_t seed) {
  const Prepared p = prepare(f, seed);
  return stable_rung(p.frame).decomposition.epsilon_used;
}

RelativeMultiplicities relative_multiplicities(const BranchDecomposition& decomposition) {
  RelativeMultiplicities out;
  for (const auto& line : decomposition.cone_lines) {
    int k = 0;
    for (const auto& b : decomposition.branches) {
      if (same_line(b.tangent, line)) k += b.order;
    }
    if (k > 0) out.entries.emplace_back(line, k);
  }
  return out;
}

RelativeMultiplicities relative_multiplicities(const Polynomial& f, const BranchOptions& opts) {
  return relative_multiplicities(branches(f, opts));
}

}  // namespace germ
