#include "germ/lip_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include "germ/errors.hpp"
#include "germ/generic_frame.hpp"
#include "germ/seeding.hpp"
#include "germ/uniroots.hpp"

namespace germ {

namespace {

double norm(const RealPoint& p) {
  double s = 0.0;
  for (const double v : p) s += v * v;
  return std::sqrt(s);
}

double distance(const RealPoint& a, const RealPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

double segment_clearance(const RealPoint& a, const RealPoint& b) {
  double ab2 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab2 += (b[i] - a[i]) * (b[i] - a[i]);
    dot += -a[i] * (b[i] - a[i]);
  }
  const double t = ab2 > 0.0 ? std::clamp(dot / ab2, 0.0, 1.0) : 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double v = a[i] + t * (b[i] - a[i]);
    s += v * v;
  }
  return std::sqrt(s);
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

std::vector<double> shortest_paths(const PointCloud& cloud, std::size_t source) {
  std::vector<double> dist(cloud.points.size(), kInfiniteDistance);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : cloud.adjacency[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        queue.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

void add_edge(PointCloud& cloud, std::size_t a, std::size_t b) {
  auto& adj = cloud.adjacency[a];
  if (std::any_of(adj.begin(), adj.end(), [&](const auto& e) { return e.first == b; })) return;
  const double w = distance(cloud.points[a], cloud.points[b]);
  adj.emplace_back(b, w);
  cloud.adjacency[b].emplace_back(a, w);
}

}  // namespace

PointCloud sample_curve(const Polynomial& f, double scale, const CurveSampleOptions& opts) {
  if (f.nvars() != 2) throw InputError("curve sampling needs a plane curve (two variables)");
  if (!(scale > 0.0)) throw InputError("scale must be positive");
  if (opts.count == 0) throw InputError("count must be positive");
  if (opts.neighbours != 8 && opts.neighbours != 16) throw InputError("neighbours must be 8 or 16");
  const GenericFrame frame = choose_generic_frame(f, derive_seed(opts.seed, "cloud-frame"));
  const FiberFamily fiber(frame.transformed);
  const Polynomial gx = derivative(frame.transformed, 0), gy = derivative(frame.transformed, 1);

  // Grid of fibres x' = r_j exp(2 pi i k / n_theta); every root is kept for matching, and the
  // ones with norm in [scale/4, scale] become samples.
  struct Fibre {
    Complex x;
    std::vector<Complex> roots;
    std::vector<long> sample;  // sample index per root, -1 when out of range
  };
  std::vector<std::vector<Fibre>> grid;
  PointCloud cloud;
  cloud.scale = scale;
  int n_theta = 64;
  for (;; n_theta *= 2) {
    if (n_theta > 4096) {
      std::ostringstream msg;
      msg << "only " << cloud.points.size() << " curve points found at scale " << scale;
      throw NumericError(msg.str());
    }
    grid.clear();
    cloud.points.clear();
    cloud.fibre.clear();
    // Rings grow by 1 + 2 pi / n_theta so grid cells are close to square.
    const double ratio = 1.0 + 2.0 * std::numbers::pi / n_theta;
    for (double r = scale / 20.0; r <= scale; r *= ratio) {
      auto& ring = grid.emplace_back();
      for (int k = 0; k < n_theta; ++k) {
        Fibre fb{std::polar(r, 2.0 * std::numbers::pi * k / n_theta), {}, {}};
        fb.roots = find_roots(fiber(fb.x)).roots;
        for (const Complex y : fb.roots) {
          const auto p = frame.to_original(fb.x, y);
          RealPoint q{p[0].real(), p[0].imag(), p[1].real(), p[1].imag()};
          const double n = norm(q);
          if (n < scale / 4.0 || n > scale) {
            fb.sample.push_back(-1);
            continue;
          }
          fb.sample.push_back(static_cast<long>(cloud.points.size()));
          cloud.points.push_back(std::move(q));
          cloud.fibre.push_back(static_cast<long>(grid.size() - 1) * n_theta + k);
        }
        ring.push_back(std::move(fb));
      }
    }
    if (cloud.points.size() >= opts.count) break;
  }

  // Edges follow the sheets: a sample is joined to the root of a neighbouring fibre that its
  // tangent predicts, when that root is unambiguous. Chords between distinct sheets, which can
  // be far shorter than the grid spacing near 0, never appear.
  cloud.adjacency.assign(cloud.points.size(), {});
  std::vector<std::pair<int, int>> stencil{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  if (opts.neighbours == 16) stencil.insert(stencil.end(), {{1, 2}, {2, 1}, {1, -2}, {2, -1}});
  const int rings = static_cast<int>(grid.size());
  for (int j = 0; j < rings; ++j) {
    for (int k = 0; k < n_theta; ++k) {
      const Fibre& here = grid[j][k];
      for (std::size_t r = 0; r < here.roots.size(); ++r) {
        if (here.sample[r] < 0) continue;
        const std::array<Complex, 2> at{here.x, here.roots[r]};
        const Complex slope = -evaluate(gx, at) / evaluate(gy, at);
        if (!std::isfinite(std::abs(slope))) continue;
        for (const auto& [dj0, dk0] : stencil) {
          for (const int sign : {1, -1}) {
            const int jj = j + sign * dj0;
            if (jj < 0 || jj >= rings) continue;
            const Fibre& there = grid[jj][((k + sign * dk0) % n_theta + n_theta) % n_theta];
            const Complex predicted = here.roots[r] + slope * (there.x - here.x);
            double best = kInfiniteDistance, second = kInfiniteDistance;
            std::size_t arg = 0;
            for (std::size_t q = 0; q < there.roots.size(); ++q) {
              const double d = std::abs(there.roots[q] - predicted);
              if (d < best) {
                second = best;
                best = d;
                arg = q;
              } else if (d < second) {
                second = d;
              }
            }
            if (best <= second / 3.0 && there.sample[arg] >= 0) {
              add_edge(cloud, static_cast<std::size_t>(here.sample[r]), static_cast<std::size_t>(there.sample[arg]));
            }
          }
        }
      }
    }
  }

  const std::size_t count = cloud.points.size();
  if (opts.adjoin_origin) {
    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
      for (const auto& e : cloud.adjacency[i]) parent[find_root(parent, i)] = find_root(parent, e.first);
    }
    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < count; ++i) components[find_root(parent, i)].push_back(i);
    const std::size_t origin = count;
    cloud.points.push_back(RealPoint(4, 0.0));
    cloud.fibre.push_back(-1);
    cloud.adjacency.emplace_back();
    cloud.origin = origin;
    for (auto& [root, members] : components) {
      std::sort(members.begin(), members.end(),
                [&](std::size_t a, std::size_t b) { return norm(cloud.points[a]) < norm(cloud.points[b]); });
      const double inner = norm(cloud.points[members.front()]);
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (k >= opts.neighbours && norm(cloud.points[members[k]]) > 1.05 * inner) break;
        add_edge(cloud, origin, members[k]);
      }
    }
  }
  return cloud;
}

void reweight(PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.adjacency.size(); ++i) {
    for (auto& [j, w] : cloud.adjacency[i]) w = distance(cloud.points[i], cloud.points[j]);
  }
}

std::vector<double> inner_distances_from(const PointCloud& cloud, std::size_t a) {
  if (a >= cloud.points.size()) throw InputError("point index out of range");
  return shortest_paths(cloud, a);
}

double inner_distance(const PointCloud& cloud, std::size_t a, std::size_t b) {
  if (a >= cloud.points.size() || b >= cloud.points.size()) throw InputError("point index out of range");
  if (a == b) return 0.0;
  return shortest_paths(cloud, a)[b];
}

LneEstimate cloud_lne_ratio(const PointCloud& cloud, const LneOptions& opts) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (!cloud.origin || i != *cloud.origin) order.push_back(i);
  }
  if (order.size() < 2) throw InputError("the cloud needs at least two samples");
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return norm(cloud.points[a]) < norm(cloud.points[b]); });
  // One random source per stratum of the norm-sorted samples.
  std::mt19937_64 rng(derive_seed(opts.seed, "lne-sources"));
  const std::size_t strata = std::max<std::size_t>(1, std::min(opts.sources, order.size()));
  std::vector<std::size_t> sources;
  for (std::size_t s = 0; s < strata; ++s) {
    const std::size_t lo = s * order.size() / strata, hi = (s + 1) * order.size() / strata;
    sources.push_back(order[lo + rng() % (hi - lo)]);
  }
  // Every innermost sample sharing its fibre with another sample: these carry the cross-sheet
  // pairs closest to 0, where tangential sheets are hardest to tell apart.
  std::map<long, int> per_fibre;
  for (const std::size_t i : order) ++per_fibre[cloud.fibre[i]];
  const double inner = norm(cloud.points[order.front()]);
  std::vector<std::size_t> paired;
  for (const std::size_t i : order) {
    if (norm(cloud.points[i]) > 1.1 * inner) break;
    if (per_fibre[cloud.fibre[i]] > 1) paired.push_back(i);
  }
  const std::size_t stride = std::max<std::size_t>(1, paired.size() / std::max<std::size_t>(1, opts.sources));
  for (std::size_t i = 0; i < paired.size(); i += stride) sources.push_back(paired[i]);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  // Chords through the unsampled ball B(0, scale/4) have no sampled path to follow.
  const double hole = 0.999 * cloud.scale / 4.0;
  LneEstimate est;
  est.scale = cloud.scale;
  for (const std::size_t s : sources) {
    const auto dist = shortest_paths(cloud, s);
    for (const std::size_t t : order) {
      if (t == s) continue;
      const double e = distance(cloud.points[s], cloud.points[t]);
      if (!(e > 0.0) || segment_clearance(cloud.points[s], cloud.points[t]) < hole) continue;
      ++est.pairs;
      const double r = dist[t] / e;
      if (r > est.ratio || est.pairs == 1) {
        est.ratio = r;
        est.witness = {s, t};
      }
    }
  }
  if (est.pairs == 0) throw NumericError("no admissible sample pairs for the LNE ratio");
  return est;
}

LneEstimate lne_ratio(const Polynomial& f, double scale, const LneOptions& opts) {
  const PointCloud cloud =
      sample_curve(f, scale, {.count = opts.count, .neighbours = opts.neighbours, .seed = opts.seed, .adjoin_origin = true});
  return cloud_lne_ratio(cloud, opts);
}

LneDecision lne_decide_plane_curve(const Polynomial& f, std::uint64_t seed) {
  LneDecision out;
  out.branches = branches(f, {.seed = seed});
  for (const auto& b : out.branches.branches) {
    if (b.order > 1) {
      out.reason = "branch of order " + std::to_string(b.order);
      return out;
    }
  }
  const auto& bs = out.branches.branches;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = i + 1; j < bs.size(); ++j) {
      if (same_line(bs[i].tangent, bs[j].tangent)) {
        out.reason = "shared tangent " + format_line(bs[i].tangent);
        return out;
      }
    }
  }
  out.lne = true;
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> lipschitz_violation(const std::vector<LipschitzSample>& samples,
                                                                        double c) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double bound = c * distance(samples[i].point, samples[j].point);
      if (std::abs(samples[i].value - samples[j].value) > bound * (1.0 + 1e-12)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

double lipschitz_extend(const std::vector<LipschitzSample>& samples, double c, const RealPoint& query) {
  if (samples.empty()) throw InputError("Lipschitz extension needs at least one sample");
  if (!(c >= 0.0)) throw InputError("Lipschitz constant must be non-negative");
  for (const auto& s : samples) {
    if (s.point.size() != query.size()) throw InputError("sample and query dimensions differ");
  }
  if (const auto bad = lipschitz_violation(samples, c)) {
    const auto [i, j] = *bad;
    std::ostringstream msg;
    msg << "samples " << i << " and " << j << " violate the Lipschitz bound: |h" << i << " - h" << j
        << "| = " << std::abs(samples[i].value - samples[j].value) << " > C*|p" << i << " - p" << j
        << "| = " << c * distance(samples[i].point, samples[j].point);
    throw InputError(msg.str());
  }
  double best = kInfiniteDistance;
  for (const auto& s : samples) {
    const double d = distance(s.point, query);
    // Exact at sample points; rounding in h_j + C d could otherwise undercut h_i.
    if (d == 0.0) return s.value;
    best = std::min(best, s.value + c * d);
  }
  return best;
}

}  // namespace germ
