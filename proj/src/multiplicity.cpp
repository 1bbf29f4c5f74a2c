#include "germ/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "germ/branch.hpp"
#include "germ/errors.hpp"
#include "germ/generic_frame.hpp"
#include "germ/seeding.hpp"
#include "germ/uniroots.hpp"

namespace germ {

namespace {

std::vector<Complex> random_unit_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  double norm = 0.0;
  for (auto& c : v) {
    c = {g(rng), g(rng)};
    norm += std::norm(c);
  }
  norm = std::sqrt(norm);
  for (auto& c : v) c /= norm;
  return v;
}

void require_germ(const Polynomial& f) {
  if (f.is_zero()) throw InputError("the zero polynomial has no multiplicity");
  if (!f.constant_term().is_zero()) throw InputError("f(0) != 0: the origin is not on the hypersurface");
}

mpz_class binomial_or_zero(long a, long n) {
  if (n < 0 || a < n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(n));
  return r;
}

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) throw InputError("Hilbert function value overflows 64 bits");
  return z.get_si();
}

}  // namespace

int mult_order(const Polynomial& f) {
  require_germ(f);
  return *ord0(f);
}

GenericLineWitness mult_generic_line(const Polynomial& f, const GenericLineOptions& opts) {
  require_germ(f);
  if (f.nvars() < 2) throw InputError("generic-line route needs at least two variables");
  if (opts.radii.empty() || opts.seeds < 1) throw InputError("generic-line route needs radii and seeds");
  GenericLineWitness w;
  std::map<int, int> tally;
  for (int s = 0; s < opts.seeds; ++s) {
    const std::uint64_t seed = derive_seed(opts.seed, "generic-line", static_cast<std::uint64_t>(s));
    std::mt19937_64 rng(seed);
    // A line almost inside the tangent cone leaves a root just outside the disc. Redraw while
    // any radius shows a root in the annulus rho <= |t| <= kAnnulus * rho.
    constexpr double kAnnulus = 5.0;
    std::vector<Complex> dir, off_dir;
    for (int draw = 0; draw < 10; ++draw) {
      dir = random_unit_vector(rng, f.nvars());
      off_dir = random_unit_vector(rng, f.nvars());
      bool clean = true;
      for (const double radius : opts.radii) {
        std::vector<Complex> base(off_dir);
        for (auto& c : base) c *= opts.offset_ratio * radius;
        const UnivariatePoly p = restrict_to_line(f, base, dir);
        if (p.degree() < 1) continue;
        for (const Complex t : find_roots(p).roots) {
          if (std::abs(t) >= radius && std::abs(t) <= kAnnulus * radius) clean = false;
        }
      }
      if (clean) break;
    }
    std::vector<int> counts;
    for (const double radius : opts.radii) {
      LineVote vote{radius, seed, -1};
      double rho = radius;
      for (int attempt = 0; attempt < 5 && vote.count < 0; ++attempt, rho *= 1.01) {
        std::vector<Complex> base(off_dir);
        for (auto& c : base) c *= opts.offset_ratio * rho;
        try {
          vote.count = count_roots_in_disc(restrict_to_line(f, base, dir), 0.0, rho);
          vote.radius = rho;
          if (w.direction.empty()) {
            w.direction = dir;
            w.offset = base;
            w.radius = rho;
          }
        } catch (const NumericError&) {
        }
      }
      counts.push_back(vote.count);
      w.votes.push_back(vote);
    }
    // A seed votes only if its count is stable across the radii.
    if (counts.front() >= 0 && std::all_of(counts.begin(), counts.end(), [&](int c) { return c == counts.front(); })) {
      ++tally[counts.front()];
    }
  }
  const auto winner = std::max_element(tally.begin(), tally.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
  if (winner == tally.end() || 2 * winner->second <= opts.seeds) {
    std::ostringstream msg;
    msg << "generic-line counts have no stable majority across radii/seeds:";
    for (const auto& v : w.votes) msg << " (r=" << v.radius << ", seed=" << v.seed << ") -> " << v.count << ";";
    throw NumericError(msg.str());
  }
  w.multiplicity = winner->first;
  return w;
}

int mult_cone_sum(const Polynomial& f, std::uint64_t seed) {
  return relative_multiplicities(f, {.seed = seed}).total();
}

DensityEstimate mult_density(const Polynomial& f, const DensityOptions& opts) {
  require_germ(f);
  if (f.nvars() != 2) throw InputError("density route is implemented for plane curves");
  if (opts.radii.empty() || opts.samples_per_radius == 0) throw InputError("density needs radii and samples");
  for (std::size_t i = 0; i < opts.radii.size(); ++i) {
    if (!(opts.radii[i] > 0.0) || (i > 0 && opts.radii[i] >= opts.radii[i - 1])) {
      throw InputError("density radii must be positive and strictly decreasing");
    }
  }
  const GenericFrame frame = choose_generic_frame(f, derive_seed(opts.seed, "density-frame"));
  const Polynomial& g = frame.transformed;
  const FiberFamily fiber(g);
  const Polynomial gx = derivative(g, 0), gy = derivative(g, 1);

  DensityEstimate out;
  for (std::size_t ri = 0; ri < opts.radii.size(); ++ri) {
    const double r = opts.radii[ri];
    std::mt19937_64 rng(derive_seed(opts.seed, "density", ri));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    DensityRow row{r, 0.0, 0.0, 0, 0};
    double sum = 0.0, sum2 = 0.0;
    std::vector<Complex> warm;
    while (row.samples < opts.samples_per_radius) {
      // Uniform in the disc of radius r.
      const Complex x = std::polar(r * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
      const RootSet ys = find_roots(fiber(x));
      double weight = 0.0;
      bool bad = !ys.converged;
      for (const Complex y : ys.roots) {
        if (std::norm(x) + std::norm(y) > r * r) continue;
        const std::array<Complex, 2> p{x, y};
        const Complex dx = evaluate(gx, p), dy = evaluate(gy, p);
        const double slope2 = std::norm(dx) / std::norm(dy);
        if (!(std::isfinite(slope2)) || slope2 > 1e12) {
          bad = true;
          break;
        }
        weight += 1.0 + slope2;
      }
      if (bad) {
        ++row.discarded;
        if (row.discarded > opts.samples_per_radius / 100 + 1) {
          throw NumericError("density: more than 1% of samples hit a vanishing f_y");
        }
        continue;
      }
      sum += weight;
      sum2 += weight * weight;
      ++row.samples;
    }
    const double n = static_cast<double>(row.samples);
    row.estimate = sum / n;
    row.std_error = n > 1 ? std::sqrt(std::max(0.0, (sum2 / n - row.estimate * row.estimate) / (n - 1))) : 0.0;
    out.table.push_back(row);
  }
  out.estimate = out.table.back().estimate;
  out.std_error = out.table.back().std_error;
  return out;
}

long long hilbert_function_hypersurface(int nvars, int m, int k) {
  if (nvars < 1) throw InputError("Hilbert function needs at least one variable");
  if (m < 1) throw InputError("initial-form degree must be at least 1");
  if (k < 0) throw InputError("Hilbert function needs k >= 0");
  return to_ll(binomial_or_zero(nvars + k - 1, nvars) - binomial_or_zero(nvars + k - 1 - m, nvars));
}

long long hilbert_function_ambient(int nvars, int k) {
  if (nvars < 1) throw InputError("Hilbert function needs at least one variable");
  if (k < 0) throw InputError("Hilbert function needs k >= 0");
  return to_ll(binomial_or_zero(nvars + k - 1, nvars));
}

HilbertData hilbert_samuel_extract(const std::map<int, long long>& values, int d) {
  if (d < 0) throw InputError("dimension must be non-negative");
  const std::size_t need = static_cast<std::size_t>(d) + 2;
  if (values.size() < need) throw InputError("window too small: need at least d+2 values");
  std::vector<std::pair<int, long long>> tail(std::prev(values.end(), static_cast<long>(need)), values.end());
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (tail[i].first != tail[i - 1].first + 1) throw InputError("window is not contiguous in k");
  }
  // diffs[j] = j-th forward difference at the first tail point.
  std::vector<mpz_class> row;
  for (const auto& kv : tail) row.emplace_back(static_cast<long>(kv.second));
  std::vector<mpz_class> diffs;
  while (!row.empty()) {
    diffs.push_back(row.front());
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
    row.pop_back();
  }
  if (diffs[d + 1] != 0) throw InputError("window too small: tail is not yet polynomial of degree d");
  HilbertData h;
  h.values = values;
  h.d = d;
  const mpz_class e = diffs[d];
  if (e <= 0) throw InputError("window too small: leading coefficient is not positive");
  h.e = to_ll(e);
  // Newton form P(t) = sum_j diffs[j] * C(t - k0, j).
  const int k0 = tail.front().first;
  std::vector<mpq_class> coeffs(d + 1, 0);
  std::vector<mpq_class> basis{1};  // coefficients of C(t - k0, j)
  for (int j = 0; j <= d; ++j) {
    for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += basis[i] * mpq_class(diffs[j]);
    std::vector<mpq_class> next(basis.size() + 1, 0);
    const mpq_class shift(-(k0 + j));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      next[i + 1] += basis[i] / (j + 1);
      next[i] += basis[i] * shift / (j + 1);
    }
    basis = std::move(next);
  }
  for (auto& c : coeffs) c.canonicalize();
  h.samuel_coefficients = std::move(coeffs);
  return h;
}

double growth_exponent(const Polynomial& f, const GrowthOptions& opts) {
  if (f.is_zero()) throw InputError("growth exponent of the zero polynomial is infinite");
  if (opts.scales.size() < 2 || opts.rays < 1) throw InputError("growth exponent needs two scales and a ray");
  const double largest = *std::max_element(opts.scales.begin(), opts.scales.end());
  std::mt19937_64 rng(derive_seed(opts.seed, "growth"));
  constexpr double kStraightness = 0.01;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.rays; ++r) {
    const auto v = random_unit_vector(rng, f.nvars());
    std::vector<Complex> p(v.size());
    auto at = [&](double t) {
      for (std::size_t i = 0; i < v.size(); ++i) p[i] = t * v[i];
      return std::abs(evaluate(f, p));
    };
    if (at(largest) < 1e-14) continue;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> logs;
    bool ok = true;
    for (const double t : opts.scales) {
      const double val = at(t);
      if (!(val > 0.0)) {
        ok = false;
        break;
      }
      const double lx = std::log(t), ly = std::log(val);
      logs.push_back(ly);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    if (!ok) continue;
    const double n = static_cast<double>(opts.scales.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    // A bent log-log profile means the ray is still pre-asymptotic near V(in f).
    double worst = 0.0;
    for (std::size_t i = 0; i < opts.scales.size(); ++i) {
      worst = std::max(worst, std::abs(logs[i] - (icpt + slope * std::log(opts.scales[i]))));
    }
    if (worst > kStraightness) continue;
    best = std::min(best, slope);
  }
  if (!std::isfinite(best)) throw NumericError("every sampled ray lies near the zero set or its tangent cone; resample with another seed");
  return best;
}

LipschitzBounds lipschitz_mult_bounds(int m, double c1, double c2, int d) {
  if (m < 1) throw InputError("multiplicity must be at least 1");
  if (d < 1) throw InputError("dimension must be at least 1");
  if (!(c1 * c2 >= 1.0)) throw InputError("C1*C2 must be at least 1");
  const double k = std::pow(c1 * c2, 2 * d);
  LipschitzBounds b;
  b.lower = m / k;
  b.upper = m * k;
  b.integers_inside = static_cast<int>(std::floor(b.upper) - std::ceil(b.lower)) + 1;
  b.pinned = b.integers_inside == 1;
  return b;
}

MultiplicityReport report(const Polynomial& f, const ReportOptions& opts) {
  require_germ(f);
  static const std::vector<std::string> all{"order", "line", "cone", "density", "hilbert"};
  for (const auto& r : opts.routes) {
    if (std::find(all.begin(), all.end(), r) == all.end()) throw InputError("unknown route '" + r + "'");
  }
  auto wanted = [&](const std::string& r) {
    return opts.routes.empty() || std::find(opts.routes.begin(), opts.routes.end(), r) != opts.routes.end();
  };
  const std::size_t n = f.nvars();
  MultiplicityReport rep;
  auto run = [&](const std::string& name, bool applies, const char* why, auto&& body) {
    if (!wanted(name)) return;
    if (!applies) {
      if (!opts.routes.empty()) rep.notes.push_back(name + " route skipped: " + why);
      return;
    }
    try {
      body();
    } catch (const InputError& e) {
      rep.failures.push_back({name, e.what(), true});
    } catch (const std::exception& e) {
      rep.failures.push_back({name, e.what(), false});
    }
  };
  run("order", true, "", [&] { rep.order = mult_order(f); });
  run("line", n >= 2, "needs at least two variables",
      [&] { rep.line = mult_generic_line(f, {.seed = derive_seed(opts.seed, "route-line")}); });
  run("cone", n == 2, "plane curves only", [&] { rep.cone_sum = mult_cone_sum(f, derive_seed(opts.seed, "route-cone")); });
  run("density", n == 2, "plane curves only", [&] {
    rep.density = mult_density(f, {.radii = opts.density_radii,
                                   .samples_per_radius = opts.density_samples,
                                   .seed = derive_seed(opts.seed, "route-density")});
  });
  run("hilbert", true, "", [&] {
    const int m = *ord0(f);
    std::map<int, long long> values;
    for (int k = 1; k <= m + static_cast<int>(n) + 2; ++k) values[k] = hilbert_function_hypersurface(static_cast<int>(n), m, k);
    rep.hilbert = hilbert_samuel_extract(values, static_cast<int>(n) - 1);
  });

  std::vector<long long> ints;
  if (rep.order) ints.push_back(*rep.order);
  if (rep.line) ints.push_back(rep.line->multiplicity);
  if (rep.cone_sum) ints.push_back(*rep.cone_sum);
  if (rep.hilbert) ints.push_back(rep.hilbert->e);
  bool agree = rep.failures.empty() && !ints.empty() &&
               std::all_of(ints.begin(), ints.end(), [&](long long v) { return v == ints.front(); });
  if (rep.density && !ints.empty()) {
    const double gap = std::abs(rep.density->estimate - static_cast<double>(ints.front()));
    if (gap > opts.density_tolerance) {
      agree = false;
      std::ostringstream msg;
      msg << "density " << rep.density->estimate << " is " << gap << " from the integer routes";
      rep.notes.push_back(msg.str());
    }
  }
  rep.agree = agree;
  return rep;
}

}  // namespace germ
