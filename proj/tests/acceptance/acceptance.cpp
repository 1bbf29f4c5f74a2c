// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "germ/branch.hpp"
#include "germ/cli.hpp"
#include "germ/errors.hpp"
#include "germ/lip_geometry.hpp"
#include "germ/milnor.hpp"
#include "germ/multiplicity.hpp"
#include "germ/tangent_cone.hpp"
#include "germ/uniroots.hpp"

using namespace germ;

namespace {

Polynomial plane(const std::string& text) { return parse_polynomial(text, default_variable_names(2)); }
Polynomial space(const std::string& text) { return parse_polynomial(text, default_variable_names(3)); }

// Lowest total degree by scanning the terms directly.
int lowest_degree(const Polynomial& f) {
  int best = -1;
  for (const auto& [m, c] : f.terms()) {
    int d = 0;
    for (int e : m.exponents()) d += e;
    if (best < 0 || d < best) best = d;
  }
  return best;
}

// dim of polynomials of degree < k in n variables, by enumerating exponent vectors.
long long count_monomials_below(int n, int k) {
  long long count = 0;
  std::function<void(int, int)> walk = [&](int var, int budget) {
    if (var == n) {
      ++count;
      return;
    }
    for (int e = 0; e <= budget; ++e) walk(var + 1, budget - e);
  };
  walk(0, k - 1);
  return count;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << what << "; ";
    }
  }
};

using Criterion = std::function<void(Verdict&)>;

void cusp_cross_route(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const Polynomial f = plane("x^3 - y^2");
  const int order = mult_order(f);
  const int line = mult_generic_line(f).multiplicity;
  const int cone = mult_cone_sum(f);
  const DensityEstimate d = mult_density(f, {.radii = {1e-2}, .samples_per_radius = 100000});
  const double elapsed = seconds_since(t0);
  v.require(order == 2 && line == 2 && cone == 2, "integer routes disagree");
  v.require(d.estimate >= 1.9 && d.estimate <= 2.1, "density out of [1.9, 2.1]");
  v.require(elapsed < 10.0, "runtime over 10 s");
  v.detail << "order " << order << ", line " << line << ", cone " << cone << ", density " << d.estimate << " +- "
           << d.std_error << ", " << elapsed << " s";
}

void hilbert_samuel(Verdict& v) {
  std::map<int, long long> values;
  for (int k = 2; k <= 20; ++k) {
    values[k] = hilbert_function_hypersurface(2, 2, k);
    v.require(values[k] == 2 * k - 1, "H(" + std::to_string(k) + ") != 2k-1");
  }
  const HilbertData h = hilbert_samuel_extract(values, 1);
  v.require(h.e == 2 && h.d == 1, "cusp extraction");
  for (int n = 1; n <= 4; ++n) {
    std::map<int, long long> ambient;
    for (int k = 1; k <= n + 3; ++k) {
      ambient[k] = hilbert_function_ambient(n, k);
      v.require(ambient[k] == count_monomials_below(n, k), "ambient H differs from monomial count");
    }
    v.require(hilbert_samuel_extract(ambient, n).e == 1, "zero ideal e != 1 for n = " + std::to_string(n));
  }
  v.detail << "e = " << h.e << ", d = " << h.d << "; zero ideal e = 1 for n = 1..4";
}

void whitney_family(Verdict& v) {
  for (int t : {2, 3, 5}) {
    const std::string ts = std::to_string(t);
    const Polynomial f = plane("x*y*(y-x)*(y-" + ts + "*x)");
    const BranchDecomposition d = branches(f);
    v.require(d.branches.size() == 4, "t=" + ts + ": branch count");
    std::vector<TangentLine> expected{TangentLine::through(1.0, 0.0), TangentLine::through(0.0, 1.0),
                                      TangentLine::through(1.0, 1.0), TangentLine::through(1.0, double(t))};
    for (const auto& b : d.branches) {
      v.require(b.order == 1, "t=" + ts + ": order != 1");
      const auto hits = std::count_if(expected.begin(), expected.end(),
                                      [&](const TangentLine& l) { return same_line(l, b.tangent, 1e-6); });
      v.require(hits == 1, "t=" + ts + ": tangent not among the four lines");
    }
    for (std::size_t i = 0; i < d.branches.size(); ++i) {
      for (std::size_t j = i + 1; j < d.branches.size(); ++j) {
        v.require(!same_line(d.branches[i].tangent, d.branches[j].tangent, 1e-6), "t=" + ts + ": repeated tangent");
      }
    }
    const MultiplicityReport rep = report(f, {.routes = {"order", "line", "cone", "hilbert"}});
    v.require(rep.agree && rep.order == 4 && rep.line && rep.line->multiplicity == 4 && rep.cone_sum == 4 &&
                  rep.hilbert && rep.hilbert->e == 4,
              "t=" + ts + ": multiplicity routes");
    v.require(lne_decide_plane_curve(f).lne, "t=" + ts + ": not LNE");
  }
  v.detail << "t = 2, 3, 5: 4 order-1 branches, distinct tangents, m = 4, LNE";
}

void conservation(Verdict& v) {
  const std::vector<std::string> corpus{
      "y^2 - x^3",           "y^2 - x^4",           "x^3 - y^4",           "x^3 - y^3",
      "(y^2 - x^3)*(x^2 - y^3)", "(y^2 - x^3)*(y - x)", "(y^2 - x^4)*(x^3 - y^4)", "(x^3 - y^3)*(y^2 - x^3)",
      "(y^2 - x^3)*(y^2 - x^4)", "x*y*(x - y)*(y^2 - x^3)", "(x^3 - y^4)*(y^3 - x^4)", "y^4 - x^6"};
  for (const auto& text : corpus) {
    const Polynomial f = plane(text);
    const int total = relative_multiplicities(f).total();
    const int m = lowest_degree(f);
    v.require(total == m, text + ": sum k = " + std::to_string(total) + ", ord = " + std::to_string(m));
  }
  v.detail << corpus.size() << " polynomials, sum of k(L) = ord0";
}

long long randell_oracle(long long d, int n, long long mu_prime) {
  long long p = 1;
  for (int k = 0; k <= n; ++k) p *= d - 1;
  return 1 + ((n % 2 == 0) ? 1 : -1) * (p - d * mu_prime);
}

void randell_round_trip(Verdict& v) {
  int cases = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int n = 1; n <= 3; ++n) {
      for (int mu = 0; mu <= 8; ++mu) {
        const long long chi = randell_chi(d, n, mu);
        v.require(chi == randell_oracle(d, n, mu), "chi formula mismatch");
        const auto degrees = recover_degree(chi, n, mu);
        v.require(std::find(degrees.begin(), degrees.end(), d) != degrees.end(),
                  "d=" + std::to_string(d) + " n=" + std::to_string(n) + " mu'=" + std::to_string(mu) + " not recovered");
        ++cases;
      }
    }
  }
  const Polynomial f = space("x*y*(x+y)");
  const int mu_prime = transversal_milnor(f, {GaussianRational(0), GaussianRational(0), GaussianRational(1)});
  // Fibre of xy(x+y) in C^3 is (plane-curve fibre) x C: chi = 1 - mu(xy(x+y) in C^2).
  const int mu_plane = milnor_number(plane("x*y*(x+y)")).mu;
  const long long chi = randell_chi(3, 2, mu_prime);
  v.require(mu_prime == 4, "transversal Milnor number");
  v.require(chi == -3 && chi == 1 - mu_plane, "chi of xy(x+y)");
  v.detail << cases << " round trips; mu' = " << mu_prime << ", chi = " << chi << " = 1 - " << mu_plane;
}

void milnor_numbers(Verdict& v) {
  const std::vector<std::pair<Polynomial, int>> cases{{space("x^3 + y^3 + z^3"), 8}, {plane("y^2 - x^3"), 2},
                                                      {plane("x^2 + y^2"), 1}};
  for (const auto& [f, mu] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const MilnorResult r = milnor_number(f);
    const double elapsed = seconds_since(t0);
    v.require(r.mu == mu && r.stabilized, "mu = " + std::to_string(r.mu) + ", want " + std::to_string(mu));
    v.require(elapsed < 5.0, "over 5 s");
    v.detail << r.mu << " (" << elapsed << " s) ";
  }
}

void growth_matches_order(Verdict& v) {
  int count = 0;
  for (const auto& entry : cli::catalog()) {
    if (entry.polynomial.empty()) continue;
    const Polynomial f = parse_polynomial(entry.polynomial, entry.variables);
    const double delta = growth_exponent(f);
    const int m = lowest_degree(f);
    v.require(std::abs(delta - m) <= 0.05, entry.name + ": delta " + std::to_string(delta));
    ++count;
  }
  v.detail << count << " catalog germs within 0.05";
}

void lne_ladder(Verdict& v) {
  const std::vector<double> scales{1e-1, 1e-2, 1e-3};
  std::vector<double> axes, parabolas;
  for (double s : scales) {
    axes.push_back(lne_ratio(plane("x*y"), s).ratio);
    parabolas.push_back(lne_ratio(plane("(y - x^2)*(y + x^2)"), s).ratio);
  }
  const auto [lo, hi] = std::minmax_element(axes.begin(), axes.end());
  const double drift = (*hi - *lo) / *lo;
  v.require(drift <= 0.2, "xy drift over 20%");
  v.require(parabolas[0] < parabolas[1] && parabolas[1] < parabolas[2], "parabola ratios not increasing");
  v.require(parabolas[1] >= 10.0, "parabola ratio below 10 at 1e-2");
  v.detail << "xy " << axes[0] << "/" << axes[1] << "/" << axes[2] << " (drift " << drift << "), parabolas "
           << parabolas[0] << "/" << parabolas[1] << "/" << parabolas[2];
}

void mcshane(Verdict& v) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c = 2.5;
  auto random_point = [&] { return RealPoint{u(rng), u(rng), u(rng)}; };
  auto norm = [](const RealPoint& a, const RealPoint& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
  };
  // Samples of a 0.9c-Lipschitz function.
  const RealPoint anchor = random_point();
  std::vector<LipschitzSample> samples;
  for (int k = 0; k < 60; ++k) {
    const RealPoint p = random_point();
    samples.push_back({p, 0.8 * c * norm(p, anchor) + 0.1 * c * std::abs(p[0])});
  }
  for (const auto& s : samples) v.require(lipschitz_extend(samples, c, s.point) == s.value, "sample value changed");
  int pairs = 0;
  double worst = 0.0;
  for (; pairs < 1000; ++pairs) {
    const RealPoint a = random_point(), b = random_point();
    const double lhs = std::abs(lipschitz_extend(samples, c, a) - lipschitz_extend(samples, c, b));
    const double rhs = c * norm(a, b);
    worst = std::max(worst, lhs / rhs);
    v.require(lhs <= rhs * (1.0 + 1e-12), "Lipschitz bound violated");
  }
  v.detail << "exact on " << samples.size() << " samples, " << pairs << " pairs, max ratio " << worst / c << " C";
}

void tangent_map(Verdict& v) {
  const Complex a(0.6, 0.0), b(0.0, 0.8);
  // U = [[a, -conj(b)], [b, conj(a)]] is unitary since |a|^2 + |b|^2 = 1.
  auto apply_u = [=](Complex x, Complex y) {
    return ComplexVector{a * x - std::conj(b) * y, b * x + std::conj(a) * y};
  };
  const MapSample linear{[=](std::span<const Complex> x) { return apply_u(x[0], x[1]); }, std::nullopt};
  const MapSample phi{[=](std::span<const Complex> x) {
                        const double r = std::sqrt(std::norm(x[0]) + std::norm(x[1]));
                        auto out = apply_u(x[0], x[1]);
                        out[0] += r * x[0];
                        out[1] += r * x[1];
                        return out;
                      },
                      std::nullopt};
  const auto grid = default_tgrid();
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  double worst_linear = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::vector<Complex> dir{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const auto est = map_derivative_estimate(linear, dir, grid).value;
    const auto want = apply_u(dir[0], dir[1]);
    const double scale = std::abs(dir[0]) + std::abs(dir[1]);
    worst_linear = std::max(worst_linear, (std::abs(est[0] - want[0]) + std::abs(est[1] - want[1])) / scale);
  }
  v.require(worst_linear <= 1e-14, "linear map not reproduced to machine precision");
  double worst_cone = 0.0;
  for (const auto& line : hypersurface_cone(plane("x^3 - y^2")).lines) {
    const std::vector<Complex> dir{line.direction[0], line.direction[1]};
    const auto est = map_derivative_estimate(phi, dir, grid).value;
    const auto want = apply_u(dir[0], dir[1]);
    worst_cone = std::max(worst_cone, std::hypot(std::abs(est[0] - want[0]), std::abs(est[1] - want[1])));
  }
  v.require(worst_cone <= 1e-3, "cusp tangent image off by more than 1e-3");
  v.detail << "linear error " << worst_linear << ", cusp tangent error " << worst_cone;
}

void root_count_oracle(Verdict& v) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int agreed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 1 + static_cast<int>(rng() % 12);
    std::vector<Complex> coeffs;
    for (int k = 0; k <= degree; ++k) coeffs.emplace_back(g(rng), g(rng));
    const UnivariatePoly p(coeffs);
    const RootSet rs = find_roots(p);
    v.require(rs.converged, "root finder did not converge");
    Complex center;
    double radius = 0.0;
    // Redraw the disc until no root lies within 1e-3 of its boundary.
    do {
      center = Complex(u(rng), u(rng));
      radius = 0.2 + std::abs(u(rng));
    } while (std::any_of(rs.roots.begin(), rs.roots.end(),
                         [&](Complex r) { return std::abs(std::abs(r - center) - radius) < 1e-3; }));
    const auto inside = std::count_if(rs.roots.begin(), rs.roots.end(),
                                      [&](Complex r) { return std::abs(r - center) < radius; });
    if (inside == count_roots_in_disc(p, center, radius)) ++agreed;
  }
  v.require(agreed == 100, "disagreements");
  v.detail << agreed << "/100 polynomials agree";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"cusp cross-route multiplicity", cusp_cross_route},
      {"Hilbert-Samuel extraction", hilbert_samuel},
      {"Whitney family", whitney_family},
      {"relative multiplicity conservation", conservation},
      {"Randell round trip", randell_round_trip},
      {"Milnor numbers", milnor_numbers},
      {"growth exponent equals order", growth_matches_order},
      {"LNE scale ladder", lne_ladder},
      {"McShane extension", mcshane},
      {"tangent map numerics", tangent_map},
      {"root finder vs argument principle", root_count_oracle},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    if (!v.pass) ++failures;
    std::printf("%s %2zu %-36s %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
