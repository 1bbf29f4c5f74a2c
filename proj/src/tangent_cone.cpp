#include "germ/tangent_cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "germ/errors.hpp"
#include "germ/seeding.hpp"
#include "germ/uniroots.hpp"
#include "exact_univariate.hpp"

namespace germ {

namespace {

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex c : v) s += std::norm(c);
  return std::sqrt(s);
}

// Top eigenvector of a Hermitian positive semidefinite matrix by power iteration.
std::vector<Complex> top_eigenvector(const std::vector<std::vector<Complex>>& m) {
  const std::size_t n = m.size();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = m[i][i].real() + 1e-3 * static_cast<double>(i + 1);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Complex> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += m[i][j] * v[j];
    }
    const double nw = norm(w);
    if (nw == 0.0) break;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= nw;
      change = std::max(change, std::abs(w[i] - v[i]));
    }
    v = std::move(w);
    if (change < 1e-15) break;
  }
  return v;
}

// Phase convention: first (near-)maximal coordinate real positive.
void canonical_phase(std::vector<Complex>& v) {
  double top = 0.0;
  for (const Complex c : v) top = std::max(top, std::abs(c));
  for (const Complex c : v) {
    if (std::abs(c) >= top * (1.0 - 1e-9)) {
      const Complex phase = std::abs(c) / c;
      for (auto& x : v) x *= phase;
      return;
    }
  }
}

}  // namespace

TangentLine TangentLine::through(Complex a, Complex b, int multiplicity) {
  if (a == Complex{} && b == Complex{}) throw InputError("a tangent line needs a nonzero direction");
  const double top = std::max(std::abs(a), std::abs(b));
  const Complex pivot = std::abs(a) >= top * (1.0 - 1e-9) ? a : b;
  TangentLine line;
  line.direction = {a / pivot, b / pivot};
  if (pivot == a) line.direction[0] = 1.0;
  else line.direction[1] = 1.0;
  line.cone_multiplicity = multiplicity;
  return line;
}

namespace {

std::string format_real(double v) {
  if (std::abs(v) < 1e-9) return "0";
  if (std::abs(v - std::round(v)) < 1e-9) return std::to_string(static_cast<long long>(std::round(v)));
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::string format_coordinate(Complex c) {
  const std::string re = format_real(c.real()), im = format_real(c.imag());
  if (im == "0") return re;
  const std::string unit = (im == "1") ? "i" : (im == "-1") ? "-i" : im + "i";
  if (re == "0") return unit;
  return re + (unit[0] == '-' ? "" : "+") + unit;
}

}  // namespace

std::string format_line(const TangentLine& line) {
  return "(" + format_coordinate(line.direction[0]) + ":" + format_coordinate(line.direction[1]) + ")";
}

bool same_line(const TangentLine& a, const TangentLine& b, double tol) {
  return std::abs(a.direction[0] - b.direction[0]) <= tol && std::abs(a.direction[1] - b.direction[1]) <= tol;
}

double projective_distance(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw InputError("projective distance needs vectors of equal length");
  Complex inner{};
  for (std::size_t i = 0; i < u.size(); ++i) inner += std::conj(u[i]) * v[i];
  const double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw InputError("projective distance of a zero vector");
  const double c = std::min(1.0, std::abs(inner) / (nu * nv));
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

ConeDescription hypersurface_cone(const Polynomial& f) {
  if (f.is_zero()) throw InputError("the zero polynomial does not define a hypersurface germ");
  if (!f.constant_term().is_zero()) throw InputError("f(0) != 0: the germ is not at the origin");
  ConeDescription cone{initial_form(f), {}};
  if (f.nvars() == 2) cone.lines = tangent_lines(cone.defining_form);
  return cone;
}

std::vector<TangentLine> tangent_lines(const Polynomial& form) {
  if (form.nvars() != 2) throw InputError("tangent lines need a form in two variables");
  const auto degree = homogeneous_degree(form);
  if (!degree) throw InputError("tangent lines need a nonzero homogeneous form");
  // form(1, lambda) = sum_j c_j lambda^j with c_j the coefficient of x^{d-j} y^j.
  exact::Poly g(*degree + 1);
  for (const auto& [m, c] : form.terms()) g[m[1]] = c;
  exact::trim(g);

  std::vector<TangentLine> lines;
  const int vertical = *degree - (static_cast<int>(g.size()) - 1);
  if (vertical > 0) lines.push_back(TangentLine::through(0.0, 1.0, vertical));
  if (g.size() <= 1) return lines;
  for (const auto& [factor, multiplicity] : exact::squarefree_parts(g)) {
    const RootSet rs = find_roots(exact::to_numeric(factor), 1e-12);
    if (!rs.converged) throw NumericError("root finder did not converge on a tangent factor");
    for (const Complex lambda : rs.roots) lines.push_back(TangentLine::through(1.0, lambda, multiplicity));
  }
  return lines;
}

SecantSample secant_directions(const Polynomial& f, double scale, int count, std::uint64_t seed) {
  if (!(scale > 0.0) || count <= 0) throw InputError("secant sampling needs positive scale and count");
  const std::size_t n = f.nvars();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto random_unit = [&] {
    std::vector<Complex> v(n);
    for (auto& c : v) c = {normal(rng), normal(rng)};
    const double nv = norm(v);
    for (auto& c : v) c /= nv;
    return v;
  };

  SecantSample out;
  const int max_lines = 50 * count;
  for (int attempt = 0; attempt < max_lines && static_cast<int>(out.directions.size()) < count; ++attempt) {
    std::vector<Complex> base = random_unit();
    for (auto& c : base) c *= 0.5 * scale;
    const std::vector<Complex> dir = random_unit();
    const UnivariatePoly slice = restrict_to_line(f, base, dir);
    if (slice.degree() < 1) continue;
    const RootSet rs = find_roots(slice);
    if (!rs.converged) continue;
    for (const Complex t : rs.roots) {
      std::vector<Complex> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = base[i] + t * dir[i];
      const double np = norm(p);
      if (np < 0.5 * scale || np > 2.0 * scale) continue;
      for (auto& c : p) c /= np;
      canonical_phase(p);
      out.directions.push_back(std::move(p));
      if (static_cast<int>(out.directions.size()) == count) break;
    }
  }
  if (out.directions.empty()) throw NumericError("no points of V(f) found at the requested scale");

  // Single linkage via union-find on the projector distance sqrt(2) * sin(angle).
  const std::size_t m = out.directions.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double threshold = 10.0 * scale;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::sqrt(2.0) * projective_distance(out.directions[i], out.directions[j]) <= threshold) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<int> root_label(m, -1);
  int clusters = 0;
  out.labels.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (root_label[r] < 0) root_label[r] = clusters++;
    out.labels[i] = root_label[r];
  }
  for (int c = 0; c < clusters; ++c) {
    std::vector<std::vector<Complex>> projector(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < m; ++i) {
      if (out.labels[i] != c) continue;
      const auto& u = out.directions[i];
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) projector[a][b] += u[a] * std::conj(u[b]);
      }
    }
    std::vector<Complex> center = top_eigenvector(projector);
    canonical_phase(center);
    out.centers.push_back(std::move(center));
  }
  return out;
}

std::vector<double> default_tgrid() {
  std::vector<double> grid;
  for (double t = 1e-2; t >= 1e-6; t *= 0.5) grid.push_back(t);
  return grid;
}

DerivativeEstimate map_derivative_estimate(const MapSample& phi, std::span<const Complex> v,
                                           std::span<const double> tgrid) {
  if (tgrid.size() < 4) throw InputError("tgrid needs at least 4 entries");
  for (std::size_t k = 0; k < tgrid.size(); ++k) {
    if (!(tgrid[k] > 0.0) || (k > 0 && !(tgrid[k] < tgrid[k - 1]))) {
      throw InputError("tgrid must be positive and strictly decreasing");
    }
  }
  const std::vector<Complex> origin(v.size(), 0.0);
  const ComplexVector at_zero = phi.map(origin);
  if (norm(at_zero) > 1e-12) throw InputError("map does not fix the origin");

  DerivativeEstimate est;
  ComplexVector previous;
  std::vector<Complex> point(v.size());
  for (const double t : tgrid) {
    for (std::size_t i = 0; i < v.size(); ++i) point[i] = t * v[i];
    ComplexVector q = phi.map(point);
    for (auto& c : q) c /= t;
    if (!previous.empty()) {
      double d = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) d += std::norm(q[i] - previous[i]);
      est.differences.push_back(std::sqrt(d));
    }
    previous = std::move(q);
  }
  est.value = previous;
  const double floor = 1e-13 * std::max(1.0, norm(est.value));
  for (std::size_t k = 1; k < est.differences.size(); ++k) {
    if (est.differences[k] > est.differences[k - 1] * (1.0 + 1e-9) + floor) est.converging = false;
  }
  return est;
}

}  // namespace germ
