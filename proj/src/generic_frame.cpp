#include "germ/generic_frame.hpp"

#include <algorithm>
#include <random>

#include "germ/errors.hpp"

namespace germ {

namespace {

using Exact2 = std::array<std::array<GaussianRational, 2>, 2>;

// U = (I - A)(I + A)^{-1} is unitary for skew-Hermitian A, and exact over Q(i).
Exact2 cayley_unitary(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-8, 8);
  auto q = [&] { return mpq_class(num(rng), 4); };
  const GaussianRational i = GaussianRational::imaginary_unit();
  const GaussianRational a = i * GaussianRational(q()), d = i * GaussianRational(q());
  const GaussianRational off(q(), q());
  // A = [[a, off], [-conj(off), d]].
  const GaussianRational one(1);
  const Exact2 minus{{{one - a, -off}, {off.conj(), one - d}}};
  const Exact2 plus{{{one + a, off}, {-off.conj(), one + d}}};
  const GaussianRational det = plus[0][0] * plus[1][1] - plus[0][1] * plus[1][0];
  const Exact2 inv{{{plus[1][1] / det, -plus[0][1] / det}, {-plus[1][0] / det, plus[0][0] / det}}};
  Exact2 u;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) u[r][c] = minus[r][0] * inv[0][c] + minus[r][1] * inv[1][c];
  }
  return u;
}

}  // namespace

GenericFrame choose_generic_frame(const Polynomial& f, std::uint64_t seed) {
  if (f.nvars() != 2) throw InputError("a plane curve needs exactly two variables");
  const ConeDescription cone = hypersurface_cone(f);
  const int m = *ord0(f);
  const int top = f.degree();
  std::mt19937_64 rng(seed);

  for (int attempt = 0; attempt < 20; ++attempt) {
    const Exact2 u = cayley_unitary(rng);
    // The frame direction (0, 1) maps to the second column of U.
    const std::array<GaussianRational, 2> vertical{u[0][1], u[1][1]};
    const Polynomial in = cone.defining_form;
    if (evaluate(in, vertical).is_zero()) continue;
    if (evaluate(homog_components(f).at(top), vertical).is_zero()) continue;

    GenericFrame frame;
    frame.exact = u;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) frame.numeric[r][c] = u[r][c].to_complex();
    }
    // Slopes of tangent lines in frame coordinates: U^* direction = (a', b'), slope b'/a'.
    bool steep = false;
    for (const auto& line : cone.lines) {
      const Complex a = std::conj(frame.numeric[0][0]) * line.direction[0] + std::conj(frame.numeric[1][0]) * line.direction[1];
      const Complex b = std::conj(frame.numeric[0][1]) * line.direction[0] + std::conj(frame.numeric[1][1]) * line.direction[1];
      if (std::abs(b) > kMaxFrameSlope * std::abs(a)) steep = true;
    }
    if (steep) continue;

    const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    const std::array<Polynomial, 2> images{x * u[0][0] + y * u[0][1], x * u[1][0] + y * u[1][1]};
    frame.transformed = compose(f, images);
    frame.sheets = m;
    frame.cone_lines = cone.lines;
    return frame;
  }
  throw NumericError("no generic coordinate frame found in 20 random draws");
}

FiberFamily::FiberFamily(const Polynomial& g) {
  if (g.nvars() != 2) throw InputError("fiber family needs two variables");
  int ydeg = 0, xdeg = 0;
  for (const auto& [m, c] : g.terms()) {
    ydeg = std::max(ydeg, m[1]);
    xdeg = std::max(xdeg, m[0]);
  }
  std::vector<std::vector<Complex>> raw(ydeg + 1, std::vector<Complex>(xdeg + 1));
  for (const auto& [m, c] : g.terms()) raw[m[1]][m[0]] = c.to_complex();
  for (auto& r : raw) coeffs_.emplace_back(std::move(r));
}

UnivariatePoly FiberFamily::operator()(Complex x) const {
  std::vector<Complex> c(coeffs_.size());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] = coeffs_[j](x);
  return UnivariatePoly(std::move(c));
}

}  // namespace germ
