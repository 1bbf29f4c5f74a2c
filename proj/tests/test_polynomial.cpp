#include <cmath>
#include <random>

#include "doctest.h"
#include "germ/errors.hpp"
#include "germ/polynomial.hpp"
#include "test_support.hpp"

using namespace germ;
using germ::testing::poly;

TEST_CASE("parse: direct denotation") {
  const Polynomial f = poly("x^3 - y^2");
  CHECK(f.terms().size() == 2);
  CHECK(f.coefficient(Monomial({3, 0})) == GaussianRational(1));
  CHECK(f.coefficient(Monomial({0, 2})) == GaussianRational(-1));

  const Polynomial w = poly("x*y*(y-x)*(y-2*x)");
  CHECK(homogeneous_degree(w) == 4);

  CHECK(poly("0").is_zero());
  CHECK(poly("1/2*x + 3*i*y") == poly("(1/2)*x + i*3*y"));
  CHECK(poly("-x^2") == -(poly("x") * poly("x")));
}

TEST_CASE("parse: error paths carry positions") {
  CHECK_THROWS_AS(poly("x^3 - q"), ParseError);
  try {
    poly("x + 2x");
    FAIL("implicit product accepted");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(poly("x/0"), ParseError);
  CHECK_THROWS_AS(poly("3/0"), ParseError);
  CHECK_THROWS_AS(poly("x^y"), ParseError);
  CHECK_THROWS_AS(poly("x^-1"), ParseError);
  CHECK_THROWS_AS(poly("(x + y"), ParseError);
  CHECK_THROWS_AS(poly(""), ParseError);
  CHECK_THROWS_AS(poly("x y"), ParseError);
}

TEST_CASE("format: canonical grlex order and exact coefficients") {
  const auto vars = default_variable_names(2);
  CHECK(format_polynomial(poly("-y^2 + x^3"), vars) == "x^3 - y^2");
  CHECK(format_polynomial(poly("0"), vars) == "0");
  CHECK(format_polynomial(poly("x*y - 3/6"), vars) == "x*y - 1/2");
  CHECK(format_polynomial(poly("(1+i)*x - i*y"), vars) == "(1+i)*x - i*y");
}

TEST_CASE("ord0 and initial form") {
  CHECK(ord0(poly("x^3 - y^2")) == 2);
  CHECK(ord0(poly("x*y*(y-x)*(y-2*x)")) == 4);
  CHECK_FALSE(ord0(poly("0")).has_value());

  CHECK(initial_form(poly("x^3 - y^2")) == poly("-y^2"));
  const Polynomial h = poly("x^2*y - 3*y^3");
  CHECK(initial_form(h) == h);
  // (x+y)^2 + x^5 expands to x^2 + 2xy + y^2 + x^5 by hand.
  CHECK(initial_form(poly("(x+y)^2 + x^5")) == poly("x^2 + 2*x*y + y^2"));
  CHECK_THROWS_AS(initial_form(poly("0")), InputError);
}

TEST_CASE("homogeneous components") {
  const auto comps = homog_components(poly("x^3 - y^2"));
  REQUIRE(comps.size() == 2);
  CHECK(comps.at(2) == poly("-y^2"));
  CHECK(comps.at(3) == poly("x^3"));
  CHECK(homog_components(poly("0")).empty());

  const auto c2 = homog_components(poly("(x+y)^2 + x^5"));
  CHECK(c2.at(2) == poly("x^2 + 2*x*y + y^2"));
  CHECK(c2.at(5) == poly("x^5"));
}

TEST_CASE("derivatives") {
  const Polynomial f = poly("x^3 - y^2");
  CHECK(derivative(f, 0) == poly("3*x^2"));
  CHECK(derivative(f, 1) == poly("-2*y"));
  CHECK(derivative(poly("y^5"), 0).is_zero());
  CHECK_THROWS_AS(derivative(f, 2), InputError);
}

TEST_CASE("homogeneity") {
  CHECK(is_homogeneous(poly("x*y*(y-x)*(y-2*x)")));
  CHECK(homogeneous_degree(poly("x*y*(y-x)*(y-2*x)")) == 4);
  CHECK_FALSE(is_homogeneous(poly("x^3 - y^2")));
  CHECK(is_homogeneous(poly("0")));
  CHECK_FALSE(homogeneous_degree(poly("0")).has_value());
}

TEST_CASE("evaluate") {
  const Polynomial f = poly("x^3 - y^2");
  const std::vector<Complex> p11{1.0, 1.0}, p20{2.0, 0.0};
  CHECK(std::abs(evaluate(f, p11)) == 0.0);
  CHECK(evaluate(f, p20) == Complex(8.0));
  CHECK(evaluate(poly("0"), p20) == Complex(0.0));
  const std::vector<GaussianRational> exact{GaussianRational(2), GaussianRational(0, 1)};
  CHECK(evaluate(f, exact) == GaussianRational(9));
  const std::vector<Complex> wrong{1.0};
  CHECK_THROWS_AS(evaluate(f, wrong), InputError);
}

TEST_CASE("restrict_to_line") {
  const Polynomial f = poly("x^3 - y^2");
  const std::vector<Complex> zero{0.0, 0.0}, e1{1.0, 0.0};
  const UnivariatePoly cubic = restrict_to_line(f, zero, e1);
  CHECK(cubic.degree() == 3);
  CHECK(cubic[3] == Complex(1.0));
  CHECK(cubic[0] == Complex(0.0));

  // Symbolic substitution gives t^3 - eps^2; confirm at three values of t.
  const double eps = 0.013;
  const std::vector<Complex> base{0.0, eps};
  const UnivariatePoly shifted = restrict_to_line(f, base, e1);
  for (const Complex t : {Complex(0.3), Complex(-1.7, 0.2), Complex(0.0, 2.5)}) {
    const Complex expected = t * t * t - eps * eps;
    CHECK(std::abs(shifted(t) - expected) <= 1e-14 * (1.0 + std::abs(expected)));
  }

  const std::vector<Complex> diag{1.0, 1.0};
  const UnivariatePoly xy = restrict_to_line(poly("x*y"), zero, diag);
  CHECK(xy.degree() == 2);
  CHECK(xy[2] == Complex(1.0));
  CHECK(xy[1] == Complex(0.0));

  CHECK_THROWS_AS(restrict_to_line(f, zero, zero), InputError);
  const std::vector<Complex> short_dir{1.0};
  CHECK_THROWS_AS(restrict_to_line(f, zero, short_dir), InputError);
}

TEST_CASE("mixed arity is an error") {
  CHECK_THROWS_AS(poly("x", 2) + poly("x", 3), InputError);
  CHECK_THROWS_AS(poly("x", 2) * poly("x", 3), InputError);
}

TEST_CASE("property: order and initial form are multiplicative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial f = germ::testing::random_polynomial(rng, 3, 5, 5);
    const Polynomial g = germ::testing::random_polynomial(rng, 3, 5, 5);
    if (f.is_zero() || g.is_zero()) continue;
    const Polynomial fg = f * g;
    CHECK(*ord0(fg) == *ord0(f) + *ord0(g));
    CHECK(initial_form(fg) == initial_form(f) * initial_form(g));
  }
}

TEST_CASE("property: components reassemble and contain the initial form") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial f = germ::testing::random_polynomial(rng, 2, 7, 8);
    Polynomial sum(2);
    for (const auto& [d, c] : homog_components(f)) {
      CHECK(homogeneous_degree(c) == d);
      sum += c;
    }
    CHECK(sum == f);
    if (!f.is_zero()) CHECK(initial_form(f) == homog_components(f).at(*ord0(f)));
  }
}

TEST_CASE("property: restriction through the origin matches evaluation") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial f = germ::testing::random_polynomial(rng, 3, 6, 6);
    std::vector<Complex> v(3), zero(3, 0.0);
    for (auto& c : v) c = {normal(rng), normal(rng)};
    const Complex t(normal(rng), normal(rng));
    std::vector<Complex> point(3);
    for (int i = 0; i < 3; ++i) point[i] = t * v[i];
    const Complex direct = evaluate(f, point);
    const Complex via_line = restrict_to_line(f, zero, v)(t);
    CHECK(std::abs(direct - via_line) <= 1e-10 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("property: parse inverts format") {
  std::mt19937_64 rng(5);
  const auto vars = default_variable_names(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial f = germ::testing::random_polynomial(rng, 3, 6, 7);
    const std::string text = format_polynomial(f, vars);
    CHECK_MESSAGE(parse_polynomial(text, vars) == f, text);
  }
}

TEST_CASE("compose with a linear change of coordinates") {
  const Polynomial f = poly("x^3 - y^2");
  const std::vector<Polynomial> swap{poly("y"), poly("x")};
  CHECK(compose(f, swap) == poly("y^3 - x^2"));
  const std::vector<Polynomial> shear{poly("x + y"), poly("y")};
  CHECK(compose(poly("x*y"), shear) == poly("x*y + y^2"));
}
