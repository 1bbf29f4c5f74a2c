#include <chrono>
#include <random>

#include "doctest.h"
#include "germ/errors.hpp"
#include "germ/milnor.hpp"
#include "test_support.hpp"

using namespace germ;
using germ::testing::poly;

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

std::vector<GaussianRational> z_axis() { return {GaussianRational(0), GaussianRational(0), GaussianRational(1)}; }

}  // namespace

TEST_CASE("Milnor numbers of known examples") {
  for (const auto& [text, nvars, mu] : std::vector<std::tuple<const char*, std::size_t, int>>{
           {"x^3 + y^3 + z^3", 3, 8}, {"y^2 - x^3", 2, 2}, {"x^2 + y^2", 2, 1}}) {
    const auto start = std::chrono::steady_clock::now();
    const MilnorResult r = milnor_number(poly(text, nvars));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.mu == mu);
    CHECK(r.stabilized);
    CHECK(r.truncation_degree >= 1);
    CHECK(secs < 5.0);
  }
  CHECK(milnor_number(poly("x + y^2")).mu == 0);
}

TEST_CASE("Brieskorn-Pham germs give the product of (a_i - 1)") {
  for (int a = 2; a <= 5; ++a) {
    for (int b = 2; b <= 5; ++b) {
      const Polynomial f = poly("x^" + std::to_string(a) + " + y^" + std::to_string(b));
      CHECK(milnor_number(f).mu == (a - 1) * (b - 1));
    }
  }
  CHECK(milnor_number(poly("x^2 + y^3 + z^4", 3)).mu == 6);
  CHECK(milnor_number(poly("x^2 + y^2 + z^2 + w^2", 4)).mu == 1);
}

TEST_CASE("homogeneous isolated germs give (d-1)^k") {
  // Fermat forms pushed through an invertible linear change stay isolated.
  for (int k = 2; k <= 3; ++k) {
    for (int d = 2; d <= 4; ++d) {
      const std::size_t n = static_cast<std::size_t>(k);
      std::vector<Polynomial> lin;
      for (std::size_t i = 0; i < n; ++i) {
        Polynomial l = Polynomial::variable(n, i);
        if (i + 1 < n) l += Polynomial::variable(n, i + 1) * GaussianRational(2);
        lin.push_back(l);
      }
      Polynomial f(n);
      for (const auto& l : lin) f += l.pow(d);
      CHECK(milnor_number(f).mu == ipow(d - 1, k));
    }
  }
  // Adding higher-order terms does not change the Milnor number of a homogeneous isolated germ.
  CHECK(milnor_number(poly("x^3 + y^3 + x^2*y^2")).mu == 4);
}

TEST_CASE("non-isolated singularities are reported") {
  CHECK_THROWS_AS(milnor_number(poly("x^2")), NumericError);
  CHECK_THROWS_AS(milnor_number(poly("x*y", 3)), NumericError);
  CHECK_THROWS_AS(milnor_number(poly("0")), InputError);
}

TEST_CASE("transversal Milnor numbers") {
  CHECK(transversal_milnor(poly("x*y*(x+y)", 3), z_axis()) == 4);
  CHECK(transversal_milnor(poly("x*y", 3), z_axis()) == 1);
  CHECK(transversal_milnor(poly("x*y*(x+y)", 3), z_axis(), 7) == 4);
  CHECK_THROWS_AS(transversal_milnor(poly("x^2", 3), z_axis()), InputError);
  CHECK_THROWS_AS(transversal_milnor(poly("x*y", 3), {GaussianRational(1), GaussianRational(0), GaussianRational(0)}),
                  InputError);
  CHECK_THROWS_AS(transversal_milnor(poly("x*y + z^3", 3), z_axis()), InputError);
  CHECK_THROWS_AS(transversal_milnor(poly("x*y"), z_axis()), InputError);
}

TEST_CASE("cylinders over plane curves: slice and Euler characteristic agree") {
  for (const char* g : {"x*y*(x+y)", "x^3 + y^3", "x*y*(x-y)*(x-2*y)", "x^2 + y^2", "x^4 - y^4 + x^2*y^2"}) {
    const int mu = milnor_number(poly(g)).mu;
    const Polynomial f = poly(g, 3);
    const int d = *homogeneous_degree(f);
    CHECK(transversal_milnor(f, z_axis()) == mu);
    // The Milnor fibre of g(x, y) on C^3 is (plane fibre) x C, a wedge of mu circles.
    CHECK(randell_chi(d, 2, mu) == 1 - mu);
  }
}

TEST_CASE("Randell formula") {
  CHECK(randell_chi(3, 2, 0) == 9);
  CHECK(randell_chi(3, 2, 0) == 1 + milnor_number(poly("x^3 + y^3 + z^3", 3)).mu);
  CHECK(randell_chi(3, 2, 4) == -3);
  for (int n = 1; n <= 4; ++n) CHECK(randell_chi(1, n, 0) == 1);
  for (int d = 1; d <= 6; ++d) {
    for (int n = 1; n <= 3; ++n) CHECK(randell_chi(d, n, 0) == 1 + (n % 2 == 0 ? 1 : -1) * ipow(d - 1, n + 1));
  }
  CHECK_THROWS_AS(randell_chi(0, 2, 0), InputError);
  CHECK_THROWS_AS(randell_chi(2, 0, 0), InputError);
  CHECK_THROWS_AS(randell_chi(2, 2, -1), InputError);
}

TEST_CASE("degree recovery") {
  CHECK(recover_degree(-3, 2, 4) == std::vector<int>{3});
  CHECK(recover_degree(9, 2, 0) == std::vector<int>{3});
  CHECK(recover_degree(0, 2, 1).size() <= 1);
  for (int d = 2; d <= 8; ++d) {
    for (int n = 1; n <= 3; ++n) {
      for (int mu = 0; mu <= 10; ++mu) {
        const auto ds = recover_degree(randell_chi(d, n, mu), n, mu);
        CHECK(std::find(ds.begin(), ds.end(), d) != ds.end());
      }
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (int mu = 1; mu <= 10; ++mu) CHECK(recover_degree(0, n, mu).size() <= 1);
  }
}
