#include <cmath>
#include <sstream>

#include "germ/branch.hpp"
#include "germ/cli.hpp"
#include "germ/errors.hpp"
#include "germ/lip_geometry.hpp"
#include "germ/milnor.hpp"
#include "germ/multiplicity.hpp"
#include "germ/tangent_cone.hpp"

namespace germ::cli {

namespace {

std::vector<std::string> xy() { return {"x", "y"}; }
std::vector<std::string> xyz() { return {"x", "y", "z"}; }

CatalogEntry whitney(int t) {
  const std::string ts = std::to_string(t);
  return {"whitney-t" + ts,
          "x*y*(y-x)*(y-" + ts + "*x)",
          xy(),
          "classical",
          "four lines through the origin; the cross-ratio of the tangents varies with t",
          {.mult = 4, .tangent_lines = 4, .branches = 4, .lne = true, .milnor = 9},
          {}};
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    e.push_back({"cusp", "x^3 - y^2", xy(), "classical", "m = 2; dim O/M^k = 2k - 1",
                 {.mult = 2, .tangent_lines = 1, .branches = 1, .lne = false, .milnor = 2, .hilbert_e = 2}, {}});
    e.push_back(whitney(2));
    e.push_back(whitney(3));
    e.push_back(whitney(5));
    e.push_back({"node", "x*y", xy(), "derived", "two transverse smooth branches",
                 {.mult = 2, .tangent_lines = 2, .branches = 2, .lne = true, .milnor = 1}, {}});
    e.push_back({"tacnode", "(y - x^2)*(y + x^2)", xy(), "derived",
                 "two smooth branches sharing the tangent y = 0; the same curve as y^2 - x^4",
                 {.mult = 2, .tangent_lines = 1, .branches = 2, .lne = false, .milnor = 3}, {}});
    e.push_back({"e6", "x^3 - y^4", xy(), "derived", "one branch of order 3",
                 {.mult = 3, .tangent_lines = 1, .branches = 1, .lne = false, .milnor = 6}, {}});
    e.push_back({"triple-point", "x^3 - y^3", xy(), "derived", "three transverse lines",
                 {.mult = 3, .tangent_lines = 3, .branches = 3, .lne = true, .milnor = 4}, {}});
    e.push_back({"smooth-line", "x - 2*y", xy(), "direct", "a regular point has multiplicity 1",
                 {.mult = 1, .tangent_lines = 1, .branches = 1, .lne = true, .milnor = 0, .hilbert_e = 1}, {}});
    e.push_back({"fermat-cubic-surface", "x^3 + y^3 + z^3", xyz(), "derived",
                 "isolated: mu = (d-1)^3 and chi = 1 + mu; not C^1 smooth at 0, Lipschitz-regularity claims are "
                 "out of computational scope",
                 {.mult = 3, .milnor = 8, .chi = 9, .hilbert_e = 3}, {}});
    e.push_back({"three-planes", "x*y*(x+y)", xyz(), "derived",
                 "singular along the z-axis; transverse slice is three lines, fibre is (plane fibre) x C",
                 {.mult = 3, .transversal_milnor = 4, .chi = -3},
                 {GaussianRational(0), GaussianRational(0), GaussianRational(1)}});
    e.push_back({"cusp-in-plane", "y^3 - z^2", {"y", "z"}, "classical",
                 "the curve {y^3 = z^2, x = 0} in C^3, computed inside the plane x = 0",
                 {.mult = 2, .tangent_lines = 1, .branches = 1, .lne = false}, {}});
    e.push_back({"ambient-plane", "", xy(), "classical", "zero ideal: the germ of C^2 itself has multiplicity 1",
                 {.hilbert_e = 1}, {}});
    return e;
  }();
  return entries;
}

CatalogCheck check_entry(const CatalogEntry& entry, std::uint64_t seed) {
  CatalogCheck out;
  out.name = entry.name;
  const auto& want = entry.expected;
  auto compare = [&](const std::string& what, auto expected, auto actual) {
    out.checked.push_back(what);
    if (expected != actual) {
      std::ostringstream msg;
      msg << what << ": expected " << expected << ", got " << actual;
      out.mismatches.push_back(msg.str());
    }
  };
  auto guarded = [&](const std::string& what, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out.checked.push_back(what);
      out.mismatches.push_back(what + ": " + e.what());
    }
  };

  const std::size_t n = entry.variables.size();
  if (entry.polynomial.empty()) {
    if (want.hilbert_e) {
      guarded("hilbert", [&] {
        std::map<int, long long> values;
        for (int k = 0; k <= static_cast<int>(n) + 3; ++k) values[k] = hilbert_function_ambient(static_cast<int>(n), k);
        compare("hilbert", *want.hilbert_e, hilbert_samuel_extract(values, static_cast<int>(n)).e);
      });
    }
    out.ok = out.mismatches.empty();
    return out;
  }

  const Polynomial f = parse_polynomial(entry.polynomial, entry.variables);
  if (want.mult) {
    guarded("mult", [&] {
      const MultiplicityReport rep = report(f, {.seed = seed});
      if (rep.order) compare("mult.order", *want.mult, *rep.order);
      if (rep.line) compare("mult.line", *want.mult, rep.line->multiplicity);
      if (rep.cone_sum) compare("mult.cone", *want.mult, *rep.cone_sum);
      if (rep.hilbert) compare("mult.hilbert", static_cast<long long>(*want.mult), rep.hilbert->e);
      if (rep.density) {
        compare("mult.density", true, std::abs(rep.density->estimate - *want.mult) <= 0.1);
      }
      for (const auto& fail : rep.failures) out.mismatches.push_back("mult." + fail.route + ": " + fail.message);
      compare("mult.agree", true, rep.agree);
      const double delta = growth_exponent(f, {.seed = seed});
      compare("growth", true, std::abs(delta - *want.mult) <= 0.05);
    });
  }
  if (want.hilbert_e) {
    guarded("hilbert", [&] {
      const int m = mult_order(f);
      std::map<int, long long> values;
      for (int k = 1; k <= m + static_cast<int>(n) + 2; ++k) {
        values[k] = hilbert_function_hypersurface(static_cast<int>(n), m, k);
      }
      compare("hilbert", *want.hilbert_e, hilbert_samuel_extract(values, static_cast<int>(n) - 1).e);
    });
  }
  if (want.tangent_lines) {
    guarded("tangent_lines", [&] {
      compare("tangent_lines", *want.tangent_lines, static_cast<int>(hypersurface_cone(f).lines.size()));
    });
  }
  if (want.branches) {
    guarded("branches", [&] {
      compare("branches", *want.branches, static_cast<int>(branches(f, {.seed = seed}).branches.size()));
    });
  }
  if (want.lne) {
    guarded("lne", [&] { compare("lne", *want.lne, lne_decide_plane_curve(f, seed).lne); });
  }
  if (want.milnor) {
    guarded("milnor", [&] { compare("milnor", *want.milnor, milnor_number(f).mu); });
  }
  long long mu_prime = 0;
  if (want.transversal_milnor) {
    guarded("transversal_milnor", [&] {
      mu_prime = transversal_milnor(f, entry.singular_line, seed);
      compare("transversal_milnor", static_cast<long long>(*want.transversal_milnor), mu_prime);
    });
  }
  if (want.chi) {
    guarded("chi", [&] {
      const auto d = homogeneous_degree(f);
      if (!d) throw InputError("Euler characteristic needs a homogeneous polynomial");
      compare("chi", *want.chi, randell_chi(*d, static_cast<int>(n) - 1, mu_prime));
    });
  }
  out.ok = out.mismatches.empty();
  return out;
}

}  // namespace germ::cli
