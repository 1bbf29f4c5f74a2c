#pragma once

#include <cstdint>
#include <vector>

#include "germ/polynomial.hpp"

namespace germ {

struct MilnorResult {
  int mu = 0;
  /// Truncation degree D at which dim O/(J + M^D) first equalled dim O/(J + M^(D+1)).
  int truncation_degree = 0;
  bool stabilized = false;
};

/// Milnor number of f at 0: dim O/J with J the Jacobian ideal, via exact elimination on
/// monomials of degree < D for increasing D. Equal dimensions at D and D+1 give M^D in J
/// (Nakayama), so the answer is exact. Throws InputError for the zero polynomial and
/// NumericError "possibly non-isolated" when no D <= max(2 deg^2, 4) stabilizes.
MilnorResult milnor_number(const Polynomial& f);

/// Milnor number of a transverse plane slice at a point of the line spanned by `line`, for a
/// homogeneous f in three variables singular along that line. The gradient must vanish exactly
/// on the line. Slices are drawn from `seed`; the minimum over two isolated slices is returned.
/// Throws InputError for bad input or when no slice out of 10 is isolated.
int transversal_milnor(const Polynomial& f, const std::vector<GaussianRational>& line, std::uint64_t seed = 0);

/// chi(F_f) = 1 + (-1)^n ((d-1)^(n+1) - d mu') for f homogeneous of degree d on C^(n+1).
/// Throws InputError for d < 1, n < 1 or mu' < 0.
long long randell_chi(int d, int n, long long mu_prime);

/// Every integer d >= 2 with randell_chi(d, n, mu') = chi, in increasing order.
std::vector<int> recover_degree(long long chi, int n, long long mu_prime);

}  // namespace germ
