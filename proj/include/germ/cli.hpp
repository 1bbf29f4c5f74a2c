#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "germ/polynomial.hpp"

namespace germ::cli {

/// Values a catalog entry is known to have; absent fields are not checked.
struct Expectation {
  std::optional<int> mult{};
  std::optional<int> tangent_lines{};
  std::optional<int> branches{};
  std::optional<bool> lne{};
  std::optional<int> milnor{};
  /// Transversal Milnor number along `singular_line`.
  std::optional<int> transversal_milnor{};
  std::optional<long long> chi{};
  std::optional<long long> hilbert_e{};
};

struct CatalogEntry {
  std::string name;
  /// Empty polynomial text stands for the zero ideal (the ambient space itself).
  std::string polynomial;
  std::vector<std::string> variables;
  /// "classical" (a standard example with a well-known value), "derived" (value obtained by hand
  /// from a formula or factorization), or "direct" (immediate from definitions).
  std::string provenance;
  std::string note;
  Expectation expected;
  std::vector<GaussianRational> singular_line;
};

const std::vector<CatalogEntry>& catalog();

struct CatalogCheck {
  std::string name;
  bool ok = true;
  std::vector<std::string> checked;
  std::vector<std::string> mismatches;
};

/// Recomputes every expected field of the entry with the given seed.
CatalogCheck check_entry(const CatalogEntry& entry, std::uint64_t seed = 0);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// Runs the command line (args excludes the program name). Exit codes: 0 success, 2 input
/// error, 3 numeric failure or route disagreement (a report is still written).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace germ::cli
