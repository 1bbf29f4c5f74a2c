#pragma once

#include <cstdint>
#include <string_view>

namespace germ {

/// Sub-seed for one labeled consumer of a master seed. Stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

/// Sub-seed for the k-th repetition of a labeled consumer.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index);

}  // namespace germ
