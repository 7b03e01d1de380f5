#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace polylab {

/// Independent stream for one (purpose, index) under a run seed.
///
/// The engine is seeded through std::seed_seq from the run seed, a 64-bit
/// FNV-1a hash of `label` and `index`, so a new label never shifts the
/// numbers drawn under an existing one.
std::mt19937_64 make_stream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

std::uint64_t fnv1a(std::string_view text);

}  // namespace polylab
