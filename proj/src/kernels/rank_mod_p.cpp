#include <cstdint>
#include <utility>

#include "polylab/kernels.hpp"

namespace polylab::kernels {

namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) result = result * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return result;
}

// Finds a pivot in column c at or below row r, swaps it up and normalizes it.
bool take_pivot(std::vector<std::vector<std::uint32_t>>& a, std::size_t r, std::size_t c, std::uint32_t p) {
  std::size_t piv = r;
  while (piv < a.size() && a[piv][c] == 0) ++piv;
  if (piv == a.size()) return false;
  std::swap(a[r], a[piv]);
  const std::uint64_t inv = inverse_mod(a[r][c], p);
  for (auto& x : a[r]) x = static_cast<std::uint32_t>(x * inv % p);
  return true;
}

void eliminate_row(std::vector<std::uint32_t>& row, const std::vector<std::uint32_t>& pivot_row, std::size_t c,
                   std::uint32_t p) {
  const std::uint64_t factor = row[c];
  if (factor == 0) return;
  for (std::size_t k = c; k < row.size(); ++k)
    row[k] = static_cast<std::uint32_t>((row[k] + (p - factor) * pivot_row[k]) % p);
}

}  // namespace

std::size_t rank_mod_p_serial(std::vector<std::vector<std::uint32_t>> a, std::uint32_t p) {
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    if (!take_pivot(a, r, c, p)) continue;
    for (std::size_t i = r + 1; i < a.size(); ++i) eliminate_row(a[i], a[r], c, p);
    ++r;
  }
  return r;
}

std::size_t rank_mod_p_omp(std::vector<std::vector<std::uint32_t>> a, std::uint32_t p) {
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    if (!take_pivot(a, r, c, p)) continue;
    const auto rows = static_cast<std::int64_t>(a.size());
    const auto& pivot_row = a[r];
#pragma omp parallel for schedule(static)
    for (std::int64_t i = static_cast<std::int64_t>(r) + 1; i < rows; ++i)
      eliminate_row(a[static_cast<std::size_t>(i)], pivot_row, c, p);
    ++r;
  }
  return r;
}

}  // namespace polylab::kernels
