#include <cstdint>

#include "polylab/kernels.hpp"

namespace polylab::kernels {

namespace {

std::uint64_t bad_pairs_in(const std::vector<std::uint32_t>& nb, const std::vector<std::vector<std::uint8_t>>& bad) {
  std::uint64_t count = 0;
  for (std::size_t a = 0; a < nb.size(); ++a)
    for (std::size_t b = a + 1; b < nb.size(); ++b) count += bad[nb[a]][nb[b]];
  return count;
}

}  // namespace

std::vector<std::uint64_t> bad_pairs_per_vertex_serial(const std::vector<std::vector<std::uint32_t>>& nbrs,
                                                       const std::vector<std::vector<std::uint8_t>>& bad) {
  std::vector<std::uint64_t> out(nbrs.size());
  for (std::size_t u = 0; u < nbrs.size(); ++u) out[u] = bad_pairs_in(nbrs[u], bad);
  return out;
}

std::vector<std::uint64_t> bad_pairs_per_vertex_omp(const std::vector<std::vector<std::uint32_t>>& nbrs,
                                                    const std::vector<std::vector<std::uint8_t>>& bad) {
  std::vector<std::uint64_t> out(nbrs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t u = 0; u < static_cast<std::int64_t>(nbrs.size()); ++u)
    out[static_cast<std::size_t>(u)] = bad_pairs_in(nbrs[static_cast<std::size_t>(u)], bad);
  return out;
}

}  // namespace polylab::kernels
