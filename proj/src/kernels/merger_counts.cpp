#include <cstdint>

#include "polylab/kernels.hpp"

namespace polylab::kernels {

namespace {

std::uint64_t space_size(const FieldSpec& spec, std::size_t n) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < n; ++i) s *= spec.order();
  return s;
}

// Histogram over z of a*x + b*y for all (a, b).
std::vector<std::uint32_t> counts_for(const FieldSpec& spec, std::size_t n, std::uint64_t xi,
                                      std::uint64_t yi, std::uint64_t total) {
  const std::uint64_t q = spec.order();
  const Point x = point_at(q, n, xi), y = point_at(q, n, yi);
  std::vector<std::uint32_t> hist(total, 0);
  Point z(n);
  for (Code a = 0; a < q; ++a)
    for (Code b = 0; b < q; ++b) {
      for (std::size_t k = 0; k < n; ++k) z[k] = spec.add(spec.mul(a, x[k]), spec.mul(b, y[k]));
      ++hist[point_index(q, z)];
    }
  return hist;
}

void check_adversary(std::uint64_t total, const std::vector<std::uint32_t>& adversary) {
  if (adversary.size() != total) throw PreconditionError("adversary table must cover F_q^n");
  for (auto y : adversary)
    if (y >= total) throw PreconditionError("adversary maps outside F_q^n");
}

}  // namespace

MergerCounts merger_counts_serial(const FieldSpec& spec, std::size_t n,
                                  const std::vector<std::uint32_t>& adversary) {
  const std::uint64_t total = space_size(spec, n);
  check_adversary(total, adversary);
  MergerCounts out(total);
  for (std::uint64_t x = 0; x < total; ++x) out[x] = counts_for(spec, n, x, adversary[x], total);
  return out;
}

MergerCounts merger_counts_omp(const FieldSpec& spec, std::size_t n,
                               const std::vector<std::uint32_t>& adversary) {
  const std::uint64_t total = space_size(spec, n);
  check_adversary(total, adversary);
  MergerCounts out(total);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(total); ++x)
    out[static_cast<std::size_t>(x)] =
        counts_for(spec, n, static_cast<std::uint64_t>(x), adversary[static_cast<std::size_t>(x)], total);
  return out;
}

}  // namespace polylab::kernels
