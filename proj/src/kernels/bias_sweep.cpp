#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>

#include "polylab/kernels.hpp"

namespace polylab::kernels {

namespace {

struct SweepTables {
  unsigned points = 0;
  std::uint64_t group_order = 0;
  // hist[mask][b][v] = #{a in mask : <a, b> = v mod 3}
  std::vector<std::array<std::array<std::int32_t, 3>, 9>> hist;
};

SweepTables make_tables(unsigned n) {
  if (n < 1 || n > 2) throw PreconditionError("bias sweep supports Z_3^1 and Z_3^2");
  SweepTables t;
  t.points = n == 1 ? 3 : 9;
  t.group_order = t.points;
  const unsigned masks = 1u << t.points;
  t.hist.assign(masks, {});
  for (unsigned mask = 1; mask < masks; ++mask)
    for (unsigned b = 0; b < t.points; ++b)
      for (unsigned a = 0; a < t.points; ++a) {
        if (!(mask >> a & 1u)) continue;
        const unsigned ip = (a % 3) * (b % 3) + (a / 3) * (b / 3);
        ++t.hist[mask][b][ip % 3];
      }
  return t;
}

// Contribution of the pair (A, B) to the sweep.
void check_pair(const SweepTables& t, unsigned ma, unsigned mb, BiasSweep& acc) {
  std::int64_t c[3] = {0, 0, 0};
  for (unsigned b = 0; b < t.points; ++b) {
    if (!(mb >> b & 1u)) continue;
    for (int v = 0; v < 3; ++v) c[v] += t.hist[ma][b][v];
  }
  // c0 + c1 w + c2 w^2 with w^2 = -1 - w
  const std::int64_t x = c[0] - c[2], y = c[1] - c[2];
  const std::int64_t norm = x * x - x * y + y * y;
  const std::int64_t bound =
      static_cast<std::int64_t>(t.group_order) * std::popcount(ma) * std::popcount(mb);
  ++acc.pairs;
  if (norm > bound) ++acc.violations;
  acc.worst_ratio = std::max(acc.worst_ratio, static_cast<double>(norm) / static_cast<double>(bound));
}

}  // namespace

BiasSweep bias_sweep_serial(unsigned n) {
  const auto t = make_tables(n);
  const unsigned masks = 1u << t.points;
  BiasSweep acc;
  for (unsigned ma = 1; ma < masks; ++ma)
    for (unsigned mb = 1; mb < masks; ++mb) check_pair(t, ma, mb, acc);
  return acc;
}

BiasSweep bias_sweep_omp(unsigned n) {
  const auto t = make_tables(n);
  const int masks = 1 << t.points;
  std::uint64_t pairs = 0, violations = 0;
  double worst = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : pairs, violations) reduction(max : worst)
  for (int ma = 1; ma < masks; ++ma) {
    BiasSweep local;
    for (int mb = 1; mb < masks; ++mb)
      check_pair(t, static_cast<unsigned>(ma), static_cast<unsigned>(mb), local);
    pairs += local.pairs;
    violations += local.violations;
    worst = std::max(worst, local.worst_ratio);
  }
  return {pairs, violations, worst};
}

}  // namespace polylab::kernels
