#include <algorithm>
#include <cstdint>

#include "polylab/kernels.hpp"

namespace polylab::kernels {

CompiledPoly CompiledPoly::from(const MultiPoly& f) {
  CompiledPoly c{f.spec(), f.n_vars(), {}, {}};
  for (const auto& [e, coeff] : f.terms()) {
    c.exponents.insert(c.exponents.end(), e.begin(), e.end());
    c.coeffs.push_back(coeff);
  }
  return c;
}

Code CompiledPoly::evaluate(const Code* point) const {
  Code acc = 0;
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    Code term = coeffs[t];
    const std::uint32_t* e = exponents.data() + t * n_vars;
    for (std::size_t i = 0; i < n_vars && term != 0; ++i)
      if (e[i] != 0) term = spec.mul(term, spec.pow(point[i], e[i]));
    acc = spec.add(acc, term);
  }
  return acc;
}

namespace {

std::uint64_t space_size(const CompiledPoly& f) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < f.n_vars; ++i) s *= f.spec.order();
  return s;
}

void decode_point(std::uint64_t idx, std::uint64_t q, std::size_t n, Code* out) {
  for (std::size_t i = n; i-- > 0;) {
    out[i] = static_cast<Code>(idx % q);
    idx /= q;
  }
}

}  // namespace

std::uint64_t count_zeros_serial(const CompiledPoly& f) {
  const std::uint64_t total = space_size(f);
  const std::uint64_t q = f.spec.order();
  std::vector<Code> pt(f.n_vars);
  std::uint64_t zeros = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode_point(idx, q, f.n_vars, pt.data());
    if (f.evaluate(pt.data()) == 0) ++zeros;
  }
  return zeros;
}

std::uint64_t count_zeros_omp(const CompiledPoly& f) {
  const auto total = static_cast<std::int64_t>(space_size(f));
  const std::uint64_t q = f.spec.order();
  std::uint64_t zeros = 0;
#pragma omp parallel reduction(+ : zeros)
  {
    std::vector<Code> pt(f.n_vars);
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      decode_point(static_cast<std::uint64_t>(idx), q, f.n_vars, pt.data());
      if (f.evaluate(pt.data()) == 0) ++zeros;
    }
  }
  return zeros;
}

}  // namespace polylab::kernels
