#include <cstdint>
#include <random>

#include "polylab/kernels.hpp"
#include "polylab/lcc.hpp"
#include "polylab/rng.hpp"

namespace polylab::kernels {

namespace {

// Successes over every error placement and line for one target position.
std::uint64_t single_error_at(const RMCode& code, std::vector<Code>& word, std::size_t i) {
  const auto& spec = code.spec();
  const std::size_t n = code.length();
  std::uint64_t ok = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const Code original = word[j];
    for (Code v = 1; v < spec.order(); ++v) {
      word[j] = spec.add(original, v);
      for (std::size_t line = 0; line < code.lines_per_point(); ++line)
        if (code.decode_along(word, i, line) == word[i]) ++ok;
    }
    word[j] = original;
  }
  return ok;
}

std::uint64_t single_error_total(const RMCode& code) {
  const std::uint64_t n = code.length();
  return n * (n - 1) * (code.spec().order() - 1) * code.lines_per_point();
}

bool one_trial(const RMCode& code, std::vector<Code>& word, unsigned errors, std::uint64_t seed,
               std::uint64_t t) {
  auto rng = make_stream(seed, "lcc.trials", t);
  const std::size_t n = code.length();
  const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  const Code truth = word[i];
  if (errors == 0) {
    const std::size_t line = std::uniform_int_distribution<std::size_t>(0, code.lines_per_point() - 1)(rng);
    return code.decode_along(word, i, line) == truth;
  }
  std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
  if (j >= i) ++j;
  const Code v = std::uniform_int_distribution<Code>(1, static_cast<Code>(code.spec().order() - 1))(rng);
  const std::size_t line = std::uniform_int_distribution<std::size_t>(0, code.lines_per_point() - 1)(rng);
  const Code original = word[j];
  word[j] = code.spec().add(original, v);
  const bool ok = code.decode_along(word, i, line) == truth;
  word[j] = original;
  return ok;
}

void check_errors(unsigned errors) {
  if (errors > 1) throw PreconditionError("trial harness injects at most one error");
}

}  // namespace

DecodeTally lcc_single_error_serial(const RMCode& code, const std::vector<Code>& word) {
  std::vector<Code> w = word;
  DecodeTally tally;
  for (std::size_t i = 0; i < code.length(); ++i) tally.successes += single_error_at(code, w, i);
  tally.total = single_error_total(code);
  return tally;
}

DecodeTally lcc_single_error_omp(const RMCode& code, const std::vector<Code>& word) {
  std::uint64_t ok = 0;
  const auto n = static_cast<std::int64_t>(code.length());
#pragma omp parallel reduction(+ : ok)
  {
    std::vector<Code> w = word;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) ok += single_error_at(code, w, static_cast<std::size_t>(i));
  }
  return {ok, single_error_total(code)};
}

DecodeTally lcc_trials_serial(const RMCode& code, const std::vector<Code>& word, std::uint64_t trials,
                              unsigned errors, std::uint64_t seed) {
  check_errors(errors);
  std::vector<Code> w = word;
  DecodeTally tally{0, trials};
  for (std::uint64_t t = 0; t < trials; ++t)
    if (one_trial(code, w, errors, seed, t)) ++tally.successes;
  return tally;
}

DecodeTally lcc_trials_omp(const RMCode& code, const std::vector<Code>& word, std::uint64_t trials,
                           unsigned errors, std::uint64_t seed) {
  check_errors(errors);
  std::uint64_t ok = 0;
#pragma omp parallel reduction(+ : ok)
  {
    std::vector<Code> w = word;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t)
      if (one_trial(code, w, errors, seed, static_cast<std::uint64_t>(t))) ++ok;
  }
  return {ok, trials};
}

}  // namespace polylab::kernels
