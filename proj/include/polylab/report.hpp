#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polylab/rational.hpp"

namespace polylab {

/// A reported number tagged with how it was computed.
struct Tagged {
  bool exact = true;
  Rational rational = 0;
  double value = 0.0;

  static Tagged of(const Rational& r) { return {true, r, 0.0}; }
  static Tagged of(std::int64_t v) { return {true, Rational(v), 0.0}; }
  static Tagged of_u(std::uint64_t v) { return {true, Rational(BigInt(v)), 0.0}; }
  static Tagged of_float(double v) { return {false, 0, v}; }

  /// {"tag": "exact-rational", "value": "p/q"} or {"tag": "float", "value": x}.
  nlohmann::json to_json() const;
  std::string text() const;
};

struct Assertion {
  std::string name;
  bool passed = false;
  Tagged lhs;
  Tagged rhs;
  std::string relation;  // "<=", ">=", "==", ...
};

/// Machine-readable result of one command. Keys serialize sorted; only
/// wall_time_ms depends on anything beyond (command, inputs, seed).
class RunReport {
 public:
  RunReport(std::string command, std::uint64_t seed);

  /// Digest over every input that shaped the run (argv, file contents).
  void add_input(std::string_view name, std::string_view content);
  std::string inputs_digest() const;

  void set_output(const std::string& key, const Tagged& v);
  void set_output(const std::string& key, nlohmann::json v);

  /// Records a named check and returns `passed`.
  bool check(const std::string& name, bool passed, const Tagged& lhs, const Tagged& rhs,
             const std::string& relation);
  bool check(const std::string& name, bool passed);

  bool ok() const;
  const std::vector<Assertion>& assertions() const { return assertions_; }
  const nlohmann::json& outputs() const { return outputs_; }
  void set_wall_time_ms(double ms) { wall_time_ms_ = ms; }

  nlohmann::json to_json() const;
  std::string to_csv() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  nlohmann::json outputs_ = nlohmann::json::object();
  std::vector<Assertion> assertions_;
  double wall_time_ms_ = 0.0;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace polylab
