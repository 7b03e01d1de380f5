#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace polylab {

/// Default bound on exhaustive enumerations (field sizes, q^n point spaces).
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 16;

/// Raised for invalid arguments that violate a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed the configured cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

bool is_prime(std::uint64_t n);

/// Element of F_q packed as an integer in [0, q): the base-p digits are the
/// coefficients of the element in the polynomial basis, constant term first.
using Code = std::uint32_t;

/// Immutable description of F_p or F_{p^m} = F_p[x] / (modulus).
///
/// Cheap to copy (shared immutable state). All arithmetic works on packed
/// `Code` values; `FieldElement` wraps a code together with its spec.
class FieldSpec {
 public:
  /// F_p. Throws PreconditionError unless p is prime.
  static FieldSpec prime(std::uint32_t p);

  /// F_{p^m}. `modulus` holds m+1 coefficients, constant term first, and must
  /// be monic and irreducible over F_p (checked by trial division).
  static FieldSpec extension(std::uint32_t p, std::vector<std::uint32_t> modulus);

  /// Prime fields and the built-in extensions F_4, F_8, F_9, F_16, F_27.
  static FieldSpec builtin(std::uint64_t q);

  /// F_{p^m} with the first irreducible monic modulus in lexicographic order
  /// (m = 1 gives F_p).
  static FieldSpec with_degree(std::uint32_t p, std::uint32_t m);

  static bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus);

  std::uint32_t p() const;
  std::uint32_t m() const;
  std::uint64_t order() const;
  /// Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const;
  bool is_prime_field() const { return m() == 1; }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  /// Image of an integer in the prime subfield.
  Code from_int(std::int64_t v) const;

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  /// Throws PreconditionError on zero.
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t e) const;

  std::vector<std::uint32_t> rep(Code a) const;
  Code from_rep(std::span<const std::uint32_t> rep) const;

  bool same_as(const FieldSpec& other) const;
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.same_as(b); }

  std::string describe() const;

 private:
  struct Impl;
  explicit FieldSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// A field scalar bound to its spec. Mixed-spec arithmetic throws.
class FieldElement {
 public:
  FieldElement(FieldSpec spec, Code code);
  static FieldElement from_rep(FieldSpec spec, std::span<const std::uint32_t> rep);
  static FieldElement from_int(FieldSpec spec, std::int64_t v);

  const FieldSpec& spec() const { return spec_; }
  Code code() const { return code_; }
  std::vector<std::uint32_t> rep() const { return spec_.rep(code_); }
  bool is_zero() const { return code_ == 0; }

  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.code_ == b.code_ && a.spec_ == b.spec_;
  }

 private:
  FieldSpec spec_;
  Code code_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

/// All q elements in code order, which is lexicographic on the rep read from
/// the highest coefficient down. Throws CapExceeded when q > cap.
std::vector<FieldElement> enumerate(const FieldSpec& spec,
                                    std::uint64_t cap = kDefaultEnumerationCap);

/// {"p": .., "m": .., "modulus": [..]}; modulus omitted when m = 1.
nlohmann::json to_json(const FieldSpec& spec);
FieldSpec field_from_json(const nlohmann::json& j);

}  // namespace polylab
