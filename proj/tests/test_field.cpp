#include <doctest.h>

#include <set>

#include "polylab/field.hpp"

using namespace polylab;

namespace {

// F_4 = F_2[x]/(x^2 + x + 1); codes pack the rep constant term first, so
// alpha = 2 and alpha + 1 = 3.
constexpr Code kAlpha = 2;
constexpr Code kAlphaPlusOne = 3;

std::vector<FieldSpec> small_fields() {
  std::vector<FieldSpec> out;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) out.push_back(FieldSpec::builtin(q));
  return out;
}

}  // namespace

TEST_CASE("prime field examples") {
  const auto f5 = FieldSpec::prime(5), f7 = FieldSpec::prime(7);
  CHECK(f5.add(2, 3) == 0);
  CHECK(f7.add(0, 4) == 4);
  CHECK(f5.mul(3, 2) == 1);
  CHECK(f7.inv(3) == 5);
  CHECK(f5.inv(4) == 4);
  CHECK_THROWS_AS(f5.inv(0), PreconditionError);
  CHECK_THROWS_AS(FieldSpec::prime(9), PreconditionError);
}

TEST_CASE("F_4 arithmetic") {
  const auto f4 = FieldSpec::builtin(4);
  CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(f4.add(kAlpha, kAlpha) == 0);
  CHECK(f4.mul(kAlpha, kAlpha) == kAlphaPlusOne);
  CHECK(f4.inv(kAlpha) == kAlphaPlusOne);
  // multiplicative group of order 3
  for (Code a = 1; a < 4; ++a) CHECK(f4.pow(a, 3) == 1);
  CHECK(f4.pow(kAlpha, 1) != 1);
}

TEST_CASE("extension moduli are irreducible") {
  CHECK(FieldSpec::is_irreducible(2, std::vector<std::uint32_t>{1, 1, 1}));
  CHECK_FALSE(FieldSpec::is_irreducible(2, std::vector<std::uint32_t>{1, 0, 1}));  // (x + 1)^2
  CHECK_FALSE(FieldSpec::is_irreducible(3, std::vector<std::uint32_t>{2, 0, 1}));  // x^2 - 1
  CHECK_THROWS_AS(FieldSpec::extension(2, {1, 0, 1}), PreconditionError);
  for (std::uint64_t q : {4, 8, 9, 16, 27}) {
    const auto f = FieldSpec::builtin(q);
    CHECK(f.order() == q);
    CHECK(FieldSpec::is_irreducible(f.p(), f.modulus()));
  }
}

TEST_CASE("enumerate") {
  const auto e3 = enumerate(FieldSpec::prime(3));
  REQUIRE(e3.size() == 3);
  for (Code i = 0; i < 3; ++i) CHECK(e3[i].code() == i);
  CHECK(enumerate(FieldSpec::builtin(4)).size() == 4);
  CHECK(enumerate(FieldSpec::builtin(9)).size() == 9);
  CHECK_THROWS_AS(enumerate(FieldSpec::prime(17), 16), CapExceeded);
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (const auto& f : small_fields()) {
    CAPTURE(f.describe());
    const auto q = static_cast<Code>(f.order());
    bool ok = true;
    for (Code a = 0; a < q; ++a) {
      ok &= f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
      if (a != 0) ok &= f.mul(a, f.inv(a)) == 1;
      for (Code b = 0; b < q; ++b) {
        ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
        ok &= f.sub(f.add(a, b), b) == a;
        for (Code c = 0; c < q; ++c) {
          ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
          ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
          ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("Frobenius is additive") {
  for (const auto& f : small_fields()) {
    const auto q = static_cast<Code>(f.order());
    bool ok = true;
    for (Code a = 0; a < q; ++a)
      for (Code b = 0; b < q; ++b) ok &= f.pow(f.add(a, b), f.p()) == f.add(f.pow(a, f.p()), f.pow(b, f.p()));
    CHECK(ok);
  }
}

TEST_CASE("odd prime fields have (p + 1) / 2 squares") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 101u}) {
    const auto f = FieldSpec::prime(p);
    std::set<Code> squares;
    for (Code a = 0; a < p; ++a) squares.insert(f.mul(a, a));
    CHECK(squares.size() == (p + 1) / 2);
  }
}

TEST_CASE("FieldElement checks specs") {
  const auto f5 = FieldSpec::prime(5), f7 = FieldSpec::prime(7);
  const FieldElement a(f5, 2), b(f5, 3), c(f7, 3);
  CHECK((a + b).is_zero());
  CHECK((a * b).code() == 1);
  CHECK((a / b * b) == a);
  CHECK_THROWS(a + c);
  CHECK(FieldElement::from_int(f5, -1).code() == 4);
}

TEST_CASE("json round trip") {
  for (std::uint64_t q : {5, 9, 16}) {
    const auto f = FieldSpec::builtin(q);
    const auto j = to_json(f);
    CHECK(j.contains("modulus") == (f.m() > 1));
    CHECK(field_from_json(j) == f);
  }
}
