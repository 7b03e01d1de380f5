#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace polylab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Accepts "3", "-3/2" and finite decimals such as "0.25" (converted exactly).
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);
double to_double(const Rational& r);

/// Element of Q(i), for exact elimination over Gaussian rationals.
struct GaussRational {
  Rational re;
  Rational im;

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  GaussRational inverse() const {
    const Rational n = norm();
    return {re / n, -im / n};
  }
  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

}  // namespace polylab
