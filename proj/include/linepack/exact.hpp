#pragma once

// Exact scalar types: unbounded rationals, Gaussian integers, Gaussian
// rationals, and dyadic-scaled Gaussian integers used for character values.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace linepack {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" with q > 0 (q = 1 is still written).
std::string to_string(const Rational& r);
/// Accepts "p/q" or "p".
Rational parse_rational(std::string_view text);

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  constexpr GaussInt operator+(GaussInt o) const { return {re + o.re, im + o.im}; }
  constexpr GaussInt operator-(GaussInt o) const { return {re - o.re, im - o.im}; }
  constexpr GaussInt operator-() const { return {-re, -im}; }
  constexpr GaussInt operator*(GaussInt o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  constexpr GaussInt& operator+=(GaussInt o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  constexpr GaussInt& operator-=(GaussInt o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr std::int64_t norm() const { return re * re + im * im; }
  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr bool operator==(const GaussInt&) const = default;
};

/// i^e for any integer e.
constexpr GaussInt i_pow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::ostream& operator<<(std::ostream& os, GaussInt z);

struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  explicit GaussRational(GaussInt z) : re(z.re), im(z.im) {}

  GaussRational operator+(const GaussRational& o) const { return {re + o.re, im + o.im}; }
  GaussRational operator-(const GaussRational& o) const { return {re - o.re, im - o.im}; }
  GaussRational operator*(const GaussRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
};

/// "re;im" with each part written as "p/q".
std::string to_string(const GaussRational& z);
std::ostream& operator<<(std::ostream& os, const GaussRational& z);

/// (re + i*im) * 2^log2_scale. Canonical: re and im are not both even unless
/// both are zero, and zero has log2_scale 0.
class GaussianScaled {
 public:
  GaussianScaled() = default;
  GaussianScaled(std::int64_t re, std::int64_t im = 0, int log2_scale = 0);
  static GaussianScaled from(GaussInt z, int log2_scale = 0) { return {z.re, z.im, log2_scale}; }

  std::int64_t re() const { return re_; }
  std::int64_t im() const { return im_; }
  int log2_scale() const { return log2_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  GaussianScaled operator*(const GaussianScaled& o) const;
  GaussianScaled operator+(const GaussianScaled& o) const;
  GaussianScaled operator-() const { return {-re_, -im_, log2_}; }
  GaussianScaled operator-(const GaussianScaled& o) const { return *this + (-o); }
  GaussianScaled conj() const { return {re_, -im_, log2_}; }
  /// |z|^2, real.
  GaussianScaled norm() const;

  GaussRational to_rational() const;
  /// Throws std::domain_error if the value is not a Gaussian integer.
  GaussInt to_gauss_int() const;

  bool operator==(const GaussianScaled&) const = default;

 private:
  void canonicalize();

  std::int64_t re_ = 0;
  std::int64_t im_ = 0;
  int log2_ = 0;
};

std::ostream& operator<<(std::ostream& os, const GaussianScaled& z);

/// 2^e as a rational, e may be negative.
Rational pow2(int e);

}  // namespace linepack
