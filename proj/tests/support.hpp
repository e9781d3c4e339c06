#pragma once

// Hand-rolled generators and small oracles shared by the unit tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "linepack/bgroup.hpp"
#include "linepack/exact.hpp"
#include "linepack/gf2n.hpp"

namespace linepack::testkit {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  gf2n::FieldElement element(const gf2n::FieldContext& f) { return {static_cast<std::uint32_t>(below(f.order()))}; }
  gf2n::FieldElement nonzero(const gf2n::FieldContext& f) {
    return {static_cast<std::uint32_t>(1 + below(f.order() - 1))};
  }
  bgroup::GroupElement group_element(const gf2n::FieldContext& f) { return {element(f), element(f)}; }
  GaussInt gauss(std::int64_t bound) { return {between(-bound, bound), between(-bound, bound)}; }
  Rational rational(std::int64_t bound) {
    return Rational(between(-bound, bound)) / Rational(between(1, bound));
  }

 private:
  std::mt19937_64 rng_;
};

/// Schoolbook carry-less product reduced modulo `modulus`.
inline std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint64_t modulus, int n) {
  std::uint64_t p = 0;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1) p ^= std::uint64_t{a} << i;
  for (int i = 63; i >= n; --i)
    if ((p >> i) & 1) p ^= modulus << (i - n);
  return static_cast<std::uint32_t>(p);
}

/// Trace as the sum of the n Frobenius images, by repeated slow squaring.
inline int slow_trace(std::uint32_t a, std::uint64_t modulus, int n) {
  std::uint32_t acc = 0;
  std::uint32_t x = a;
  for (int j = 0; j < n; ++j) {
    acc ^= x;
    x = slow_mul(x, x, modulus, n);
  }
  return static_cast<int>(acc & 1);  // acc is 0 or 1
}

inline std::complex<double> to_complex(const GaussianScaled& z) {
  const double s = std::ldexp(1.0, z.log2_scale());
  return {static_cast<double>(z.re()) * s, static_cast<double>(z.im()) * s};
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace linepack::testkit
