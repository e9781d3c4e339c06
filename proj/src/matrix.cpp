#include "linepack/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace linepack {

unsigned default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = default_threads();
  std::size_t count = end > begin ? end - begin : 0;
  if (threads <= 1 || count < 2) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::vector<std::thread> pool;
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < end; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

ZiMatrix ZiMatrix::identity(std::size_t n, GaussInt diag) {
  ZiMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = diag;
  return m;
}

ZiMatrix ZiMatrix::adjoint() const {
  ZiMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
  return t;
}

ZiMatrix ZiMatrix::transpose() const {
  ZiMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ZiMatrix ZiMatrix::conj() const {
  ZiMatrix t = *this;
  for (auto& z : t.data_) z = z.conj();
  return t;
}

ZiMatrix ZiMatrix::hadamard(const ZiMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("hadamard: shape mismatch");
  ZiMatrix t(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) t.data_[i] = data_[i] * o.data_[i];
  return t;
}

GaussInt ZiMatrix::trace() const {
  GaussInt t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::int64_t ZiMatrix::max_abs() const {
  std::int64_t m = 0;
  for (const auto& z : data_) m = std::max({m, z.re < 0 ? -z.re : z.re, z.im < 0 ? -z.im : z.im});
  return m;
}

bool ZiMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](GaussInt z) { return z.is_zero(); });
}

ZiMatrix ZiMatrix::operator+(const ZiMatrix& o) const {
  ZiMatrix t = *this;
  t += o;
  return t;
}

ZiMatrix& ZiMatrix::operator+=(const ZiMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ZiMatrix ZiMatrix::operator-(const ZiMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("sub: shape mismatch");
  ZiMatrix t = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) t.data_[i] -= o.data_[i];
  return t;
}

ZiMatrix ZiMatrix::operator*(GaussInt s) const {
  ZiMatrix t = *this;
  for (auto& z : t.data_) z = z * s;
  return t;
}

namespace {

void check_product_bound(std::int64_t a, std::int64_t b, std::size_t inner) {
  // |sum of inner products of (re,im) pairs| <= 2 * a * b * inner
  __int128 bound = static_cast<__int128>(a) * b * 2 * static_cast<__int128>(inner);
  if (bound > (static_cast<__int128>(1) << 62))
    throw std::overflow_error("exact matrix product exceeds 62-bit range");
}

}  // namespace

ZiMatrix multiply(const ZiMatrix& a, const ZiMatrix& b, unsigned threads) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  check_product_bound(a.max_abs(), b.max_abs(), a.cols());
  ZiMatrix out(a.rows(), b.cols());
  parallel_for(0, a.rows(), threads, [&](std::size_t r) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      GaussInt x = a(r, l);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += x * b(l, c);
    }
  });
  return out;
}

ZiMatrix gram_rows(const ZiMatrix& a, unsigned threads) {
  check_product_bound(a.max_abs(), a.max_abs(), a.cols());
  ZiMatrix out(a.rows(), a.rows());
  parallel_for(0, a.rows(), threads, [&](std::size_t r) {
    for (std::size_t s = 0; s < a.rows(); ++s) {
      GaussInt acc;
      for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * a(s, c).conj();
      out(r, s) = acc;
    }
  });
  return out;
}

QiMatrix::QiMatrix(ZiMatrix numerators, std::int64_t denominator)
    : num_(std::move(numerators)), den_(denominator) {
  if (den_ == 0) throw std::invalid_argument("QiMatrix: zero denominator");
  if (den_ < 0) {
    num_ = num_ * GaussInt(-1);
    den_ = -den_;
  }
  normalize();
}

QiMatrix QiMatrix::identity(std::size_t n) { return {ZiMatrix::identity(n), 1}; }

void QiMatrix::normalize() {
  std::int64_t g = den_;
  for (const auto& z : num_.data()) {
    g = std::gcd(g, z.re);
    g = std::gcd(g, z.im);
    if (g == 1) return;
  }
  if (g > 1) {
    ZiMatrix reduced(num_.rows(), num_.cols());
    for (std::size_t r = 0; r < num_.rows(); ++r)
      for (std::size_t c = 0; c < num_.cols(); ++c)
        reduced(r, c) = GaussInt(num_(r, c).re / g, num_(r, c).im / g);
    num_ = std::move(reduced);
    den_ /= g;
  }
}

GaussRational QiMatrix::entry(std::size_t r, std::size_t c) const {
  GaussInt z = num_(r, c);
  return {Rational(z.re, den_), Rational(z.im, den_)};
}

GaussRational QiMatrix::trace() const {
  GaussInt t = num_.trace();
  return {Rational(t.re, den_), Rational(t.im, den_)};
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("denominator overflow");
  return out;
}

}  // namespace

QiMatrix QiMatrix::hadamard(const QiMatrix& o) const {
  return {num_.hadamard(o.num_), checked_mul(den_, o.den_)};
}

QiMatrix QiMatrix::operator+(const QiMatrix& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  return {num_ * GaussInt(l / den_) + o.num_ * GaussInt(l / o.den_), l};
}

QiMatrix QiMatrix::operator-(const QiMatrix& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  return {num_ * GaussInt(l / den_) - o.num_ * GaussInt(l / o.den_), l};
}

QiMatrix QiMatrix::scaled(std::int64_t num, std::int64_t den) const {
  return {num_ * GaussInt(num), checked_mul(den_, den)};
}

QiMatrix multiply(const QiMatrix& a, const QiMatrix& b, unsigned threads) {
  return {multiply(a.numerators(), b.numerators(), threads),
          checked_mul(a.denominator(), b.denominator())};
}

GaussRational trace_of_product(const QiMatrix& a, const QiMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_of_product: shape mismatch");
  GaussInt acc;
  const auto& x = a.numerators();
  const auto& y = b.numerators();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) acc += x(r, c) * y(c, r);
  Rational den = Rational(a.denominator()) * Rational(b.denominator());
  return {Rational(acc.re) / den, Rational(acc.im) / den};
}

}  // namespace linepack
