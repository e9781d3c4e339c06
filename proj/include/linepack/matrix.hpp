#pragma once

// Dense exact matrices over the Gaussian integers and Gaussian rationals.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "linepack/exact.hpp"

namespace linepack {

/// Runs fn(i) for i in [begin, end) on up to `threads` workers. Each index is
/// visited exactly once; results must be written to disjoint slots.
void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

/// Worker count used when callers pass 0.
unsigned default_threads();

class ZiMatrix {
 public:
  ZiMatrix() = default;
  ZiMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ZiMatrix identity(std::size_t n, GaussInt diag = 1);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<GaussInt>& data() const { return data_; }

  ZiMatrix adjoint() const;
  ZiMatrix transpose() const;
  ZiMatrix conj() const;
  ZiMatrix hadamard(const ZiMatrix& o) const;
  GaussInt trace() const;
  /// Largest |re| or |im| over all entries.
  std::int64_t max_abs() const;
  bool is_zero() const;

  ZiMatrix operator+(const ZiMatrix& o) const;
  ZiMatrix operator-(const ZiMatrix& o) const;
  ZiMatrix operator*(GaussInt s) const;
  ZiMatrix& operator+=(const ZiMatrix& o);

  bool operator==(const ZiMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussInt> data_;
};

/// Throws std::overflow_error when the product could exceed 62 bits.
ZiMatrix multiply(const ZiMatrix& a, const ZiMatrix& b, unsigned threads = 1);
/// a * a^H without materializing the adjoint.
ZiMatrix gram_rows(const ZiMatrix& a, unsigned threads = 1);

/// Gaussian-rational matrix: Gaussian-integer numerators over one common
/// positive denominator, kept reduced by the gcd of everything.
class QiMatrix {
 public:
  QiMatrix() = default;
  QiMatrix(std::size_t rows, std::size_t cols) : num_(rows, cols) {}
  QiMatrix(ZiMatrix numerators, std::int64_t denominator);

  static QiMatrix identity(std::size_t n);

  std::size_t rows() const { return num_.rows(); }
  std::size_t cols() const { return num_.cols(); }
  const ZiMatrix& numerators() const { return num_; }
  std::int64_t denominator() const { return den_; }

  /// Entry in lowest terms.
  GaussRational entry(std::size_t r, std::size_t c) const;
  GaussRational trace() const;

  QiMatrix adjoint() const { return {num_.adjoint(), den_}; }
  QiMatrix conj() const { return {num_.conj(), den_}; }
  QiMatrix transpose() const { return {num_.transpose(), den_}; }
  QiMatrix hadamard(const QiMatrix& o) const;
  QiMatrix operator+(const QiMatrix& o) const;
  QiMatrix operator-(const QiMatrix& o) const;
  QiMatrix scaled(std::int64_t num, std::int64_t den) const;
  bool is_zero() const { return num_.is_zero(); }

  bool operator==(const QiMatrix& o) const { return den_ == o.den_ && num_ == o.num_; }

 private:
  void normalize();

  ZiMatrix num_;
  std::int64_t den_ = 1;
};

QiMatrix multiply(const QiMatrix& a, const QiMatrix& b, unsigned threads = 1);

/// tr(A B) without forming the product.
GaussRational trace_of_product(const QiMatrix& a, const QiMatrix& b);

}  // namespace linepack
