#pragma once

// Bit-exact text format for frames and Gram matrices.
//
//   LINEPACK-MATRIX v1 rows=<r> cols=<c> scale_log2_num=<a> scale_log2_den=<b>
//   <r lines of c space-separated entries>
//
// The stored matrix times 2^(a/b) is the true matrix. Integer entries are
// written "re;im", rational entries "p/q;p/q" in lowest terms.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "linepack/etf.hpp"
#include "linepack/matrix.hpp"

namespace linepack::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixFile {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::int64_t scale_log2_num = 0;
  std::int64_t scale_log2_den = 1;
  bool rational = false;
  QiMatrix values;  // integer files have denominator 1
};

void write_frame(std::ostream& os, const etf::ScaledFrame& frame);
void write_gram(std::ostream& os, const QiMatrix& gram);

/// Throws ParseError on malformed input.
MatrixFile read_matrix(std::istream& is);
MatrixFile read_matrix_file(const std::string& path);

/// Throws ParseError unless the file holds integer entries and an even
/// scale exponent over denominator 2.
etf::ScaledFrame as_frame(const MatrixFile& file);

}  // namespace linepack::io
