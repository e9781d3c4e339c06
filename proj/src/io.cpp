#include "linepack/io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace linepack::io {

namespace {

constexpr const char* kMagic = "LINEPACK-MATRIX";
constexpr const char* kVersion = "v1";

void write_header(std::ostream& os, std::size_t rows, std::size_t cols, std::int64_t num, std::int64_t den) {
  os << kMagic << ' ' << kVersion << " rows=" << rows << " cols=" << cols << " scale_log2_num=" << num
     << " scale_log2_den=" << den << '\n';
}

std::int64_t header_field(const std::string& token, const std::string& key) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) throw ParseError("expected " + prefix + " in header, got '" + token + "'");
  try {
    std::size_t used = 0;
    const std::string digits = token.substr(prefix.size());
    const long long v = std::stoll(digits, &used);
    if (used != digits.size()) throw ParseError("trailing characters in " + token);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer in header field " + token);
  }
}

struct Entry {
  Rational re;
  Rational im;
};

Entry parse_entry(const std::string& text, std::size_t r, std::size_t c) {
  const auto semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
    throw ParseError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not re;im");
  try {
    return {parse_rational(text.substr(0, semi)), parse_rational(text.substr(semi + 1))};
  } catch (const std::exception& e) {
    throw ParseError("entry (" + std::to_string(r) + "," + std::to_string(c) + "): " + e.what());
  }
}

}  // namespace

void write_frame(std::ostream& os, const etf::ScaledFrame& frame) {
  const auto& e = frame.entries;
  write_header(os, e.rows(), e.cols(), frame.log2_scale_sq, 2);
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t c = 0; c < e.cols(); ++c) {
      if (c) os << ' ';
      os << e(r, c).re << ';' << e(r, c).im;
    }
    os << '\n';
  }
}

void write_gram(std::ostream& os, const QiMatrix& gram) {
  write_header(os, gram.rows(), gram.cols(), 0, 1);
  for (std::size_t r = 0; r < gram.rows(); ++r) {
    for (std::size_t c = 0; c < gram.cols(); ++c) {
      if (c) os << ' ';
      os << to_string(gram.entry(r, c));
    }
    os << '\n';
  }
}

MatrixFile read_matrix(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty input");
  std::istringstream header(line);
  std::string magic, version, rows, cols, num, den, extra;
  header >> magic >> version >> rows >> cols >> num >> den;
  if (magic != kMagic) throw ParseError("missing LINEPACK-MATRIX header");
  if (version != kVersion) throw ParseError("unsupported format version '" + version + "'");
  if (header >> extra) throw ParseError("unexpected header field '" + extra + "'");

  MatrixFile out;
  const std::int64_t r = header_field(rows, "rows");
  const std::int64_t c = header_field(cols, "cols");
  out.scale_log2_num = header_field(num, "scale_log2_num");
  out.scale_log2_den = header_field(den, "scale_log2_den");
  if (r < 0 || c < 0) throw ParseError("negative dimensions");
  if (out.scale_log2_den <= 0) throw ParseError("scale_log2_den must be positive");
  out.rows = static_cast<std::size_t>(r);
  out.cols = static_cast<std::size_t>(c);

  std::vector<Entry> entries;
  entries.reserve(out.rows * out.cols);
  BigInt common = 1;
  for (std::size_t i = 0; i < out.rows; ++i) {
    if (!std::getline(is, line)) throw ParseError("missing row " + std::to_string(i));
    std::istringstream row(line);
    std::string token;
    std::size_t j = 0;
    while (row >> token) {
      if (j >= out.cols) throw ParseError("row " + std::to_string(i) + " has too many entries");
      if (token.find('/') != std::string::npos) out.rational = true;
      auto e = parse_entry(token, i, j);
      common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(e.re));
      common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(e.im));
      entries.push_back(std::move(e));
      ++j;
    }
    if (j != out.cols) throw ParseError("row " + std::to_string(i) + " has too few entries");
  }
  while (std::getline(is, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("trailing data after matrix");

  if (common > BigInt(std::numeric_limits<std::int64_t>::max() >> 1))
    throw ParseError("common denominator too large");
  ZiMatrix num_matrix(out.rows, out.cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Rational re = entries[i].re * Rational(common);
    const Rational im = entries[i].im * Rational(common);
    num_matrix(i / out.cols, i % out.cols) =
        GaussInt(boost::multiprecision::numerator(re).convert_to<std::int64_t>(),
                 boost::multiprecision::numerator(im).convert_to<std::int64_t>());
  }
  out.values = QiMatrix(std::move(num_matrix), common.convert_to<std::int64_t>());
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_matrix(in);
}

etf::ScaledFrame as_frame(const MatrixFile& file) {
  if (file.rational || file.values.denominator() != 1) throw ParseError("frame files hold Gaussian integers");
  if (file.scale_log2_den != 2) throw ParseError("frame files use scale_log2_den=2");
  return {file.values.numerators(), static_cast<int>(file.scale_log2_num)};
}

}  // namespace linepack::io
