#include "linepack/exact.hpp"

#include <stdexcept>

namespace linepack {

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

std::ostream& operator<<(std::ostream& os, GaussInt z) { return os << z.re << ";" << z.im; }

std::string to_string(const GaussRational& z) { return to_string(z.re) + ";" + to_string(z.im); }

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << to_string(z); }

Rational pow2(int e) {
  BigInt p = 1;
  p <<= (e < 0 ? -e : e);
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

GaussianScaled::GaussianScaled(std::int64_t re, std::int64_t im, int log2_scale)
    : re_(re), im_(im), log2_(log2_scale) {
  canonicalize();
}

void GaussianScaled::canonicalize() {
  if (re_ == 0 && im_ == 0) {
    log2_ = 0;
    return;
  }
  while ((re_ % 2 == 0) && (im_ % 2 == 0)) {
    re_ /= 2;
    im_ /= 2;
    ++log2_;
  }
}

GaussianScaled GaussianScaled::operator*(const GaussianScaled& o) const {
  GaussInt p = GaussInt(re_, im_) * GaussInt(o.re_, o.im_);
  return {p.re, p.im, log2_ + o.log2_};
}

GaussianScaled GaussianScaled::operator+(const GaussianScaled& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  int base = std::min(log2_, o.log2_);
  auto lift = [base](const GaussianScaled& z) {
    int shift = z.log2_ - base;
    if (shift > 40) throw std::overflow_error("GaussianScaled: scale gap too large");
    return GaussInt(z.re_ * (std::int64_t{1} << shift), z.im_ * (std::int64_t{1} << shift));
  };
  GaussInt s = lift(*this) + lift(o);
  return {s.re, s.im, base};
}

GaussianScaled GaussianScaled::norm() const { return {re_ * re_ + im_ * im_, 0, 2 * log2_}; }

GaussRational GaussianScaled::to_rational() const {
  Rational scale = pow2(log2_);
  return {Rational(re_) * scale, Rational(im_) * scale};
}

GaussInt GaussianScaled::to_gauss_int() const {
  if (is_zero()) return {};
  if (log2_ < 0) throw std::domain_error("GaussianScaled: value is not a Gaussian integer");
  if (log2_ > 60) throw std::overflow_error("GaussianScaled: value exceeds 64 bits");
  return {re_ << log2_, im_ << log2_};
}

std::ostream& operator<<(std::ostream& os, const GaussianScaled& z) {
  return os << "(" << z.re() << "+" << z.im() << "i)*2^" << z.log2_scale();
}

}  // namespace linepack
