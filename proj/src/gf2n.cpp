#include "linepack/gf2n.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace linepack::gf2n {

namespace {

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

bool is_irreducible(std::uint64_t poly) {
  int n = poly_degree(poly);
  if (n < 1) return false;
  for (int d = 1; 2 * d <= n; ++d) {
    for (std::uint64_t q = std::uint64_t{1} << d; q < (std::uint64_t{1} << (d + 1)); ++q) {
      if (poly_mod(poly, q) == 0) return false;
    }
  }
  return true;
}

std::uint64_t least_irreducible(int n) {
  if (n < 1 || n > 62) throw std::invalid_argument("least_irreducible: degree out of range");
  for (std::uint64_t p = (std::uint64_t{1} << n) | 1; p < (std::uint64_t{1} << (n + 1)); ++p) {
    if (is_irreducible(p)) return p;
  }
  throw std::logic_error("no irreducible polynomial found");
}

FieldContext::FieldContext(int n, std::optional<std::uint64_t> modulus) : n_(n) {
  if (n < 3 || n > kMaxDegree || n % 2 == 0) {
    throw std::invalid_argument("field degree n must be odd with 3 <= n <= " +
                                std::to_string(kMaxDegree) + ", got " + std::to_string(n));
  }
  modulus_ = modulus ? *modulus : least_irreducible(n);
  if (poly_degree(modulus_) != n || !is_irreducible(modulus_)) {
    throw std::invalid_argument("modulus " + std::to_string(modulus_) +
                                " is not an irreducible polynomial of degree " + std::to_string(n));
  }
  if (n <= 16) {
    trace_table_.resize(order());
    for (std::uint32_t a = 0; a < order(); ++a)
      trace_table_[a] = static_cast<std::uint8_t>(compute_trace({a}));
  }
}

FieldElement FieldContext::mul(FieldElement a, FieldElement b) const {
  std::uint64_t acc = 0;
  std::uint64_t x = a.bits;
  for (std::uint32_t y = b.bits; y != 0; y >>= 1, x <<= 1) {
    if (y & 1) acc ^= x;
  }
  return {static_cast<std::uint32_t>(poly_mod(acc, modulus_))};
}

FieldElement FieldContext::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = kOne;
  for (FieldElement base = a; e != 0; e >>= 1, base = square(base)) {
    if (e & 1) result = mul(result, base);
  }
  return result;
}

FieldElement FieldContext::inv(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("division by zero in GF(2^n)");
  return pow(a, (std::uint64_t{1} << n_) - 2);
}

FieldElement FieldContext::frobenius(FieldElement a, int j) const {
  for (int i = 0; i < j % n_; ++i) a = square(a);
  return a;
}

int FieldContext::compute_trace(FieldElement a) const {
  FieldElement sum = kZero;
  FieldElement power = a;
  for (int j = 0; j < n_; ++j, power = square(power)) sum += power;
  // The trace lies in the prime field.
  if (sum.bits > 1) throw std::logic_error("trace left the prime field; modulus is invalid");
  return static_cast<int>(sum.bits);
}

int FieldContext::trace(FieldElement a) const {
  return trace_table_.empty() ? compute_trace(a) : trace_table_[a.bits];
}

FieldElement FieldContext::theta(FieldElement a) const {
  FieldElement sum = kZero;
  FieldElement power = a;
  for (int j = 0; j < n_; ++j, power = square(power)) {
    if (j % 2 == 0) sum += power;
  }
  return sum;
}

int FieldContext::hyperplane_quotient(FieldElement u, FieldElement v) const {
  if (u.is_zero()) throw std::domain_error("hyperplane_quotient: u must be nonzero");
  return trace(mul(inv(cube(u)), v));
}

int FieldContext::symplectic_form(FieldElement a, FieldElement b) const {
  return trace(mul(a, square(b)) + mul(square(a), b));
}

SymplecticBasis symplectic_basis(const FieldContext& ctx) {
  std::vector<FieldElement> pool;
  for (std::uint32_t a = 0; a < ctx.order(); ++a) {
    if (ctx.trace({a}) == 0) pool.push_back({a});
  }
  SymplecticBasis basis;
  for (int step = 0; step < ctx.half(); ++step) {
    FieldElement x = kZero;
    for (auto w : pool) {
      if (!w.is_zero()) {
        x = w;
        break;
      }
    }
    std::optional<FieldElement> y;
    for (auto w : pool) {
      if (ctx.trace(ctx.mul(x, w)) == 1) {
        y = w;
        break;
      }
    }
    if (x.is_zero() || !y) throw std::logic_error("trace form degenerate on the trace-zero subspace");
    basis.x.push_back(x);
    basis.y.push_back(*y);
    std::vector<FieldElement> rest;
    for (auto w : pool) {
      if (ctx.trace(ctx.mul(w, x)) == 0 && ctx.trace(ctx.mul(w, *y)) == 0) rest.push_back(w);
    }
    pool = std::move(rest);
  }
  return basis;
}

bool is_symplectic_basis(const FieldContext& ctx, const SymplecticBasis& basis) {
  auto k = static_cast<std::size_t>(ctx.half());
  if (basis.x.size() != k || basis.y.size() != k) return false;
  for (std::size_t s = 0; s < k; ++s) {
    if (ctx.trace(basis.x[s]) != 0 || ctx.trace(basis.y[s]) != 0) return false;
    for (std::size_t t = 0; t < k; ++t) {
      if (ctx.trace(ctx.mul(basis.x[s], basis.x[t])) != 0) return false;
      if (ctx.trace(ctx.mul(basis.y[s], basis.y[t])) != 0) return false;
      if (ctx.trace(ctx.mul(basis.x[s], basis.y[t])) != (s == t ? 1 : 0)) return false;
    }
  }
  return true;
}

bool is_self_dual_normal(const FieldContext& ctx, FieldElement z) {
  std::vector<FieldElement> conj;
  for (int j = 0; j < ctx.degree(); ++j) conj.push_back(ctx.frobenius(z, j));
  for (std::size_t i = 0; i < conj.size(); ++i)
    for (std::size_t j = 0; j < conj.size(); ++j)
      if (ctx.trace(ctx.mul(conj[i], conj[j])) != (i == j ? 1 : 0)) return false;
  return true;
}

FieldElement self_dual_normal_basis(const FieldContext& ctx) {
  for (std::uint32_t a = 1; a < ctx.order(); ++a) {
    if (is_self_dual_normal(ctx, {a})) return {a};
  }
  throw std::logic_error("no self-dual normal basis generator found (implementation bug)");
}

SymplecticBasis symplectic_from_normal_basis(const FieldContext& ctx, FieldElement z) {
  const int n = ctx.degree();
  auto zj = [&](int j) { return ctx.frobenius(z, j); };
  SymplecticBasis basis;
  for (int s = 0; s < ctx.half(); ++s) basis.x.push_back(zj(2 * s) + zj(2 * s + 1));
  for (int t = 0; t < ctx.half(); ++t) {
    FieldElement y = zj(2 * t);
    for (int j = 2 * t + 2; j <= n - 1; ++j) y += zj(j);
    basis.y.push_back(y);
  }
  return basis;
}

}  // namespace linepack::gf2n
