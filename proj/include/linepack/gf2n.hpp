#pragma once

// Arithmetic in GF(2^n), n odd, in a polynomial basis.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace linepack::gf2n {

/// Coefficient vector of a field element; bit j is the coefficient of x^j.
struct FieldElement {
  std::uint32_t bits = 0;

  constexpr FieldElement operator+(FieldElement o) const { return {bits ^ o.bits}; }
  constexpr FieldElement& operator+=(FieldElement o) {
    bits ^= o.bits;
    return *this;
  }
  constexpr bool is_zero() const { return bits == 0; }
  constexpr auto operator<=>(const FieldElement&) const = default;
};

inline constexpr FieldElement kZero{0};
inline constexpr FieldElement kOne{1};

bool is_irreducible(std::uint64_t poly);
/// Smallest irreducible polynomial of degree n by integer value.
std::uint64_t least_irreducible(int n);

class FieldContext {
 public:
  static constexpr int kMaxDegree = 25;

  /// Uses least_irreducible(n) unless a modulus is supplied. Throws
  /// std::invalid_argument for even or out-of-range n, or a modulus that is
  /// not an irreducible polynomial of degree n.
  explicit FieldContext(int n, std::optional<std::uint64_t> modulus = std::nullopt);

  int degree() const { return n_; }
  /// k with n = 2k + 1.
  int half() const { return n_ / 2; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint32_t order() const { return std::uint32_t{1} << n_; }
  bool contains(FieldElement a) const { return a.bits < order(); }

  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement square(FieldElement a) const { return mul(a, a); }
  FieldElement cube(FieldElement a) const { return mul(a, square(a)); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  /// a^(2^n - 2). Throws std::domain_error on zero.
  FieldElement inv(FieldElement a) const;
  /// a^(2^j), j >= 0.
  FieldElement frobenius(FieldElement a, int j) const;

  int trace(FieldElement a) const;
  /// Sum of a^(2^j) over even j in [0, n-1].
  FieldElement theta(FieldElement a) const;
  /// a^2 + a.
  FieldElement eta(FieldElement a) const { return square(a) + a; }
  /// tr(u^-3 v): 0 iff v lies in the hyperplane H_u = range of v -> u v^2 + u^2 v.
  int hyperplane_quotient(FieldElement u, FieldElement v) const;
  /// The alternating form tr(a b^2 + a^2 b).
  int symplectic_form(FieldElement a, FieldElement b) const;

 private:
  int compute_trace(FieldElement a) const;

  int n_;
  std::uint64_t modulus_;
  std::vector<std::uint8_t> trace_table_;  // filled when n <= 16
};

struct SymplecticBasis {
  std::vector<FieldElement> x;
  std::vector<FieldElement> y;
};

/// Symplectic Gram-Schmidt on the trace-zero subspace, picking the smallest
/// available element at each step. Deterministic.
SymplecticBasis symplectic_basis(const FieldContext& ctx);

/// Checks tr(x_s x_t) = tr(y_s y_t) = 0, tr(x_s y_t) = delta, and that every
/// vector has trace zero.
bool is_symplectic_basis(const FieldContext& ctx, const SymplecticBasis& basis);

/// Smallest z with tr(z^(2^i) z^(2^j)) = delta_ij. Throws std::logic_error if
/// the search is exhausted.
FieldElement self_dual_normal_basis(const FieldContext& ctx);
bool is_self_dual_normal(const FieldContext& ctx, FieldElement z);

/// x_s = z_2s + z_2s+1 and y_t = z_2t + sum_{j >= 2t+2} z_j where z_j = z^(2^j).
SymplecticBasis symplectic_from_normal_basis(const FieldContext& ctx, FieldElement z);

}  // namespace linepack::gf2n
