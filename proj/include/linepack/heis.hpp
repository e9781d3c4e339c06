#pragma once

// Heisenberg group over Z_2^k and the representation of the Suzuki 2-group
// onto its extension by iI.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linepack/bgroup.hpp"
#include "linepack/exact.hpp"
#include "linepack/gf2n.hpp"
#include "linepack/matrix.hpp"

namespace linepack::heis {

using bgroup::GroupContext;
using bgroup::GroupElement;
using gf2n::FieldElement;

/// Monomial matrix with entries in {0, 1, i, -1, -i}: row r holds
/// i^phase[r] in column perm[r] and zeros elsewhere.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  static MonomialMatrix identity(std::size_t dim);
  /// i^phase * I.
  static MonomialMatrix scalar(std::size_t dim, int phase);

  std::size_t dim() const { return perm_.size(); }
  std::uint32_t column(std::size_t row) const { return perm_[row]; }
  int phase(std::size_t row) const { return phase_[row]; }
  GaussInt entry(std::size_t r, std::size_t c) const;

  MonomialMatrix operator*(const MonomialMatrix& o) const;
  /// Multiplies every entry by i^phase.
  MonomialMatrix times_phase(int phase) const;
  MonomialMatrix inverse() const;
  GaussInt trace() const;
  ZiMatrix dense() const;

  bool operator==(const MonomialMatrix&) const = default;
  auto operator<=>(const MonomialMatrix&) const = default;

 private:
  friend MonomialMatrix translation(int, int);
  friend MonomialMatrix modulation(int, int);

  std::vector<std::uint32_t> perm_;
  std::vector<std::uint8_t> phase_;
};

/// (T_s f)(x) = f(x - e_s) on functions of Z_2^k.
MonomialMatrix translation(int k, int s);
/// (M_t f)(x) = (-1)^(x . e_t) f(x).
MonomialMatrix modulation(int k, int t);

struct HeisenbergGenerators {
  std::vector<MonomialMatrix> translations;
  std::vector<MonomialMatrix> modulations;
};

HeisenbergGenerators heis_generators(int k);

/// Order of the group generated by `generators`, by closure.
std::size_t generated_order(const std::vector<MonomialMatrix>& generators);

/// The representation pi : G -> H<iI> fixed by a symplectic basis of the
/// trace-zero subspace. Holds a reference to `group`, which must outlive it.
class RepContext {
 public:
  explicit RepContext(const GroupContext& group);
  RepContext(const GroupContext& group, gf2n::SymplecticBasis basis);

  const GroupContext& group() const { return group_; }
  int half() const { return k_; }
  std::size_t dim() const { return std::size_t{1} << k_; }

  const gf2n::SymplecticBasis& symplectic() const { return symplectic_; }
  FieldElement alpha(int s) const { return field_basis_[s]; }
  FieldElement beta(int t) const { return field_basis_[k_ + t]; }
  /// alpha_0..alpha_{k-1}, beta_0..beta_{k-1}, 1.
  const std::vector<FieldElement>& field_basis() const { return field_basis_; }
  /// Image of (field_basis()[i], 0).
  const MonomialMatrix& generator_image(std::size_t i) const { return generator_images_[i]; }

  /// Bit i set iff field_basis()[i] occurs in the expansion of x.
  std::uint32_t coordinates(FieldElement x) const { return coords_[x.bits]; }

  MonomialMatrix pi(GroupElement g) const;
  /// pi o psi_{gamma^-1}.
  MonomialMatrix pi_twisted(FieldElement gamma, GroupElement g) const;

 private:
  void build();

  const GroupContext& group_;
  int k_;
  gf2n::SymplecticBasis symplectic_;
  std::vector<FieldElement> field_basis_;
  std::vector<MonomialMatrix> generator_images_;
  std::vector<std::uint32_t> coords_;
  // pi(x, c_x) and c_x for the canonical product of generators reaching x.
  std::vector<MonomialMatrix> section_images_;
  std::vector<FieldElement> section_centers_;
};

/// One evaluator per gamma != 0, ascending: g -> pi(psi_{gamma^-1}(g)).
class RepFamily {
 public:
  explicit RepFamily(const RepContext& rep) : rep_(rep) {}
  std::size_t size() const { return rep_.group().field().order() - 1; }
  FieldElement gamma(std::size_t i) const { return {static_cast<std::uint32_t>(i + 1)}; }
  MonomialMatrix operator()(std::size_t i, GroupElement g) const {
    return rep_.pi_twisted(gamma(i), g);
  }

 private:
  const RepContext& rep_;
};

}  // namespace linepack::heis
