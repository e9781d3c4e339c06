#pragma once

// B-product groups U x_B V over GF(2^n); the shipped form is the Suzuki
// 2-group law B(a, b) = a b^2.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "linepack/gf2n.hpp"

namespace linepack::bgroup {

using gf2n::FieldContext;
using gf2n::FieldElement;

struct GroupElement {
  FieldElement x;
  FieldElement y;
  constexpr auto operator<=>(const GroupElement&) const = default;
};

/// F_2-bilinear map U x U -> V.
using BilinearForm = std::function<FieldElement(const FieldContext&, FieldElement, FieldElement)>;

/// B(a, b) = a b^2.
FieldElement suzuki_form(const FieldContext& field, FieldElement a, FieldElement b);

struct ConjugacyClass {
  GroupElement representative;
  std::vector<GroupElement> members;  // sorted
  std::size_t size() const { return members.size(); }
};

using Subgroup = std::vector<GroupElement>;  // sorted

/// Elements are enumerated lexicographically on (x.bits, y.bits); index(g) =
/// x.bits * 2^n + y.bits. Classes are ordered by representative, which is the
/// smallest member.
class GroupContext {
 public:
  explicit GroupContext(FieldContext field, BilinearForm form = suzuki_form);

  const FieldContext& field() const { return field_; }
  std::uint64_t order() const { return std::uint64_t{field_.order()} * field_.order(); }

  FieldElement form(FieldElement a, FieldElement b) const { return form_(field_, a, b); }
  /// B(a, b) - B(b, a).
  FieldElement alternating(FieldElement a, FieldElement b) const { return form(a, b) + form(b, a); }

  GroupElement mul(GroupElement a, GroupElement b) const;
  GroupElement inv(GroupElement a) const;
  GroupElement identity() const { return {}; }
  GroupElement commutator(GroupElement a, GroupElement b) const;

  std::size_t index(GroupElement g) const { return std::size_t{g.x.bits} * field_.order() + g.y.bits; }
  GroupElement element(std::size_t i) const;

  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::size_t class_of(GroupElement g) const { return class_index_[index(g)]; }
  /// Index of the identity class (always 0).
  static constexpr std::size_t kIdentityClass = 0;

 private:
  void build_classes();

  FieldContext field_;
  BilinearForm form_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::uint32_t> class_index_;
};

/// Classes by brute-force conjugation sweep; for cross-checking small groups.
std::vector<ConjugacyClass> brute_force_classes(const GroupContext& group);

/// (Z(G), [G, G]) from the bilinear structure.
std::pair<Subgroup, Subgroup> center_and_commutator(const GroupContext& group);
/// Same, by exhaustive sweeps over all pairs. O(|G|^2).
std::pair<Subgroup, Subgroup> brute_force_center_and_commutator(const GroupContext& group);

/// Element (x, eps) of the quotient G_gamma = F x_{q o B} F_2.
struct QuotientElement {
  FieldElement x;
  int eps = 0;
  constexpr bool operator==(const QuotientElement&) const = default;
};

/// phi_gamma(x, y) = (x, tr(gamma^-3 y)). Throws std::domain_error if gamma = 0.
QuotientElement epi_phi(const GroupContext& group, FieldElement gamma, GroupElement g);
/// (x, e)(y, d) = (x + y, e + d + tr(gamma^-3 x y^2)).
QuotientElement quotient_mul(const GroupContext& group, FieldElement gamma, QuotientElement a,
                             QuotientElement b);
/// psi_gamma(x, y) = (gamma x, gamma^3 y). Throws std::domain_error if gamma = 0.
GroupElement aut_psi(const GroupContext& group, FieldElement gamma, GroupElement g);

}  // namespace linepack::bgroup
