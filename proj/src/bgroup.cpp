#include "linepack/bgroup.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace linepack::bgroup {

FieldElement suzuki_form(const FieldContext& field, FieldElement a, FieldElement b) {
  return field.mul(a, field.square(b));
}

GroupContext::GroupContext(FieldContext field, BilinearForm form)
    : field_(std::move(field)), form_(std::move(form)) {
  if (!form_) throw std::invalid_argument("GroupContext: empty bilinear form");
  build_classes();
}

GroupElement GroupContext::mul(GroupElement a, GroupElement b) const {
  return {a.x + b.x, a.y + b.y + form(a.x, b.x)};
}

GroupElement GroupContext::inv(GroupElement a) const { return {a.x, a.y + form(a.x, a.x)}; }

GroupElement GroupContext::commutator(GroupElement a, GroupElement b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

GroupElement GroupContext::element(std::size_t i) const {
  const std::size_t q = field_.order();
  return {{static_cast<std::uint32_t>(i / q)}, {static_cast<std::uint32_t>(i % q)}};
}

namespace {

/// All elements of the F_2-span of `generators`, ascending.
std::vector<FieldElement> span(const std::vector<FieldElement>& generators) {
  std::vector<std::uint32_t> basis;
  for (auto g : generators) {
    std::uint32_t v = g.bits;
    for (auto b : basis) v = std::min(v, v ^ b);
    if (v != 0) basis.push_back(v);
  }
  std::vector<FieldElement> out{{0}};
  for (auto b : basis) {
    const std::size_t current = out.size();
    for (std::size_t i = 0; i < current; ++i) out.push_back({out[i].bits ^ b});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElement> commutator_range(const GroupContext& group, FieldElement u) {
  std::vector<FieldElement> images;
  for (int i = 0; i < group.field().degree(); ++i)
    images.push_back(group.alternating(u, {std::uint32_t{1} << i}));
  return span(images);
}

}  // namespace

void GroupContext::build_classes() {
  const std::uint32_t q = field_.order();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();
  class_index_.assign(order(), kUnassigned);
  for (std::uint32_t u = 0; u < q; ++u) {
    const auto range = commutator_range(*this, {u});
    for (std::uint32_t v = 0; v < q; ++v) {
      if (class_index_[index({{u}, {v}})] != kUnassigned) continue;
      ConjugacyClass cls;
      cls.representative = {{u}, {v}};
      for (auto s : range) cls.members.push_back({{u}, FieldElement{v} + s});
      std::sort(cls.members.begin(), cls.members.end());
      const auto id = static_cast<std::uint32_t>(classes_.size());
      for (const auto& m : cls.members) class_index_[index(m)] = id;
      classes_.push_back(std::move(cls));
    }
  }
}

std::vector<ConjugacyClass> brute_force_classes(const GroupContext& group) {
  std::vector<bool> seen(group.order(), false);
  std::vector<ConjugacyClass> out;
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (seen[i]) continue;
    const GroupElement g = group.element(i);
    std::set<GroupElement> members;
    for (std::size_t j = 0; j < group.order(); ++j) {
      const GroupElement h = group.element(j);
      members.insert(group.mul(group.mul(group.inv(h), g), h));
    }
    ConjugacyClass cls{g, {members.begin(), members.end()}};
    for (const auto& m : cls.members) seen[group.index(m)] = true;
    out.push_back(std::move(cls));
  }
  return out;
}

std::pair<Subgroup, Subgroup> center_and_commutator(const GroupContext& group) {
  const std::uint32_t q = group.field().order();
  Subgroup center;
  std::vector<FieldElement> commutator_gens;
  for (std::uint32_t u = 0; u < q; ++u) {
    const auto range = commutator_range(group, {u});
    if (range.size() == 1) {
      for (std::uint32_t v = 0; v < q; ++v) center.push_back({{u}, {v}});
    }
    commutator_gens.insert(commutator_gens.end(), range.begin(), range.end());
  }
  Subgroup derived;
  for (auto y : span(commutator_gens)) derived.push_back({gf2n::kZero, y});
  std::sort(center.begin(), center.end());
  return {center, derived};
}

std::pair<Subgroup, Subgroup> brute_force_center_and_commutator(const GroupContext& group) {
  const std::size_t size = group.order();
  Subgroup center;
  std::set<GroupElement> commutators;
  for (std::size_t i = 0; i < size; ++i) {
    const GroupElement a = group.element(i);
    bool central = true;
    for (std::size_t j = 0; j < size; ++j) {
      const GroupElement b = group.element(j);
      const GroupElement c = group.commutator(a, b);
      if (c != group.identity()) central = false;
      commutators.insert(c);
    }
    if (central) center.push_back(a);
  }
  // Close the commutator set under multiplication.
  std::set<GroupElement> closure = commutators;
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<GroupElement> current(closure.begin(), closure.end());
    for (const auto& a : current)
      for (const auto& b : current) grew |= closure.insert(group.mul(a, b)).second;
  }
  return {center, {closure.begin(), closure.end()}};
}

QuotientElement epi_phi(const GroupContext& group, FieldElement gamma, GroupElement g) {
  if (gamma.is_zero()) throw std::domain_error("epi_phi: gamma must be nonzero");
  return {g.x, group.field().hyperplane_quotient(gamma, g.y)};
}

QuotientElement quotient_mul(const GroupContext& group, FieldElement gamma, QuotientElement a,
                             QuotientElement b) {
  const auto& f = group.field();
  if (gamma.is_zero()) throw std::domain_error("quotient_mul: gamma must be nonzero");
  const int twist = f.trace(f.mul(f.inv(f.cube(gamma)), f.mul(a.x, f.square(b.x))));
  return {a.x + b.x, a.eps ^ b.eps ^ twist};
}

GroupElement aut_psi(const GroupContext& group, FieldElement gamma, GroupElement g) {
  if (gamma.is_zero()) throw std::domain_error("aut_psi: gamma must be nonzero");
  const auto& f = group.field();
  return {f.mul(gamma, g.x), f.mul(f.cube(gamma), g.y)};
}

}  // namespace linepack::bgroup
