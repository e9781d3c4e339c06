#pragma once

// Exact complex character table of the Suzuki 2-group F x_B F, B(a,b) = a b^2.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "linepack/bgroup.hpp"
#include "linepack/exact.hpp"
#include "linepack/heis.hpp"

namespace linepack::chartab {

using bgroup::GroupContext;
using bgroup::GroupElement;
using gf2n::FieldElement;

enum class CharacterKind { linear, nonlinear };

/// Linear characters carry parameter c (lambda_c(x, y) = (-1)^tr(cx), sign +1).
/// Nonlinear ones carry gamma and a sign; sign +1 is the hyperdifference set D.
struct CharacterLabel {
  CharacterKind kind = CharacterKind::linear;
  FieldElement parameter;
  int sign = 1;
};

struct Character {
  CharacterLabel label;
  std::int64_t degree = 1;
  std::vector<GaussianScaled> values;  // indexed by conjugacy class
};

/// Group-agnostic view of a character table. Class 0 must be the identity.
struct ClassFunctionTable {
  std::uint64_t group_order = 0;
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::int64_t> degrees;
  std::vector<std::vector<GaussianScaled>> values;  // [character][class]
};

class CharacterTable {
 public:
  CharacterTable(const GroupContext& group, std::vector<Character> characters);

  const GroupContext& group() const { return *group_; }
  const std::vector<Character>& characters() const { return characters_; }
  std::size_t size() const { return characters_.size(); }
  /// Indices of the sign +1 nonlinear characters, gamma ascending.
  const std::vector<std::size_t>& d_set() const { return d_set_; }
  std::size_t conjugate_of(std::size_t chi) const { return conjugate_[chi]; }
  static constexpr std::size_t kTrivial = 0;

  const GaussianScaled& value(std::size_t chi, GroupElement g) const {
    return characters_[chi].values[group_->class_of(g)];
  }

  ClassFunctionTable as_class_functions() const;

 private:
  const GroupContext* group_;
  std::vector<Character> characters_;
  std::vector<std::size_t> d_set_;
  std::vector<std::size_t> conjugate_;
};

std::vector<Character> linear_characters(const GroupContext& group);

/// Both nonlinear families from the closed form; the sign +1 family is
/// cross-checked class by class against traces of pi o psi_{gamma^-1}.
/// Throws std::logic_error on any disagreement.
std::vector<Character> nonlinear_characters(const GroupContext& group, const heis::RepContext& rep);

struct OrthogonalityReport {
  bool rows = false;
  bool columns = false;
  bool degrees = false;  // sum of d^2 equals |G|
  bool square = false;
  std::string first_failure;
  bool ok() const { return rows && columns && degrees && square; }
};

OrthogonalityReport check_orthogonality(const ClassFunctionTable& table);

/// Linear characters followed by both nonlinear families, checked only
/// against the representation traces.
CharacterTable assemble_table(const GroupContext& group, const heis::RepContext& rep);

/// Assembles and validates the table. Throws std::logic_error if any
/// orthogonality relation fails.
CharacterTable full_table(const GroupContext& group, const heis::RepContext& rep);

/// sum_{chi in subset} d_chi chi(C) for every class C.
std::vector<GaussianScaled> weighted_class_sums(const CharacterTable& table,
                                                const std::vector<std::size_t>& subset);

nlohmann::json to_json(const CharacterTable& table, const OrthogonalityReport& report);

}  // namespace linepack::chartab
