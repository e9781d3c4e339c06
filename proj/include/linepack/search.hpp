#pragma once

// Parameter search for constant-degree hyperdifference sets in group
// schemes: integrality enumeration plus class-size and character-sum filters.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linepack/chartab.hpp"
#include "linepack/exact.hpp"

namespace linepack::search {

struct SearchTuple {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::int64_t m = 0;
  std::optional<bool> integrality;
  std::optional<bool> classes;
  std::optional<bool> chars;

  /// m (m - 1) / (n - 1); exact by construction.
  std::int64_t lambda() const { return m * (m - 1) / (n - 1); }
  bool same_parameters(const SearchTuple& o) const { return n == o.n && k == o.k && l == o.l && m == o.m; }
};

struct EnumerateOptions {
  /// Skip orders n for which every group of order n is abelian.
  bool require_nonabelian_order = false;
};

/// All (n, k, l, m) with n <= max_order, l >= 2, l | n, m = k l^2 < n and
/// (n - 1) | m (m - 1), sorted by (n, l, k). Throws std::invalid_argument if
/// max_order < 2.
std::vector<SearchTuple> enumerate_tuples(std::int64_t max_order, EnumerateOptions options = {});

/// True iff every group of order n is abelian (n cube-free and p^i != 1 mod q
/// for all primes p^a || n, q | n, 1 <= i <= a).
bool every_group_abelian(std::int64_t n);

struct ClassSizeVerdict {
  bool inequality = true;       // n/|C_i| >= index + (m/(l^2 k)) (n-m)/(n-1) for i >= 1
  bool below_commutator = true; // |C_i| < |[G,G]| for i >= 1
  bool half_nonlinear = true;   // #classes >= 2 * index
  std::optional<std::size_t> failing_class;
  Rational bound;               // right-hand side of the inequality
  bool pass() const { return inequality && below_commutator && half_nonlinear; }
};

/// class_sizes[0] must be the identity class; commutator_index = |G : [G,G]|.
/// Throws std::invalid_argument if the sizes do not sum to n.
ClassSizeVerdict conjugacy_size_filter(const SearchTuple& t, const std::vector<std::uint64_t>& class_sizes,
                                       std::uint64_t commutator_index);

struct CharSumVerdict {
  bool enough_characters = false;  // at least k characters of degree l
  bool squared = true;             // sum_{Irr_l} |chi(g)|^2 >= (n-m)/(n-1)
  bool absolute = true;            // sum_{Irr_l} |chi(g)| >= sqrt(k (n-m)/(n-1))
  bool equality_seen = false;      // the absolute test held with equality somewhere
  std::optional<std::size_t> failing_class;
  bool pass() const { return enough_characters && squared && absolute; }
};

/// Throws std::invalid_argument if the table's group order differs from t.n.
CharSumVerdict character_sum_filter(const SearchTuple& t, const chartab::ClassFunctionTable& table);

/// sign(sum_i sqrt(a_i) - sqrt(b)) for nonnegative rationals, decided exactly.
int compare_sqrt_sum(const std::vector<Rational>& radicands, const Rational& rhs_radicand);

void write_csv(std::ostream& os, const std::vector<SearchTuple>& tuples);

}  // namespace linepack::search
