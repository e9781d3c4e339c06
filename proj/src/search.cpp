#include "linepack/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace linepack::search {

namespace {

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

bool every_group_abelian(std::int64_t n) {
  const auto f = factor(n);
  for (const auto& [p, a] : f) {
    if (a >= 3) return false;
    for (const auto& [q, b] : f) {
      std::int64_t power = 1;
      for (int i = 1; i <= a; ++i) {
        power *= p;
        if ((power - 1) % q == 0) return false;
      }
    }
  }
  return true;
}

std::vector<SearchTuple> enumerate_tuples(std::int64_t max_order, EnumerateOptions options) {
  if (max_order < 2) throw std::invalid_argument("max order must be at least 2");
  std::vector<SearchTuple> out;
  for (std::int64_t n = 2; n <= max_order; ++n) {
    if (options.require_nonabelian_order && every_group_abelian(n)) continue;
    for (std::int64_t l = 2; l * l < n; ++l) {
      if (n % l) continue;
      for (std::int64_t k = 1; k * l * l < n; ++k) {
        const std::int64_t m = k * l * l;
        if ((m * (m - 1)) % (n - 1)) continue;
        SearchTuple t{n, k, l, m};
        t.integrality = true;
        out.push_back(t);
      }
    }
  }
  return out;
}

ClassSizeVerdict conjugacy_size_filter(const SearchTuple& t, const std::vector<std::uint64_t>& sizes,
                                       std::uint64_t index) {
  const std::uint64_t total = std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0});
  if (sizes.empty() || sizes[0] != 1 || total != static_cast<std::uint64_t>(t.n))
    throw std::invalid_argument("class sizes must start with the identity class and sum to n");
  if (index == 0 || static_cast<std::uint64_t>(t.n) % index)
    throw std::invalid_argument("commutator index must divide n");
  ClassSizeVerdict v;
  const Rational n(t.n);
  const Rational m(t.m);
  v.bound = Rational(static_cast<std::int64_t>(index)) + m / Rational(t.l * t.l * t.k) * (n - m) / (n - 1);
  const std::uint64_t derived = static_cast<std::uint64_t>(t.n) / index;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const bool ok = n / Rational(static_cast<std::int64_t>(sizes[i])) >= v.bound;
    if (!ok) v.inequality = false;
    if (sizes[i] >= derived) v.below_commutator = false;
    if ((!ok || sizes[i] >= derived) && !v.failing_class) v.failing_class = i;
  }
  v.half_nonlinear = sizes.size() >= 2 * index;
  return v;
}

namespace {

BigInt squarefree_part(BigInt v, BigInt& square_root_of_rest) {
  square_root_of_rest = 1;
  BigInt free = 1;
  for (BigInt p = 2; p * p <= v; ++p) {
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square_root_of_rest *= p;
    if (e % 2) free *= p;
  }
  return free * v;
}

/// r = a^2 s with s squarefree: returns (a, s).
std::pair<Rational, BigInt> reduce_sqrt(const Rational& r) {
  if (r < 0) throw std::invalid_argument("negative radicand");
  if (r == 0) return {Rational(0), BigInt(1)};
  const BigInt p = boost::multiprecision::numerator(r);
  const BigInt q = boost::multiprecision::denominator(r);
  // sqrt(p/q) = sqrt(p q) / q
  BigInt outside;
  const BigInt s = squarefree_part(p * q, outside);
  return {Rational(outside) / Rational(q), s};
}

}  // namespace

int compare_sqrt_sum(const std::vector<Rational>& radicands, const Rational& rhs) {
  std::map<BigInt, Rational> terms;
  for (const auto& r : radicands) {
    auto [a, s] = reduce_sqrt(r);
    if (a != 0) terms[s] += a;
  }
  {
    auto [b, t] = reduce_sqrt(rhs);
    if (b != 0) terms[t] -= b;
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  if (terms.empty()) return 0;
  // Distinct squarefree radicals are linearly independent over Q, so the
  // difference is nonzero; refine rational enclosures until the sign shows.
  for (unsigned bits = 16;; bits *= 2) {
    const BigInt scale = BigInt(1) << (2 * bits);
    Rational lo = 0;
    Rational hi = 0;
    const Rational unit = Rational(1) / Rational(BigInt(1) << bits);
    for (const auto& [s, coeff] : terms) {
      const BigInt root = boost::multiprecision::sqrt(BigInt(s * scale));
      const Rational down = Rational(root) * unit;
      const Rational up = down + unit;
      if (coeff > 0) {
        lo += coeff * down;
        hi += coeff * up;
      } else {
        lo += coeff * up;
        hi += coeff * down;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
}

CharSumVerdict character_sum_filter(const SearchTuple& t, const chartab::ClassFunctionTable& table) {
  if (table.group_order != static_cast<std::uint64_t>(t.n))
    throw std::invalid_argument("character table order differs from the tuple's n");
  if (table.values.size() != table.degrees.size() || table.values.empty())
    throw std::invalid_argument("malformed character table");
  CharSumVerdict v;
  std::vector<std::size_t> irr_l;
  for (std::size_t i = 0; i < table.degrees.size(); ++i)
    if (table.degrees[i] == t.l) irr_l.push_back(i);
  v.enough_characters = static_cast<std::int64_t>(irr_l.size()) >= t.k;

  const Rational n(t.n);
  const Rational m(t.m);
  const Rational sq_bound = (n - m) / (n - 1);
  const Rational abs_radicand = Rational(t.k) * sq_bound;
  for (std::size_t c = 1; c < table.class_sizes.size(); ++c) {
    Rational sum_sq = 0;
    std::vector<Rational> norms;
    for (auto i : irr_l) {
      const Rational norm = table.values[i][c].norm().to_rational().re;
      sum_sq += norm;
      norms.push_back(norm);
    }
    const bool sq_ok = sum_sq >= sq_bound;
    const int cmp = compare_sqrt_sum(norms, abs_radicand);
    if (cmp == 0) v.equality_seen = true;
    if (!sq_ok) v.squared = false;
    if (cmp < 0) v.absolute = false;
    if ((!sq_ok || cmp < 0) && !v.failing_class) v.failing_class = c;
  }
  return v;
}

namespace {

const char* verdict(const std::optional<bool>& v) {
  if (!v) return "";
  return *v ? "pass" : "fail";
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<SearchTuple>& tuples) {
  os << "n,k,l,m,lambda,verdict_integrality,verdict_classes,verdict_chars\n";
  for (const auto& t : tuples)
    os << t.n << ',' << t.k << ',' << t.l << ',' << t.m << ',' << t.lambda() << ',' << verdict(t.integrality)
       << ',' << verdict(t.classes) << ',' << verdict(t.chars) << '\n';
}

}  // namespace linepack::search
