#include "linepack/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace linepack::scheme {

namespace {

std::int64_t to_int64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

QiMatrix all_ones_over(std::size_t n, std::int64_t den) {
  ZiMatrix ones(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) ones(r, c) = 1;
  return {std::move(ones), den};
}

QiMatrix scaled_by(const QiMatrix& m, const Rational& s) {
  return m.scaled(to_int64(boost::multiprecision::numerator(s)), to_int64(boost::multiprecision::denominator(s)));
}

/// relation(r, c) = i iff A_i(r, c) = 1; throws if the matrices are not a 0/1 partition.
std::vector<std::uint32_t> relation_index(const SchemeDescriptor& s, std::string& failure) {
  const std::size_t n = s.points;
  constexpr auto kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> rel(n * n, kNone);
  for (std::size_t i = 0; i < s.adjacency.size(); ++i) {
    const auto& a = s.adjacency[i];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const GaussInt v = a(r, c);
        if (v.is_zero()) continue;
        if (v != GaussInt(1) || rel[r * n + c] != kNone) {
          failure = "adjacency matrices are not a 0/1 partition at (" + std::to_string(r) + "," +
                    std::to_string(c) + ")";
          return {};
        }
        rel[r * n + c] = static_cast<std::uint32_t>(i);
      }
  }
  if (std::find(rel.begin(), rel.end(), kNone) != rel.end()) {
    failure = "adjacency matrices do not cover every pair";
    return {};
  }
  return rel;
}

void fail(bool& flag, std::string& first, const std::string& what) {
  flag = false;
  if (first.empty()) first = what;
}

}  // namespace

AxiomReport verify_axioms(const SchemeDescriptor& s, unsigned threads) {
  AxiomReport rep;
  const std::size_t n = s.points;
  const std::size_t d = s.adjacency.size();
  if (d == 0 || s.idempotents.size() != d) {
    rep.first_failure = "relation and idempotent counts differ";
    return rep;
  }
  const auto rel = relation_index(s, rep.first_failure);
  rep.partition = !rel.empty();
  if (!rep.partition) return rep;

  rep.identity = s.adjacency[0] == ZiMatrix::identity(n);
  if (!rep.identity) fail(rep.identity, rep.first_failure, "A_0 is not the identity");

  rep.transpose_closed = true;
  for (std::size_t i = 0; i < d; ++i) {
    const ZiMatrix t = s.adjacency[i].transpose();
    if (std::none_of(s.adjacency.begin(), s.adjacency.end(), [&](const ZiMatrix& a) { return a == t; }))
      fail(rep.transpose_closed, rep.first_failure, "transpose of A_" + std::to_string(i) + " is not a relation");
  }

  // A representative position for every relation.
  std::vector<std::size_t> witness(d, 0);
  for (std::size_t p = n * n; p-- > 0;) witness[rel[p]] = p;

  std::vector<std::vector<GaussInt>> p(d * d, std::vector<GaussInt>(d));
  std::vector<char> closed(d * d, 1);
  parallel_for(0, d * d, threads, [&](std::size_t ij) {
    const std::size_t i = ij / d;
    const std::size_t j = ij % d;
    const ZiMatrix prod = multiply(s.adjacency[i], s.adjacency[j]);
    for (std::size_t k = 0; k < d; ++k) {
      const GaussInt coeff = prod.data()[witness[k]];
      p[ij][k] = coeff;
      if (coeff.im != 0 || coeff.re < 0) closed[ij] = 0;
    }
    for (std::size_t q = 0; q < n * n && closed[ij]; ++q)
      if (prod.data()[q] != p[ij][rel[q]]) closed[ij] = 0;
  });
  rep.product_closed = true;
  rep.commutative = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (!closed[i * d + j])
        fail(rep.product_closed, rep.first_failure,
             "A_" + std::to_string(i) + " A_" + std::to_string(j) + " leaves the adjacency algebra");
      if (p[i * d + j] != p[j * d + i])
        fail(rep.commutative, rep.first_failure,
             "A_" + std::to_string(i) + " and A_" + std::to_string(j) + " do not commute");
    }

  rep.idempotent = true;
  rep.orthogonal = true;
  std::vector<char> idem(d, 1);
  std::vector<char> orth(d * d, 1);
  parallel_for(0, d * d, threads, [&](std::size_t ij) {
    const std::size_t i = ij / d;
    const std::size_t j = ij % d;
    const QiMatrix prod = multiply(s.idempotents[i], s.idempotents[j]);
    if (i == j)
      idem[i] = prod == s.idempotents[i];
    else
      orth[ij] = prod.is_zero();
  });
  for (std::size_t i = 0; i < d; ++i) {
    if (!idem[i]) fail(rep.idempotent, rep.first_failure, "E_" + std::to_string(i) + " is not idempotent");
    for (std::size_t j = 0; j < d; ++j)
      if (!orth[i * d + j])
        fail(rep.orthogonal, rep.first_failure,
             "E_" + std::to_string(i) + " E_" + std::to_string(j) + " is nonzero");
  }

  QiMatrix total(n, n);
  for (const auto& e : s.idempotents) total = total + e;
  rep.resolution = total == QiMatrix::identity(n);
  if (!rep.resolution) fail(rep.resolution, rep.first_failure, "idempotents do not sum to I");

  rep.trivial_idempotent = s.idempotents[0] == all_ones_over(n, static_cast<std::int64_t>(n));
  if (!rep.trivial_idempotent) fail(rep.trivial_idempotent, rep.first_failure, "E_0 is not J/n");

  rep.in_adjacency_algebra = true;
  for (std::size_t j = 0; j < d; ++j) {
    const auto& num = s.idempotents[j].numerators().data();
    for (std::size_t q = 0; q < n * n; ++q)
      if (num[q] != num[witness[rel[q]]]) {
        fail(rep.in_adjacency_algebra, rep.first_failure,
             "E_" + std::to_string(j) + " is not constant on relation " + std::to_string(rel[q]));
        break;
      }
  }
  return rep;
}

namespace {

void fill_ranks_and_duals(SchemeDescriptor& s) {
  s.ranks.clear();
  s.dual.clear();
  for (const auto& e : s.idempotents) {
    const GaussRational t = e.trace();
    if (!t.is_real() || !is_integer(t.re)) throw ConsistencyError("idempotent trace is not an integer");
    s.ranks.push_back(to_int64(boost::multiprecision::numerator(t.re)));
  }
  for (const auto& e : s.idempotents) {
    const QiMatrix c = e.conj();
    auto it = std::find(s.idempotents.begin(), s.idempotents.end(), c);
    if (it == s.idempotents.end()) throw ConsistencyError("idempotents not closed under conjugation");
    s.dual.push_back(static_cast<std::size_t>(it - s.idempotents.begin()));
  }
}

}  // namespace

SchemeDescriptor group_scheme(const chartab::CharacterTable& table, unsigned threads) {
  const auto& group = table.group();
  const std::uint64_t order = group.order();
  if (order > kGroupSchemeMaxOrder)
    throw std::length_error("group scheme limited to groups of order " + std::to_string(kGroupSchemeMaxOrder));
  const std::size_t n = order;
  const std::size_t d = group.classes().size();

  SchemeDescriptor s;
  s.points = n;
  for (const auto& c : group.classes()) s.valencies.push_back(static_cast<std::int64_t>(c.size()));

  // quotient_class(g, h) = class of g^-1 h, which is conjugate to h g^-1.
  std::vector<std::uint32_t> cls(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    const auto ginv = group.inv(group.element(g));
    for (std::size_t h = 0; h < n; ++h)
      cls[g * n + h] = static_cast<std::uint32_t>(group.class_of(group.mul(ginv, group.element(h))));
  }

  s.adjacency.assign(d, ZiMatrix(n, n));
  for (std::size_t q = 0; q < n * n; ++q) s.adjacency[cls[q]](q / n, q % n) = 1;

  for (const auto& chi : table.characters()) {
    std::vector<GaussInt> scaled;
    for (const auto& v : chi.values) scaled.push_back((GaussianScaled(chi.degree) * v).to_gauss_int());
    ZiMatrix num(n, n);
    for (std::size_t q = 0; q < n * n; ++q) num(q / n, q % n) = scaled[cls[q]];
    s.idempotents.emplace_back(std::move(num), static_cast<std::int64_t>(n));
  }
  fill_ranks_and_duals(s);

  const auto report = verify_axioms(s, threads);
  if (!report.ok()) throw ConsistencyError("group scheme axiom failure: " + report.first_failure);
  return s;
}

QiMatrix gram_projector(const SchemeDescriptor& s, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw std::invalid_argument("empty index set");
  QiMatrix g(s.points, s.points);
  for (auto j : subset) {
    if (j >= s.idempotents.size()) throw std::out_of_range("idempotent index out of range");
    g = g + s.idempotents[j];
  }
  return g;
}

KreinTensor krein_parameters(const SchemeDescriptor& s, unsigned threads) {
  const std::size_t d = s.idempotents.size();
  const Rational n(static_cast<std::int64_t>(s.points));
  KreinTensor q(d);
  std::mutex error_lock;
  std::string error;
  parallel_for(0, d * d, threads, [&](std::size_t ij) {
    const std::size_t i = ij / d;
    const std::size_t j = ij % d;
    const QiMatrix h = s.idempotents[i].hadamard(s.idempotents[j]);
    QiMatrix rebuilt(s.points, s.points);
    std::vector<Rational> row(d);
    for (std::size_t k = 0; k < d; ++k) {
      const GaussRational t = trace_of_product(h, s.idempotents[k]);
      if (!t.is_real()) {
        std::lock_guard lock(error_lock);
        error = "complex Krein parameter";
        return;
      }
      row[k] = n * t.re / Rational(s.ranks[k]);
      if (row[k] != 0) rebuilt = rebuilt + scaled_by(s.idempotents[k], row[k] / n);
    }
    if (!(rebuilt == h)) {
      std::lock_guard lock(error_lock);
      error = "Hadamard product of E_" + std::to_string(i) + " and E_" + std::to_string(j) +
              " is outside the idempotent span";
      return;
    }
    for (std::size_t k = 0; k < d; ++k) q(i, j, k) = row[k];
  });
  if (!error.empty()) throw ConsistencyError(error);
  return q;
}

KreinReport check_krein(const SchemeDescriptor& s, const KreinTensor& q) {
  KreinReport rep;
  const std::size_t d = q.classes();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational mass = 0;
      for (std::size_t k = 0; k < d; ++k) {
        const auto& v = q(i, j, k);
        const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
        if (v < 0) fail(rep.nonnegative, rep.first_violation, "q" + at + " = " + to_string(v) + " < 0");
        if (v != q(j, i, k)) fail(rep.symmetric, rep.first_violation, "q" + at + " is not symmetric");
        mass += v * s.ranks[k];
      }
      if (mass != Rational(s.ranks[i] * s.ranks[j]))
        fail(rep.mass, rep.first_violation,
             "mass check fails for (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return rep;
}

KreinTensor krein_from_characters(const chartab::CharacterTable& table) {
  const auto& chars = table.characters();
  const auto& classes = table.group().classes();
  const std::size_t d = chars.size();
  int lowest = 0;
  for (const auto& c : chars)
    for (const auto& v : c.values)
      if (!v.is_zero()) lowest = std::min(lowest, v.log2_scale());
  const int shift = -lowest;
  std::vector<std::vector<GaussInt>> val(d);
  for (std::size_t a = 0; a < d; ++a)
    for (const auto& v : chars[a].values) val[a].push_back((v * GaussianScaled(1, 0, shift)).to_gauss_int());

  const Rational order(static_cast<std::int64_t>(table.group().order()));
  const Rational unit = pow2(3 * shift);
  KreinTensor q(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        GaussInt acc;
        for (std::size_t c = 0; c < classes.size(); ++c)
          acc += val[i][c] * val[j][c] * val[k][c].conj() * GaussInt(static_cast<std::int64_t>(classes[c].size()));
        if (acc.im != 0) throw ConsistencyError("complex Krein parameter from characters");
        q(i, j, k) = Rational(chars[i].degree * chars[j].degree) * Rational(acc.re) /
                     (Rational(chars[k].degree) * order * unit);
      }
  return q;
}

HyperdiffReport hyperdiff_check(const SchemeDescriptor& s, const KreinTensor& q,
                                const std::vector<std::size_t>& subset) {
  HyperdiffReport rep;
  rep.subset = subset;
  const QiMatrix g = gram_projector(s, subset);
  const std::size_t n = s.points;
  const std::size_t d = s.idempotents.size();
  for (auto j : subset) rep.m_d += s.ranks[j];

  // (a) off-diagonal moduli.
  const auto& num = g.numerators();
  std::optional<std::int64_t> modulus;
  bool flat_entries = true;
  for (std::size_t r = 0; r < n && flat_entries; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r == c) continue;
      const std::int64_t m = num(r, c).norm();
      if (!modulus) modulus = m;
      if (*modulus != m) {
        flat_entries = false;
        break;
      }
    }

  // (b) constancy of b_k = sum_{i,j in D} q_{i, dual j}^k.
  rep.b.assign(d, Rational(0));
  for (auto i : subset)
    for (auto j : subset)
      for (std::size_t k = 0; k < d; ++k) rep.b[k] += q(i, s.dual[j], k);
  bool flat_b = true;
  for (std::size_t k = 2; k < d; ++k)
    if (rep.b[k] != rep.b[1]) flat_b = false;

  if (flat_entries != flat_b)
    throw ConsistencyError("hyperdifference criteria disagree: off-diagonal test says " +
                           std::string(flat_entries ? "flat" : "not flat") + ", Krein test says " +
                           std::string(flat_b ? "flat" : "not flat"));
  rep.is_hyperdiff = flat_entries;
  if (rep.is_hyperdiff && modulus) {
    const Rational den(g.denominator());
    const Rational off = Rational(*modulus) / (den * den);
    const Rational nn(static_cast<std::int64_t>(n));
    const Rational diag = rep.m_d / nn;
    rep.off_diag_modulus_sq = off;
    rep.c1 = nn * off;
    rep.c2 = diag * diag - off;
    if (d > 1 && *rep.c2 != rep.b[1] / nn)
      throw ConsistencyError("C2 from the Gram diagonal differs from b_k / n");
  }
  return rep;
}

bool verify_hadamard_identity(const SchemeDescriptor& s, const HyperdiffReport& report) {
  if (!report.is_hyperdiff || !report.c1 || !report.c2) return false;
  const QiMatrix g = gram_projector(s, report.subset);
  const QiMatrix lhs = g.hadamard(g.conj());
  const QiMatrix rhs = scaled_by(s.idempotents[0], *report.c1) + scaled_by(QiMatrix::identity(s.points), *report.c2);
  return lhs == rhs;
}

namespace {

std::int64_t isqrt(std::int64_t v) {
  if (v < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

void validate_srg(const ZiMatrix& a, const SrgParameters& p) {
  const auto v = static_cast<std::size_t>(p.v);
  if (p.v < 2 || a.rows() != v || a.cols() != v) throw std::invalid_argument("adjacency size differs from v");
  if (p.k <= 0 || p.k >= p.v - 1) throw std::invalid_argument("k must satisfy 0 < k < v - 1");
  for (std::size_t r = 0; r < v; ++r) {
    std::int64_t degree = 0;
    for (std::size_t c = 0; c < v; ++c) {
      const GaussInt e = a(r, c);
      if (e != GaussInt(0) && e != GaussInt(1)) throw std::invalid_argument("adjacency entries must be 0 or 1");
      if (e != a(c, r)) throw std::invalid_argument("adjacency matrix is not symmetric");
      if (r == c && !e.is_zero()) throw std::invalid_argument("adjacency matrix has loops");
      degree += e.re;
    }
    if (degree != p.k) throw std::invalid_argument("vertex degree differs from k");
  }
  const ZiMatrix sq = multiply(a, a);
  for (std::size_t r = 0; r < v; ++r)
    for (std::size_t c = 0; c < v; ++c) {
      const std::int64_t expected = r == c ? p.k : (a(r, c).re ? p.lambda : p.mu);
      if (sq(r, c) != GaussInt(expected))
        throw std::invalid_argument("common-neighbour counts differ from lambda/mu at (" + std::to_string(r) +
                                    "," + std::to_string(c) + ")");
    }
}

}  // namespace

SrgResult srg_scheme(const ZiMatrix& adjacency, const SrgParameters& p) {
  validate_srg(adjacency, p);
  const std::int64_t diff = p.lambda - p.mu;
  const std::int64_t disc = diff * diff + 4 * (p.k - p.mu);
  const std::int64_t root = isqrt(disc);
  if (root < 0 || root * root != disc || (diff + root) % 2 != 0)
    throw UnsupportedParameters("eigenvalues are not integers (conference-graph case)");

  SrgResult out;
  out.params = p;
  out.eig_plus = (diff + root) / 2;
  out.eig_minus = (diff - root) / 2;
  const std::int64_t v = p.v;
  const auto n = static_cast<std::size_t>(v);

  ZiMatrix ones(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) ones(r, c) = 1;
  const ZiMatrix id = ZiMatrix::identity(n);
  const ZiMatrix complement = ones - id - adjacency;

  auto& s = out.scheme;
  s.points = n;
  s.adjacency = {id, adjacency, complement};
  s.valencies = {1, p.k, v - p.k - 1};

  const std::int64_t lp = out.eig_plus;
  const std::int64_t lm = out.eig_minus;
  const ZiMatrix e1 = id * GaussInt(lm - p.k - lm * v) + adjacency * GaussInt(v - p.k + lm) +
                      complement * GaussInt(lm - p.k);
  const QiMatrix e0 = all_ones_over(n, v);
  const QiMatrix e1q(e1, v * (lp - lm));
  s.idempotents = {e0, e1q, QiMatrix::identity(n) - e0 - e1q};
  fill_ranks_and_duals(s);

  const auto axioms = verify_axioms(s);
  if (!axioms.ok()) throw ConsistencyError("SRG scheme axiom failure: " + axioms.first_failure);

  const KreinTensor q = krein_parameters(s);
  const auto r1 = hyperdiff_check(s, q, {1});
  const auto r2 = hyperdiff_check(s, q, {2});
  const bool predicted = 2 * p.k - v == 2 * lm || 2 * p.k - v == 2 * lp;
  if (predicted != (r1.is_hyperdiff || r2.is_hyperdiff))
    throw ConsistencyError("eigenvalue criterion disagrees with the idempotent Gram test");
  if (r1.is_hyperdiff) {
    out.hyperdiff_index = 1;
    out.report = r1;
  } else if (r2.is_hyperdiff) {
    out.hyperdiff_index = 2;
    out.report = r2;
  } else {
    out.report = r1;
  }
  return out;
}

ZiMatrix lattice_graph(int q) {
  if (q < 2) throw std::invalid_argument("lattice graph needs q >= 2");
  const auto size = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);
  ZiMatrix a(size, size);
  for (std::size_t u = 0; u < size; ++u)
    for (std::size_t w = 0; w < size; ++w)
      if (u != w && (u / q == w / q || u % q == w % q)) a(u, w) = 1;
  return a;
}

ZiMatrix petersen_graph() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
  ZiMatrix m(10, 10);
  for (std::size_t u = 0; u < 10; ++u)
    for (std::size_t w = 0; w < 10; ++w) {
      const auto [a, b] = pairs[u];
      const auto [c, e] = pairs[w];
      if (a != c && a != e && b != c && b != e) m(u, w) = 1;
    }
  return m;
}

std::optional<ZiMatrix> builtin_srg(const SrgParameters& p) {
  if (p.v == 10 && p.k == 3 && p.lambda == 0 && p.mu == 1) return petersen_graph();
  const std::int64_t q = isqrt(p.v);
  if (q >= 2 && q * q == p.v && p.k == 2 * (q - 1) && p.lambda == q - 2 && p.mu == 2)
    return lattice_graph(static_cast<int>(q));
  return std::nullopt;
}

nlohmann::json summary_json(const SchemeDescriptor& s, const HyperdiffReport& r) {
  using nlohmann::json;
  json b = json::array();
  for (const auto& v : r.b) b.push_back(to_string(v));
  auto opt = [](const std::optional<Rational>& v) { return v ? json(to_string(*v)) : json(nullptr); };
  return {{"points", s.points},
          {"valencies", s.valencies},
          {"ranks", s.ranks},
          {"dual", s.dual},
          {"subset", r.subset},
          {"is_hyperdiff", r.is_hyperdiff},
          {"m_D", to_string(r.m_d)},
          {"b", b},
          {"off_diag_modulus_sq", opt(r.off_diag_modulus_sq)},
          {"C1", opt(r.c1)},
          {"C2", opt(r.c2)}};
}

}  // namespace linepack::scheme
