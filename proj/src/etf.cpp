#include "linepack/etf.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace linepack::etf {

Construction::Construction(int n, std::optional<std::uint64_t> modulus)
    : group_(std::make_unique<bgroup::GroupContext>(gf2n::FieldContext(n, modulus))),
      rep_(std::make_unique<heis::RepContext>(*group_)) {}

std::int64_t Construction::m() const {
  const int n = this->n();
  return (std::int64_t{1} << (n - 1)) * ((std::int64_t{1} << n) - 1);
}

const chartab::CharacterTable& Construction::table() const {
  std::call_once(table_once_, [this] {
    // Full orthogonality costs O(classes^3); above n = 7 only the trace check runs.
    table_ = std::make_unique<chartab::CharacterTable>(n() <= 7 ? chartab::full_table(*group_, *rep_)
                                                                : chartab::assemble_table(*group_, *rep_));
  });
  return *table_;
}

SparseColumn frame_column(const Construction& c, GroupElement g) {
  const std::size_t dim = c.rep().dim();
  const std::size_t block = dim * dim;
  const std::uint32_t q = c.field().order();
  SparseColumn col;
  col.rows.reserve((q - 1) * dim);
  col.values.reserve((q - 1) * dim);
  for (std::uint32_t b = 0; b + 1 < q; ++b) {
    const auto m = c.rep().pi_twisted({b + 1}, g);
    for (std::size_t r = 0; r < dim; ++r) {
      col.rows.push_back(static_cast<std::uint32_t>(b * block + r * dim + m.column(r)));
      col.values.push_back(i_pow(m.phase(r)));
    }
  }
  return col;
}

ScaledFrame synthesize_frame(const Construction& c, unsigned threads) {
  if (c.n() > 7) throw std::length_error("dense frame synthesis is limited to n <= 7");
  const auto rows = static_cast<std::size_t>(c.m());
  const auto cols = static_cast<std::size_t>(c.num_vectors());
  ScaledFrame frame{ZiMatrix(rows, cols), c.k() - 2 * c.n()};
  parallel_for(0, cols, threads, [&](std::size_t j) {
    const auto col = frame_column(c, c.group().element(j));
    for (std::size_t i = 0; i < col.rows.size(); ++i) frame.entries(col.rows[i], j) = col.values[i];
  });
  return frame;
}

std::vector<SparseColumn> sparse_columns(const ZiMatrix& m) {
  std::vector<SparseColumn> cols(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const GaussInt v = m(r, c);
      if (v.is_zero()) continue;
      cols[c].rows.push_back(static_cast<std::uint32_t>(r));
      cols[c].values.push_back(v);
    }
  return cols;
}

namespace {

std::vector<SparseColumn> sparse_rows(const ZiMatrix& m) {
  std::vector<SparseColumn> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const GaussInt v = m(r, c);
      if (v.is_zero()) continue;
      rows[r].rows.push_back(static_cast<std::uint32_t>(c));
      rows[r].values.push_back(v);
    }
  return rows;
}

}  // namespace

GaussInt sparse_dot(const SparseColumn& a, const SparseColumn& b) {
  GaussInt acc;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.rows.size() && j < b.rows.size()) {
    if (a.rows[i] < b.rows[j]) {
      ++i;
    } else if (b.rows[j] < a.rows[i]) {
      ++j;
    } else {
      acc += a.values[i].conj() * b.values[j];
      ++i;
      ++j;
    }
  }
  return acc;
}

namespace {

/// Numerators scaled by 2^log2 into a QiMatrix.
QiMatrix with_scale(ZiMatrix num, int log2) {
  if (log2 <= 0) return {std::move(num), std::int64_t{1} << -log2};
  return {num * GaussInt(std::int64_t{1} << log2), 1};
}

}  // namespace

QiMatrix gram_from_frame(const ScaledFrame& frame, unsigned threads) {
  const auto cols = sparse_columns(frame.entries);
  const std::size_t n = cols.size();
  ZiMatrix num(n, n);
  parallel_for(0, n, threads, [&](std::size_t g) {
    for (std::size_t h = g; h < n; ++h) {
      const GaussInt v = sparse_dot(cols[g], cols[h]);
      num(g, h) = v;
      num(h, g) = v.conj();
    }
  });
  return with_scale(std::move(num), frame.log2_scale_sq);
}

namespace {

/// sum_{chi in D} d_chi chi(C) per class, as Gaussian integers.
std::vector<GaussInt> d_class_sums(const Construction& c) {
  const auto& table = c.table();
  std::vector<GaussInt> out;
  for (const auto& v : chartab::weighted_class_sums(table, table.d_set())) out.push_back(v.to_gauss_int());
  return out;
}

}  // namespace

QiMatrix gram_character(const Construction& c, unsigned threads) {
  const auto sums = d_class_sums(c);
  const auto& group = c.group();
  const std::size_t n = group.order();
  ZiMatrix num(n, n);
  parallel_for(0, n, threads, [&](std::size_t g) {
    const auto ginv = group.inv(group.element(g));
    for (std::size_t h = 0; h < n; ++h) num(g, h) = sums[group.class_of(group.mul(ginv, group.element(h)))];
  });
  return {std::move(num), static_cast<std::int64_t>(n)};
}

GaussianScaled gram_character_entry(const Construction& c, GroupElement g, GroupElement h) {
  const auto& table = c.table();
  const auto& group = c.group();
  const std::size_t cls = group.class_of(group.mul(group.inv(g), h));
  GaussianScaled acc;
  for (auto chi : table.d_set()) {
    const auto& ch = table.characters()[chi];
    acc = acc + GaussianScaled(ch.degree) * ch.values[cls];
  }
  return acc * GaussianScaled(1, 0, -2 * c.n());
}

GaussianScaled closed_form_raw(const gf2n::FieldContext& f, GroupElement row, GroupElement col) {
  const int n = f.degree();
  if (row == col) return {(std::int64_t{1} << n) - 1, 0, -(n + 1)};
  if (row.x == col.x) return {-1, 0, -(n + 1)};
  const auto u = row.x + col.x;
  const auto arg = f.mul(f.inv(f.cube(u)), row.y + col.y + f.cube(col.x) + f.mul(row.x, f.square(col.x)));
  return {0, f.trace(arg) ? -1 : 1, -(n + 1)};
}

GaussianScaled gram_closed_form(const gf2n::FieldContext& f, GroupElement g, GroupElement h) {
  return closed_form_raw(f, h, g);
}

QiMatrix gram_closed_form_matrix(const Construction& c, unsigned threads) {
  const auto& group = c.group();
  const std::size_t n = group.order();
  const int shift = c.n() + 1;
  ZiMatrix num(n, n);
  parallel_for(0, n, threads, [&](std::size_t g) {
    for (std::size_t h = 0; h < n; ++h) {
      const auto v = gram_closed_form(c.field(), group.element(g), group.element(h));
      num(g, h) = (v * GaussianScaled(1, 0, shift)).to_gauss_int();
    }
  });
  return {std::move(num), std::int64_t{1} << shift};
}

WelchBound welch_bound_sq(std::int64_t m, std::int64_t n) {
  if (m < 1 || m >= n) throw std::invalid_argument("Welch bound needs 1 <= m < N");
  const Rational mm(m);
  const Rational nn(n);
  return {(nn - mm) / (mm * (nn - 1)), mm * (nn - mm) / (nn * nn * (nn - 1))};
}

std::string to_string(Verdict v) { return v == Verdict::optimal ? "OPTIMAL" : "NOT_ETF"; }

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::frame: return "frame";
    case Provenance::character_sum: return "characterSum";
    default: return "closedForm";
  }
}

namespace {

std::string gauss_string(GaussInt num, std::int64_t den) {
  return linepack::to_string(GaussRational(Rational(num.re, den), Rational(num.im, den)));
}

void record(EtfCertificate& cert, std::string identity, std::size_t r, std::size_t c, std::string found,
            std::string expected) {
  if (!cert.first_violation)
    cert.first_violation = Violation{std::move(identity), r, c, std::move(found), std::move(expected)};
}

}  // namespace

EtfCertificate assess_gram(const QiMatrix& gram, bool parseval) {
  EtfCertificate cert;
  cert.parseval = parseval;
  const std::size_t n = gram.rows();
  if (gram.cols() != n) throw std::invalid_argument("Gram matrix must be square");
  cert.num_vectors = static_cast<std::int64_t>(n);
  const auto& num = gram.numerators();
  const std::int64_t den = gram.denominator();

  const GaussRational tr = gram.trace();
  if (tr.is_real() && boost::multiprecision::denominator(tr.re) == 1)
    cert.m = boost::multiprecision::numerator(tr.re).convert_to<std::int64_t>();
  else
    record(cert, "trace is not an integer", 0, 0, linepack::to_string(tr), "integer");

  cert.equal_norms = true;
  const GaussInt d0 = n ? num(0, 0) : GaussInt();
  cert.diagonal = Rational(d0.re, den);
  for (std::size_t i = 0; i < n; ++i)
    if (num(i, i) != d0 || d0.im != 0) {
      cert.equal_norms = false;
      record(cert, "constant diagonal", i, i, gauss_string(num(i, i), den), gauss_string(d0, den));
      break;
    }

  std::optional<std::int64_t> modulus;
  cert.equiangular = n > 1;
  for (std::size_t r = 0; r < n && cert.equiangular; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r == c) continue;
      const std::int64_t v = num(r, c).norm();
      if (!modulus) {
        modulus = v;
        continue;
      }
      if (v != *modulus) {
        cert.equiangular = false;
        record(cert, "constant off-diagonal modulus", r, c, linepack::to_string(Rational(v, den * den)),
               linepack::to_string(Rational(*modulus, den * den)));
        break;
      }
    }
  if (modulus && cert.equiangular) cert.off_diag_modulus_sq = Rational(*modulus, den) / den;

  if (cert.m >= 1 && cert.m < cert.num_vectors) {
    const auto w = welch_bound_sq(cert.m, cert.num_vectors);
    cert.welch_sq = w.parseval;
    cert.welch_unit_sq = w.unit_norm;
    cert.welch_equality = cert.off_diag_modulus_sq && *cert.off_diag_modulus_sq == w.parseval;
    if (cert.off_diag_modulus_sq && !cert.welch_equality)
      record(cert, "Welch equality", 0, 1, linepack::to_string(*cert.off_diag_modulus_sq),
             linepack::to_string(w.parseval));
  } else if (cert.m == cert.num_vectors) {
    cert.degenerate = true;
    record(cert, "degenerate orthonormal case (m = N, no off-diagonal angle)", 0, 0, std::to_string(cert.m),
           "m < " + std::to_string(cert.num_vectors));
  }
  const bool ok = cert.parseval && cert.equal_norms && cert.equiangular && cert.welch_equality && !cert.degenerate;
  cert.verdict = ok ? Verdict::optimal : Verdict::not_etf;
  return cert;
}

EtfCertificate verify_frame(const ScaledFrame& frame, unsigned threads) {
  const auto& e = frame.entries;
  const auto rows = sparse_rows(e);
  const std::size_t m = e.rows();
  // Parseval: E E^H = 2^(-log2_scale_sq) I.
  const Rational target = pow2(-frame.log2_scale_sq);
  std::vector<char> row_ok(m, 1);
  std::vector<std::pair<std::size_t, GaussInt>> bad(m);
  parallel_for(0, m, threads, [&](std::size_t r) {
    for (std::size_t s = r; s < m; ++s) {
      const GaussInt v = sparse_dot(rows[s], rows[r]);
      const bool good = r == s ? (v.im == 0 && Rational(v.re) == target) : v.is_zero();
      if (!good) {
        row_ok[r] = 0;
        bad[r] = {s, v};
        return;
      }
    }
  });
  bool parseval = true;
  std::optional<Violation> parseval_violation;
  for (std::size_t r = 0; r < m; ++r)
    if (!row_ok[r]) {
      parseval = false;
      const auto [s, v] = bad[r];
      parseval_violation = Violation{"Parseval (rows orthonormal)", r, s,
                                     linepack::to_string(GaussRational(v)),
                                     r == s ? linepack::to_string(target) : "0/1;0/1"};
      break;
    }

  auto cert = assess_gram(gram_from_frame(frame, threads), parseval);
  if (parseval_violation) cert.first_violation = parseval_violation;
  if (cert.m != static_cast<std::int64_t>(m) && parseval)
    record(cert, "frame rank", 0, 0, std::to_string(cert.m), std::to_string(m));
  cert.provenance = {Provenance::frame};
  return cert;
}

EtfCertificate verify_gram(const QiMatrix& gram, unsigned threads) {
  if (gram.rows() != gram.cols()) throw std::invalid_argument("Gram matrix must be square");
  const bool hermitian = gram == gram.adjoint();
  const bool idempotent = hermitian && multiply(gram, gram, threads) == gram;
  auto cert = assess_gram(gram, hermitian && idempotent);
  if (!hermitian)
    cert.first_violation = Violation{"Hermitian", 0, 0, "G != G^H", "G = G^H"};
  else if (!idempotent)
    cert.first_violation = Violation{"projection", 0, 0, "G^2 != G", "G^2 = G"};
  return cert;
}

AgreementReport compare_grams(const bgroup::GroupContext& group, const QiMatrix& a, const QiMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("Gram shapes differ");
  AgreementReport rep;
  const GaussInt sa(b.denominator());
  const GaussInt sb(a.denominator());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      ++rep.compared;
      if (a.numerators()(r, c) * sa != b.numerators()(r, c) * sb) {
        ++rep.mismatches;
        if (!rep.first)
          rep.first = Mismatch{group.element(r), group.element(c),
                               gauss_string(a.numerators()(r, c), a.denominator()) + " vs " +
                                   gauss_string(b.numerators()(r, c), b.denominator())};
      }
    }
  return rep;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::uint64_t num_vectors, std::uint64_t samples,
                                                              std::uint64_t seed) {
  if (num_vectors == 0) throw std::invalid_argument("no vectors to sample");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, num_vectors - 1);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(samples);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t g = pick(rng);
    const std::size_t h = pick(rng);
    out.emplace_back(g, h);
  }
  return out;
}

EtfCertificate verify_sampled(const Construction& c, std::uint64_t samples, std::uint64_t seed,
                              AgreementReport* agreement) {
  const auto& group = c.group();
  const auto sums = d_class_sums(c);
  const std::int64_t n_vec = c.num_vectors();
  const auto w = welch_bound_sq(c.m(), n_vec);
  const GaussianScaled diag((std::int64_t{1} << c.n()) - 1, 0, -(c.n() + 1));

  EtfCertificate cert;
  cert.m = c.m();
  cert.num_vectors = n_vec;
  cert.mode = "sample";
  cert.samples = samples;
  cert.seed = seed;
  cert.diagonal = diag.to_rational().re;
  cert.welch_sq = w.parseval;
  cert.welch_unit_sq = w.unit_norm;
  cert.provenance = {Provenance::frame, Provenance::character_sum, Provenance::closed_form};

  AgreementReport rep;
  bool norms = true;
  bool angles = true;
  for (const auto& [gi, hi] : sample_pairs(static_cast<std::uint64_t>(n_vec), samples, seed)) {
    const auto g = group.element(gi);
    const auto h = group.element(hi);
    const auto closed = gram_closed_form(c.field(), g, h);
    const auto chars = GaussianScaled::from(sums[group.class_of(group.mul(group.inv(g), h))], -2 * c.n());
    const auto framed =
        GaussianScaled::from(sparse_dot(frame_column(c, g), frame_column(c, h)), c.k() - 2 * c.n());
    ++rep.compared;
    if (closed != chars || chars != framed) {
      ++rep.mismatches;
      if (!rep.first) {
        std::ostringstream what;
        what << "closed-form " << closed << ", character-sum " << chars << ", frame " << framed;
        rep.first = Mismatch{g, h, what.str()};
        record(cert, "three-way Gram agreement", gi, hi, what.str(), "equal");
      }
    }
    if (gi == hi) {
      if (framed != diag) {
        norms = false;
        record(cert, "constant diagonal", gi, hi, linepack::to_string(framed.to_rational()),
               linepack::to_string(cert.diagonal));
      }
    } else if (framed.norm().to_rational().re != w.parseval) {
      angles = false;
      record(cert, "Welch equality", gi, hi, linepack::to_string(framed.norm().to_rational().re),
             linepack::to_string(w.parseval));
    }
  }
  cert.equal_norms = norms;
  cert.equiangular = angles;
  cert.welch_equality = angles;
  if (angles) cert.off_diag_modulus_sq = w.parseval;
  cert.agreement = {{"frame=characterSum=closedForm", rep.ok()}};
  cert.verdict = rep.ok() && norms && angles ? Verdict::optimal : Verdict::not_etf;
  if (agreement) *agreement = rep;
  return cert;
}

nlohmann::json to_json(const EtfCertificate& cert) {
  using nlohmann::json;
  auto opt = [](const std::optional<Rational>& v) { return v ? json(linepack::to_string(*v)) : json(nullptr); };
  json prov = json::array();
  for (auto p : cert.provenance) prov.push_back(to_string(p));
  json agree = json::object();
  for (const auto& [name, ok] : cert.agreement) agree[name] = ok;
  json out = {{"m", cert.m},
              {"numVectors", cert.num_vectors},
              {"mode", cert.mode},
              {"parseval", cert.mode == "sample" ? json(nullptr) : json(cert.parseval)},
              {"equalNorms", cert.equal_norms},
              {"equiangular", cert.equiangular},
              {"welchEquality", cert.welch_equality},
              {"degenerate", cert.degenerate},
              {"diagonalValue", linepack::to_string(cert.diagonal)},
              {"offDiagModulusSquared", opt(cert.off_diag_modulus_sq)},
              {"welchSquared", opt(cert.welch_sq)},
              {"welchUnitNormSquared", opt(cert.welch_unit_sq)},
              {"verdict", to_string(cert.verdict)},
              {"provenance", prov},
              {"agreement", agree}};
  if (cert.mode == "sample") {
    out["samples"] = cert.samples;
    out["seed"] = cert.seed;
  }
  if (cert.first_violation) {
    const auto& v = *cert.first_violation;
    out["firstViolation"] = {{"identity", v.identity},
                             {"row", v.row},
                             {"col", v.col},
                             {"found", v.found},
                             {"expected", v.expected}};
  }
  return out;
}

}  // namespace linepack::etf
