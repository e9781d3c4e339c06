#pragma once

// Frame synthesis for the Suzuki-group construction, three independent Gram
// evaluations, and exact Welch-bound certification.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "linepack/bgroup.hpp"
#include "linepack/chartab.hpp"
#include "linepack/exact.hpp"
#include "linepack/gf2n.hpp"
#include "linepack/heis.hpp"
#include "linepack/matrix.hpp"

namespace linepack::etf {

using bgroup::GroupElement;

/// Field, group, representation and (lazily) character table for one n.
class Construction {
 public:
  explicit Construction(int n, std::optional<std::uint64_t> modulus = std::nullopt);
  Construction(const Construction&) = delete;
  Construction& operator=(const Construction&) = delete;

  int n() const { return group_->field().degree(); }
  int k() const { return group_->field().half(); }
  const gf2n::FieldContext& field() const { return group_->field(); }
  const bgroup::GroupContext& group() const { return *group_; }
  const heis::RepContext& rep() const { return *rep_; }
  /// Frame dimension 2^(n-1) (2^n - 1).
  std::int64_t m() const;
  /// Number of frame vectors |G| = 2^(2n).
  std::int64_t num_vectors() const { return static_cast<std::int64_t>(group_->order()); }
  /// Built on first use; orthogonality is checked for n <= 7.
  const chartab::CharacterTable& table() const;

 private:
  std::unique_ptr<bgroup::GroupContext> group_;
  std::unique_ptr<heis::RepContext> rep_;
  mutable std::once_flag table_once_;
  mutable std::unique_ptr<chartab::CharacterTable> table_;
};

/// true matrix = entries * 2^(log2_scale_sq / 2)
struct ScaledFrame {
  ZiMatrix entries;
  int log2_scale_sq = 0;
};

/// Nonzero entries of one frame column, rows ascending.
struct SparseColumn {
  std::vector<std::uint32_t> rows;
  std::vector<GaussInt> values;
};

/// Column g: blocks pi_gamma(g) for gamma ascending, each flattened row-major.
SparseColumn frame_column(const Construction& c, GroupElement g);

/// Dense m x 2^(2n) frame with log2_scale_sq = k - 2n. Throws
/// std::length_error for n > 7.
ScaledFrame synthesize_frame(const Construction& c, unsigned threads = 1);

std::vector<SparseColumn> sparse_columns(const ZiMatrix& m);
/// sum_r conj(a_r) b_r
GaussInt sparse_dot(const SparseColumn& a, const SparseColumn& b);

/// Phi^H Phi.
QiMatrix gram_from_frame(const ScaledFrame& frame, unsigned threads = 1);
/// (1/|G|) sum_{chi in D} d_chi chi(g^-1 h).
QiMatrix gram_character(const Construction& c, unsigned threads = 1);
GaussianScaled gram_character_entry(const Construction& c, GroupElement g, GroupElement h);

/// The printed three-case formula evaluated literally at row (x, y), column (a, b).
GaussianScaled closed_form_raw(const gf2n::FieldContext& f, GroupElement row, GroupElement col);
/// Gram entry (g, h) in the Phi^H Phi convention: the printed formula with
/// its arguments exchanged.
GaussianScaled gram_closed_form(const gf2n::FieldContext& f, GroupElement g, GroupElement h);
QiMatrix gram_closed_form_matrix(const Construction& c, unsigned threads = 1);

struct WelchBound {
  Rational unit_norm;  // (N - m) / (m (N - 1))
  Rational parseval;   // m (N - m) / (N^2 (N - 1))
};

/// Throws std::invalid_argument unless 1 <= m < N.
WelchBound welch_bound_sq(std::int64_t m, std::int64_t n);

enum class Verdict { optimal, not_etf };
enum class Provenance { frame, character_sum, closed_form };

std::string to_string(Verdict v);
std::string to_string(Provenance p);

struct Violation {
  std::string identity;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string found;
  std::string expected;
};

struct EtfCertificate {
  std::int64_t m = 0;
  std::int64_t num_vectors = 0;
  bool parseval = false;
  bool equal_norms = false;
  bool equiangular = false;
  bool welch_equality = false;
  bool degenerate = false;
  Rational diagonal;
  std::optional<Rational> off_diag_modulus_sq;
  std::optional<Rational> welch_sq;
  std::optional<Rational> welch_unit_sq;
  Verdict verdict = Verdict::not_etf;
  std::vector<Provenance> provenance;
  std::vector<std::pair<std::string, bool>> agreement;
  std::optional<Violation> first_violation;
  std::string mode = "full";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Parseval test on the rows, then the Gram tests.
EtfCertificate verify_frame(const ScaledFrame& frame, unsigned threads = 1);
/// Projection test (Hermitian and idempotent), then the Gram tests.
EtfCertificate verify_gram(const QiMatrix& gram, unsigned threads = 1);
/// Gram tests only; the projection property is taken from `parseval`.
EtfCertificate assess_gram(const QiMatrix& gram, bool parseval);

struct Mismatch {
  GroupElement g;
  GroupElement h;
  std::string what;
};

struct AgreementReport {
  std::uint64_t compared = 0;
  std::uint64_t mismatches = 0;
  std::optional<Mismatch> first;
  bool ok() const { return mismatches == 0; }
};

/// Entrywise comparison of two Gram matrices over the group order.
AgreementReport compare_grams(const bgroup::GroupContext& group, const QiMatrix& a, const QiMatrix& b);

/// Index pairs (g, h) in lex-xy order drawn uniformly by std::mt19937_64(seed).
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::uint64_t num_vectors, std::uint64_t samples,
                                                              std::uint64_t seed);

/// Compares, on the sample_pairs entries, the frame, character-sum
/// and closed-form values; also checks the squared moduli
/// against the diagonal value and the Welch value.
EtfCertificate verify_sampled(const Construction& c, std::uint64_t samples, std::uint64_t seed,
                              AgreementReport* agreement = nullptr);

nlohmann::json to_json(const EtfCertificate& cert);

}  // namespace linepack::etf
