#pragma once

// Commutative association schemes with exact adjacency matrices and
// primitive idempotents: the group scheme of a finite group and 2-class
// schemes of strongly regular graphs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "linepack/bgroup.hpp"
#include "linepack/chartab.hpp"
#include "linepack/exact.hpp"
#include "linepack/matrix.hpp"

namespace linepack::scheme {

class UnsupportedParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two independent evaluations of the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SchemeDescriptor {
  std::size_t points = 0;
  std::vector<ZiMatrix> adjacency;   // A_0 = I
  std::vector<std::int64_t> valencies;
  std::vector<QiMatrix> idempotents;  // E_0 = J / points
  std::vector<std::int64_t> ranks;
  std::vector<std::size_t> dual;  // E_dual[j] = conj(E_j)
};

struct AxiomReport {
  bool partition = false;        // sum of A_i is J
  bool identity = false;         // A_0 = I
  bool transpose_closed = false;
  bool product_closed = false;   // A_i A_j = sum p_ij^k A_k, p nonnegative integers
  bool commutative = false;
  bool idempotent = false;
  bool orthogonal = false;
  bool resolution = false;       // sum E_j = I
  bool trivial_idempotent = false;
  bool in_adjacency_algebra = false;
  std::string first_failure;
  bool ok() const {
    return partition && identity && transpose_closed && product_closed && commutative && idempotent &&
           orthogonal && resolution && trivial_idempotent && in_adjacency_algebra;
  }
};

AxiomReport verify_axioms(const SchemeDescriptor& scheme, unsigned threads = 1);

/// Largest group order accepted by group_scheme (dense |G| x |G| matrices per class).
inline constexpr std::uint64_t kGroupSchemeMaxOrder = 256;

/// Relations R_i = {(g, h) : h g^-1 in C_i} and idempotents
/// E_chi(g, h) = (d_chi / |G|) chi(g^-1 h), in class and character order.
/// Throws ConsistencyError if an axiom fails and std::length_error above
/// kGroupSchemeMaxOrder.
SchemeDescriptor group_scheme(const chartab::CharacterTable& table, unsigned threads = 1);

/// Sum of the selected idempotents. Throws std::invalid_argument("empty index set").
QiMatrix gram_projector(const SchemeDescriptor& scheme, const std::vector<std::size_t>& subset);

/// q_{ij}^k defined by E_i o E_j = (1/n) sum_k q_{ij}^k E_k.
class KreinTensor {
 public:
  KreinTensor() = default;
  explicit KreinTensor(std::size_t classes) : d_(classes), q_(classes * classes * classes) {}
  std::size_t classes() const { return d_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return q_[(i * d_ + j) * d_ + k]; }
  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) { return q_[(i * d_ + j) * d_ + k]; }

 private:
  std::size_t d_ = 0;
  std::vector<Rational> q_;
};

struct KreinReport {
  bool nonnegative = true;
  bool symmetric = true;
  bool mass = true;  // sum_k q_ij^k m_k = m_i m_j
  std::string first_violation;
  bool ok() const { return nonnegative && symmetric && mass; }
};

/// Expands every Hadamard product in the idempotent basis by trace pairing:
/// q_{ij}^k = n tr((E_i o E_j) E_k) / m_k. Throws ConsistencyError if the
/// expansion does not reproduce E_i o E_j.
KreinTensor krein_parameters(const SchemeDescriptor& scheme, unsigned threads = 1);

KreinReport check_krein(const SchemeDescriptor& scheme, const KreinTensor& q);

/// Krein parameters of a group scheme from characters alone:
/// q_{eta,tau}^chi = d_eta d_tau / (d_chi |G|) sum_g eta(g) tau(g) conj(chi(g)).
KreinTensor krein_from_characters(const chartab::CharacterTable& table);

struct HyperdiffReport {
  std::vector<std::size_t> subset;
  bool is_hyperdiff = false;
  Rational m_d;
  std::vector<Rational> b;  // b_k for k = 0..d; b_0 is reported but not constrained
  std::optional<Rational> off_diag_modulus_sq;
  std::optional<Rational> c1;
  std::optional<Rational> c2;
};

/// Decides the hyperdifference property twice, from the off-diagonal moduli
/// of the Gram projector and from constancy of b_k, and throws
/// ConsistencyError if the two disagree.
HyperdiffReport hyperdiff_check(const SchemeDescriptor& scheme, const KreinTensor& q,
                                const std::vector<std::size_t>& subset);

/// True iff G o conj(G) = C1 E_0 + C2 I exactly.
bool verify_hadamard_identity(const SchemeDescriptor& scheme, const HyperdiffReport& report);

struct SrgParameters {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
};

struct SrgResult {
  SrgParameters params;
  std::int64_t eig_plus = 0;
  std::int64_t eig_minus = 0;
  SchemeDescriptor scheme;  // {I, A, J - I - A}; E_1 projects onto the eig_plus eigenspace
  std::optional<std::size_t> hyperdiff_index;
  HyperdiffReport report;
};

/// Throws UnsupportedParameters for irrational eigenvalues and
/// std::invalid_argument if the adjacency matrix does not match the parameters.
SrgResult srg_scheme(const ZiMatrix& adjacency, const SrgParameters& params);

/// Lattice graph L(q) = K_q x K_q, parameters (q^2, 2(q-1), q-2, 2).
ZiMatrix lattice_graph(int q);
ZiMatrix petersen_graph();
/// Built-in graph with the given parameters, if one exists.
std::optional<ZiMatrix> builtin_srg(const SrgParameters& params);

nlohmann::json summary_json(const SchemeDescriptor& scheme, const HyperdiffReport& report);

}  // namespace linepack::scheme
