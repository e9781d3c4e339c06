#include <gtest/gtest.h>

#include <complex>
#include <set>

#include "linepack/chartab.hpp"
#include "linepack/etf.hpp"
#include "linepack/scheme.hpp"
#include "support.hpp"

using namespace linepack;
using scheme::SrgParameters;

namespace {

struct GroupFixture {
  GroupFixture() : c(3), s(scheme::group_scheme(c.table())) {}
  etf::Construction c;
  scheme::SchemeDescriptor s;
};

const GroupFixture& fixture() {
  static const GroupFixture fx;
  return fx;
}

using cd = std::complex<double>;
using DenseC = std::vector<std::vector<cd>>;

DenseC to_dense(const QiMatrix& m) {
  DenseC out(m.rows(), std::vector<cd>(m.cols()));
  const double den = static_cast<double>(m.denominator());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto z = m.numerators()(r, c);
      out[r][c] = cd(static_cast<double>(z.re) / den, static_cast<double>(z.im) / den);
    }
  return out;
}

// Off-diagonal squared moduli of a Gram matrix, as a set of distinct values.
std::set<Rational> off_diagonal_moduli(const QiMatrix& g) {
  std::set<Rational> out;
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c)
      if (r != c) out.insert(g.entry(r, c).norm());
  return out;
}

}  // namespace

TEST(GroupScheme, AxiomsAtDegreeThree) {
  const auto& s = fixture().s;
  ASSERT_EQ(s.points, 64u);
  ASSERT_EQ(s.adjacency.size(), 22u);
  ASSERT_EQ(s.idempotents.size(), 22u);
  EXPECT_TRUE(scheme::verify_axioms(s).ok());
  const auto& chars = fixture().c.table().characters();
  for (std::size_t j = 0; j < chars.size(); ++j) EXPECT_EQ(s.ranks[j], chars[j].degree * chars[j].degree);
  for (std::size_t i = 0; i < s.adjacency.size(); ++i)
    EXPECT_EQ(s.valencies[i], static_cast<std::int64_t>(fixture().c.group().classes()[i].size()));
}

TEST(GroupScheme, IdempotentsExhaustively) {
  const auto& s = fixture().s;
  QiMatrix sum(s.points, s.points);
  for (std::size_t i = 0; i < s.idempotents.size(); ++i) {
    sum = sum + s.idempotents[i];
    for (std::size_t j = 0; j < s.idempotents.size(); ++j) {
      const auto p = multiply(s.idempotents[i], s.idempotents[j]);
      if (i == j)
        ASSERT_EQ(p, s.idempotents[i]);
      else
        ASSERT_TRUE(p.is_zero()) << i << "," << j;
    }
  }
  EXPECT_EQ(sum, QiMatrix::identity(s.points));
}

TEST(GroupScheme, DetectsBrokenAxiom) {
  auto s = fixture().s;
  s.idempotents[3] = s.idempotents[3].scaled(2, 1);
  const auto rep = scheme::verify_axioms(s);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.idempotent);
}

TEST(GroupScheme, SizeCap) {
  etf::Construction c(5);
  EXPECT_THROW(scheme::group_scheme(c.table()), std::length_error);
}

TEST(GroupScheme, GramProjectorOfD) {
  const auto& fx = fixture();
  const auto g = scheme::gram_projector(fx.s, fx.c.table().d_set());
  EXPECT_EQ(multiply(g, g), g);
  EXPECT_EQ(g, etf::gram_character(fx.c));
  EXPECT_EQ(g.trace(), GaussRational(Rational(28)));
  EXPECT_THROW(scheme::gram_projector(fx.s, {}), std::invalid_argument);
}

TEST(GroupScheme, KreinParameters) {
  const auto& fx = fixture();
  const auto q = scheme::krein_parameters(fx.s);
  const auto q_chars = scheme::krein_from_characters(fx.c.table());
  ASSERT_EQ(q.classes(), 22u);
  const auto report = scheme::check_krein(fx.s, q);
  EXPECT_TRUE(report.ok()) << report.first_violation;
  std::size_t nontrivial = 0;
  for (std::size_t i = 0; i < 22; ++i)
    for (std::size_t j = 0; j < 22; ++j)
      for (std::size_t k = 0; k < 22; ++k) {
        ASSERT_EQ(q(i, j, k), q_chars(i, j, k));
        ASSERT_GE(q(i, j, k), 0);
        if (i && j && k) ++nontrivial;
      }
  EXPECT_GE(nontrivial, 506u);
  // q with E_0: E_0 o E_j = (1/n) E_j
  for (std::size_t j = 0; j < 22; ++j)
    for (std::size_t k = 0; k < 22; ++k) EXPECT_EQ(q(0, j, k), j == k ? 1 : 0);
}

TEST(GroupScheme, KreinExpansionFloatingOracle) {
  const auto& fx = fixture();
  const auto q = scheme::krein_parameters(fx.s);
  std::vector<DenseC> e;
  for (const auto& m : fx.s.idempotents) e.push_back(to_dense(m));
  const double n = static_cast<double>(fx.s.points);
  testkit::Gen gen(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto i = gen.below(22), j = gen.below(22);
    for (std::size_t r = 0; r < 64; r += 5)
      for (std::size_t c = 0; c < 64; c += 3) {
        cd rhs = 0;
        for (std::size_t k = 0; k < 22; ++k) rhs += testkit::to_double(q(i, j, k)) * e[k][r][c];
        ASSERT_LT(std::abs(e[i][r][c] * e[j][r][c] - rhs / n), 1e-12);
      }
  }
}

TEST(GroupScheme, SuzukiHyperdifferenceSet) {
  const auto& fx = fixture();
  const auto q = scheme::krein_parameters(fx.s);
  const auto rep = scheme::hyperdiff_check(fx.s, q, fx.c.table().d_set());
  EXPECT_TRUE(rep.is_hyperdiff);
  EXPECT_EQ(rep.m_d, 28);
  ASSERT_EQ(rep.b.size(), 22u);
  const Rational lambda = Rational(28 * 27) / 63;
  for (std::size_t k = 1; k < rep.b.size(); ++k) EXPECT_EQ(rep.b[k], lambda) << "class " << k;
  ASSERT_TRUE(rep.off_diag_modulus_sq);
  EXPECT_EQ(*rep.off_diag_modulus_sq, Rational(1, 256));
  EXPECT_TRUE(scheme::verify_hadamard_identity(fx.s, rep));
}

TEST(GroupScheme, SingleCharacterIsNotHyperdifference) {
  const auto& fx = fixture();
  const auto q = scheme::krein_parameters(fx.s);
  const std::size_t chi = fx.c.table().d_set().front();
  const auto rep = scheme::hyperdiff_check(fx.s, q, {chi});
  EXPECT_FALSE(rep.is_hyperdiff);
  const auto moduli = off_diagonal_moduli(scheme::gram_projector(fx.s, {chi}));
  EXPECT_TRUE(moduli.count(Rational(0)));
  EXPECT_GT(moduli.size(), 1u);
}

TEST(GroupScheme, RandomSubsetsAgreeWithDirectTest) {
  const auto& fx = fixture();
  const auto q = scheme::krein_parameters(fx.s);
  testkit::Gen gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::size_t> subset;
    for (std::size_t j = 1; j < 22; ++j)
      if (gen.below(3) == 0) subset.push_back(j);
    if (subset.empty()) subset.push_back(1 + gen.below(21));
    const auto rep = scheme::hyperdiff_check(fx.s, q, subset);
    EXPECT_EQ(rep.is_hyperdiff, off_diagonal_moduli(scheme::gram_projector(fx.s, subset)).size() == 1);
  }
}

TEST(Srg, LatticeGraphSixteen) {
  const SrgParameters p{16, 6, 2, 2};
  const auto res = scheme::srg_scheme(scheme::lattice_graph(4), p);
  EXPECT_EQ(res.eig_plus, 2);
  EXPECT_EQ(res.eig_minus, -2);
  EXPECT_EQ(2 * p.k - p.v, 2 * res.eig_minus);
  ASSERT_TRUE(res.hyperdiff_index);
  EXPECT_EQ(*res.hyperdiff_index, 1u);
  EXPECT_EQ(res.scheme.ranks[1], 6);

  // E_1 = (A - r_- I - ((k - r_-)/v) J) / (r_+ - r_-)
  const auto a = scheme::lattice_graph(4);
  ZiMatrix num(16, 16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) num(r, c) = 2 * a(r, c).re + (r == c ? 4 : 0) - 1;
  EXPECT_EQ(res.scheme.idempotents[1], QiMatrix(num, 8));

  const auto cert = etf::verify_gram(res.scheme.idempotents[1]);
  EXPECT_EQ(cert.verdict, etf::Verdict::optimal);
  EXPECT_EQ(cert.m, 6);
  EXPECT_EQ(cert.num_vectors, 16);
  EXPECT_EQ(*cert.off_diag_modulus_sq, Rational(1, 64));
}

TEST(Srg, Petersen) {
  const auto res = scheme::srg_scheme(scheme::petersen_graph(), {10, 3, 0, 1});
  EXPECT_EQ(res.eig_plus, 1);
  EXPECT_EQ(res.eig_minus, -2);
  EXPECT_TRUE(res.hyperdiff_index);
}

TEST(Srg, Rejections) {
  ZiMatrix c5(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    c5(i, (i + 1) % 5) = 1;
    c5((i + 1) % 5, i) = 1;
  }
  EXPECT_THROW(scheme::srg_scheme(c5, {5, 2, 0, 1}), scheme::UnsupportedParameters);
  EXPECT_THROW(scheme::srg_scheme(scheme::lattice_graph(4), {16, 6, 2, 3}), std::invalid_argument);
  EXPECT_THROW(scheme::srg_scheme(scheme::lattice_graph(3), {16, 6, 2, 2}), std::invalid_argument);
  EXPECT_FALSE(scheme::builtin_srg({5, 2, 0, 1}));
}

class LatticeProperty : public ::testing::TestWithParam<int> {};

TEST_P(LatticeProperty, SchemeAndCriterion) {
  const int q = GetParam();
  const SrgParameters p{q * q, 2 * (q - 1), q - 2, 2};
  const auto res = scheme::srg_scheme(scheme::lattice_graph(q), p);
  EXPECT_TRUE(scheme::verify_axioms(res.scheme).ok());
  EXPECT_EQ(res.scheme.ranks[0] + res.scheme.ranks[1] + res.scheme.ranks[2], p.v);
  bool direct = false;
  for (std::size_t j = 1; j <= 2; ++j)
    direct = direct || off_diagonal_moduli(res.scheme.idempotents[j]).size() == 1;
  EXPECT_EQ(res.hyperdiff_index.has_value(), direct);
  EXPECT_EQ(direct, 2 * p.k - p.v == 2 * res.eig_minus || 2 * p.k - p.v == 2 * res.eig_plus);
  const auto q_tensor = scheme::krein_parameters(res.scheme);
  EXPECT_TRUE(scheme::check_krein(res.scheme, q_tensor).ok());
}

INSTANTIATE_TEST_SUITE_P(Sizes, LatticeProperty, ::testing::Values(3, 4, 5, 6));
