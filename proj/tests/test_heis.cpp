#include <gtest/gtest.h>

#include "linepack/heis.hpp"
#include "support.hpp"

using namespace linepack;
using bgroup::GroupContext;
using bgroup::GroupElement;
using gf2n::FieldContext;
using heis::MonomialMatrix;

namespace {

// Dense translation and modulation built from the defining formulas.
ZiMatrix dense_translation(int k, int s) {
  const std::size_t d = std::size_t{1} << k;
  ZiMatrix m(d, d);
  for (std::size_t x = 0; x < d; ++x) m(x, x ^ (std::size_t{1} << s)) = 1;
  return m;
}

ZiMatrix dense_modulation(int k, int t) {
  const std::size_t d = std::size_t{1} << k;
  ZiMatrix m(d, d);
  for (std::size_t x = 0; x < d; ++x) m(x, x) = ((x >> t) & 1) ? -1 : 1;
  return m;
}

MonomialMatrix minus_identity(std::size_t dim) { return MonomialMatrix::scalar(dim, 2); }

}  // namespace

TEST(Heis, SingleQubitExample) {
  const auto gens = heis::heis_generators(1);
  ZiMatrix t(2, 2), m(2, 2);
  t(0, 1) = 1;
  t(1, 0) = 1;
  m(0, 0) = 1;
  m(1, 1) = -1;
  EXPECT_EQ(gens.translations[0].dense(), t);
  EXPECT_EQ(gens.modulations[0].dense(), m);
  EXPECT_EQ(gens.translations[0] * gens.modulations[0],
            (gens.modulations[0] * gens.translations[0]).times_phase(2));
  EXPECT_THROW(heis::heis_generators(0), std::invalid_argument);
}

class HeisRelations : public ::testing::TestWithParam<int> {};

TEST_P(HeisRelations, GeneratorsMatchDefinitions) {
  const int k = GetParam();
  const auto gens = heis::heis_generators(k);
  for (int s = 0; s < k; ++s) {
    EXPECT_EQ(gens.translations[s].dense(), dense_translation(k, s));
    EXPECT_EQ(gens.modulations[s].dense(), dense_modulation(k, s));
  }
}

TEST_P(HeisRelations, PowerAndCommutingRelations) {
  const int k = GetParam();
  const auto gens = heis::heis_generators(k);
  const auto id = MonomialMatrix::identity(std::size_t{1} << k);
  for (int s = 0; s < k; ++s) {
    EXPECT_EQ(gens.translations[s] * gens.translations[s], id);
    EXPECT_EQ(gens.modulations[s] * gens.modulations[s], id);
    for (int t = 0; t < k; ++t) {
      const auto& ts = gens.translations[s];
      const auto& tt = gens.translations[t];
      const auto& ms = gens.modulations[s];
      const auto& mt = gens.modulations[t];
      EXPECT_EQ(ts * tt, tt * ts);
      EXPECT_EQ(ms * mt, mt * ms);
      EXPECT_EQ(ts * mt, (mt * ts).times_phase(s == t ? 2 : 0));
    }
  }
}

TEST_P(HeisRelations, GroupOrders) {
  const int k = GetParam();
  const auto gens = heis::heis_generators(k);
  std::vector<MonomialMatrix> all = gens.translations;
  all.insert(all.end(), gens.modulations.begin(), gens.modulations.end());
  EXPECT_EQ(heis::generated_order(all), std::size_t{1} << (2 * k + 1));
  all.push_back(MonomialMatrix::scalar(std::size_t{1} << k, 1));
  EXPECT_EQ(heis::generated_order(all), std::size_t{1} << (2 * k + 2));
}

INSTANTIATE_TEST_SUITE_P(SmallK, HeisRelations, ::testing::Values(1, 2, 3));

TEST(Heis, MonomialAlgebra) {
  testkit::Gen gen(7);
  const auto gens = heis::heis_generators(3);
  std::vector<MonomialMatrix> pool = gens.translations;
  pool.insert(pool.end(), gens.modulations.begin(), gens.modulations.end());
  for (int i = 0; i < 200; ++i) {
    MonomialMatrix a = MonomialMatrix::scalar(8, static_cast<int>(gen.below(4)));
    MonomialMatrix b = MonomialMatrix::identity(8);
    for (int j = 0; j < 4; ++j) {
      a = a * pool[gen.below(pool.size())];
      b = b * pool[gen.below(pool.size())];
    }
    ASSERT_EQ((a * b).dense(), multiply(a.dense(), b.dense()));
    ASSERT_EQ(a * a.inverse(), MonomialMatrix::identity(8));
    ASSERT_EQ(a.trace(), a.dense().trace());
  }
}

class RepProperty : public ::testing::TestWithParam<int> {};

TEST_P(RepProperty, HomomorphismOnRandomPairs) {
  GroupContext g{FieldContext(GetParam())};
  heis::RepContext rep(g);
  testkit::Gen gen(211 + GetParam());
  for (int i = 0; i < 1000; ++i) {
    const auto a = gen.group_element(g.field()), b = gen.group_element(g.field());
    ASSERT_EQ(rep.pi(g.mul(a, b)), rep.pi(a) * rep.pi(b));
  }
}

TEST_P(RepProperty, GeneratorImages) {
  GroupContext g{FieldContext(GetParam())};
  const auto& f = g.field();
  heis::RepContext rep(g);
  const int k = rep.half();
  const auto gens = heis::heis_generators(k);
  for (int s = 0; s < k; ++s) {
    EXPECT_EQ(rep.alpha(s), f.theta(rep.symplectic().x[s]));
    EXPECT_EQ(rep.beta(s), f.theta(rep.symplectic().y[s]));
  }
  testkit::Gen gen(223 + GetParam());
  for (int i = 0; i < 50; ++i) {
    const auto y = gen.element(f);
    const int sign = f.trace(y) ? 2 : 0;
    for (int s = 0; s < k; ++s) {
      EXPECT_EQ(rep.pi({rep.alpha(s), y}), gens.translations[s].times_phase(sign + f.trace(f.cube(rep.alpha(s)))));
      EXPECT_EQ(rep.pi({rep.beta(s), y}), gens.modulations[s].times_phase(sign + f.trace(f.cube(rep.beta(s)))));
    }
    EXPECT_EQ(rep.pi({gf2n::kOne, y}), MonomialMatrix::scalar(rep.dim(), sign + 1));
    EXPECT_EQ(rep.pi({gf2n::kZero, y}), MonomialMatrix::scalar(rep.dim(), sign));
  }
}

TEST_P(RepProperty, PresentationRelationsOverBasisPairs) {
  GroupContext g{FieldContext(GetParam())};
  const auto& f = g.field();
  heis::RepContext rep(g);
  const auto& basis = rep.field_basis();
  ASSERT_EQ(static_cast<int>(basis.size()), f.degree());
  const bgroup::QuotientElement z{gf2n::kZero, 1};
  const bgroup::QuotientElement one{gf2n::kZero, 0};
  auto mul = [&](auto a, auto b) { return bgroup::quotient_mul(g, gf2n::kOne, a, b); };
  auto zpow = [&](int e) { return e ? z : one; };
  const auto minus = minus_identity(rep.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const bgroup::QuotientElement fi{basis[i], 0};
    const int p = f.trace(f.cube(basis[i]));
    EXPECT_EQ(mul(fi, fi), zpow(p));
    EXPECT_EQ(mul(fi, z), mul(z, fi));
    const auto& pi_i = rep.generator_image(i);
    EXPECT_EQ(pi_i * pi_i, p ? minus : MonomialMatrix::identity(rep.dim()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const bgroup::QuotientElement fj{basis[j], 0};
      const int c = f.symplectic_form(basis[i], basis[j]);
      EXPECT_EQ(mul(fi, fj), mul(mul(fj, fi), zpow(c)));
      const auto& pi_j = rep.generator_image(j);
      EXPECT_EQ(pi_i * pi_j, (pi_j * pi_i).times_phase(2 * c));
    }
  }
}

TEST_P(RepProperty, TwistedEvaluatorsAreIrreducible) {
  GroupContext g{FieldContext(GetParam())};
  heis::RepContext rep(g);
  heis::RepFamily family(rep);
  ASSERT_EQ(family.size(), g.field().order() - 1u);
  for (std::size_t i = 0; i < family.size(); i += (GetParam() == 3 ? 1 : 7)) {
    // (1/|G|) sum |tr|^2 = 1; tr pi(x, y) vanishes unless x is 0 or gamma
    std::int64_t total = 0;
    for (std::size_t e = 0; e < g.order(); ++e) total += family(i, g.element(e)).trace().norm();
    EXPECT_EQ(total, static_cast<std::int64_t>(g.order())) << "gamma index " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(OddDegrees, RepProperty, ::testing::Values(3, 5));

TEST(Heis, DegreeThreeSquareOfAlpha) {
  GroupContext g{FieldContext(3)};
  heis::RepContext rep(g);
  const auto& f = g.field();
  const GroupElement a{rep.alpha(0), gf2n::kZero};
  const auto sq = g.mul(a, a);
  EXPECT_EQ(sq, (GroupElement{gf2n::kZero, f.cube(rep.alpha(0))}));
  const auto minus = minus_identity(2);
  if (f.trace(f.cube(rep.alpha(0))) == 1) EXPECT_EQ(rep.pi(sq), minus);
  EXPECT_EQ(rep.pi(a) * rep.pi(a), rep.pi(sq));
}
