#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <map>

#include "linepack/chartab.hpp"
#include "support.hpp"

using namespace linepack;
using bgroup::GroupContext;
using bgroup::GroupElement;
using chartab::CharacterKind;
using gf2n::FieldContext;
using cd = std::complex<double>;

namespace {

struct Fixture {
  explicit Fixture(int n) : group(FieldContext(n)), rep(group), table(chartab::full_table(group, rep)) {}
  GroupContext group;
  heis::RepContext rep;
  chartab::CharacterTable table;
};

// Character value computed directly from its label.
cd oracle_value(const GroupContext& g, const chartab::CharacterLabel& label, GroupElement e) {
  const auto& f = g.field();
  if (label.kind == CharacterKind::linear) return f.trace(f.mul(label.parameter, e.x)) ? -1.0 : 1.0;
  const auto gamma = label.parameter;
  const double amp = std::ldexp(1.0, f.half()) * (f.trace(f.mul(f.inv(f.cube(gamma)), e.y)) ? -1.0 : 1.0);
  if (e.x.is_zero()) return amp;
  if (e.x == gamma) return cd(0, label.sign * amp);
  return 0.0;
}

double abs_err(cd a, cd b) { return std::abs(a - b); }

}  // namespace

TEST(Chartab, DegreeThreeShape) {
  Fixture fx(3);
  const auto& chars = fx.table.characters();
  ASSERT_EQ(chars.size(), 22u);
  std::map<std::int64_t, int> degrees;
  std::int64_t sum_sq = 0;
  for (const auto& c : chars) {
    ++degrees[c.degree];
    sum_sq += c.degree * c.degree;
  }
  EXPECT_EQ(degrees, (std::map<std::int64_t, int>{{1, 8}, {2, 14}}));
  EXPECT_EQ(sum_sq, 64);
  EXPECT_EQ(fx.table.d_set().size(), 7u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(chars[i].label.kind, CharacterKind::linear);
}

TEST(Chartab, DegreeThreeValueExample) {
  Fixture fx(3);
  const auto d0 = fx.table.d_set().front();
  EXPECT_EQ(fx.table.characters()[d0].label.parameter, gf2n::kOne);
  EXPECT_EQ(fx.table.value(d0, {gf2n::kOne, gf2n::kZero}), GaussianScaled(0, 2));
}

TEST(Chartab, TableRejectsWrongShape) {
  GroupContext g{FieldContext(3)};
  auto chars = chartab::linear_characters(g);
  chars[3].values.pop_back();
  EXPECT_THROW(chartab::CharacterTable(g, chars), std::invalid_argument);
  chars = chartab::linear_characters(g);
  chars[3].values[0] = GaussianScaled(2);
  EXPECT_THROW(chartab::CharacterTable(g, chars), std::logic_error);
}

TEST(Chartab, OrthogonalityDetectsCorruption) {
  Fixture fx(3);
  auto cf = fx.table.as_class_functions();
  EXPECT_TRUE(chartab::check_orthogonality(cf).ok());
  cf.values[9][3] = -cf.values[9][3];
  const auto rep = chartab::check_orthogonality(cf);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.first_failure.empty());
}

TEST(Chartab, LinearCharactersMultiplicativeAndOrthogonal) {
  GroupContext g{FieldContext(3)};
  const auto lin = chartab::linear_characters(g);
  ASSERT_EQ(lin.size(), 8u);
  testkit::Gen gen(5);
  for (const auto& c : lin)
    for (int i = 0; i < 1000; ++i) {
      const auto a = gen.group_element(g.field()), b = gen.group_element(g.field());
      ASSERT_EQ(c.values[g.class_of(g.mul(a, b))], c.values[g.class_of(a)] * c.values[g.class_of(b)]);
    }
  for (std::size_t i = 0; i < lin.size(); ++i)
    for (std::size_t j = 0; j < lin.size(); ++j) {
      cd s = 0;
      for (std::size_t e = 0; e < g.order(); ++e) {
        const auto cls = g.class_of(g.element(e));
        s += testkit::to_complex(lin[i].values[cls]) * std::conj(testkit::to_complex(lin[j].values[cls]));
      }
      EXPECT_NEAR(std::abs(s - cd(i == j ? 64.0 : 0.0)), 0.0, 1e-9);
    }
}

class ChartabProperty : public ::testing::TestWithParam<int> {};

TEST_P(ChartabProperty, ValuesMatchLabelOracle) {
  Fixture fx(GetParam());
  const auto& g = fx.group;
  for (std::size_t chi = 0; chi < fx.table.size(); ++chi)
    for (const auto& cls : g.classes())
      for (const auto& e : cls.members)
        ASSERT_LT(abs_err(testkit::to_complex(fx.table.value(chi, e)),
                          oracle_value(g, fx.table.characters()[chi].label, e)),
                  1e-12);
}

TEST_P(ChartabProperty, DFamilyMatchesRepresentationTraces) {
  Fixture fx(GetParam());
  for (auto chi : fx.table.d_set()) {
    const auto gamma = fx.table.characters()[chi].label.parameter;
    for (const auto& cls : fx.group.classes())
      ASSERT_EQ(fx.table.characters()[chi].values[fx.group.class_of(cls.representative)],
                GaussianScaled::from(fx.rep.pi_twisted(gamma, cls.representative).trace()));
  }
}

TEST_P(ChartabProperty, FloatingOrthogonalityOracle) {
  Fixture fx(GetParam());
  const auto& classes = fx.group.classes();
  const double order = static_cast<double>(fx.group.order());
  const auto n = fx.table.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cd s = 0;
      for (std::size_t c = 0; c < classes.size(); ++c)
        s += static_cast<double>(classes[c].size()) * testkit::to_complex(fx.table.characters()[i].values[c]) *
             std::conj(testkit::to_complex(fx.table.characters()[j].values[c]));
      ASSERT_LT(abs_err(s, cd(i == j ? order : 0.0)), 1e-6) << i << "," << j;
    }
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (std::size_t b = a; b < classes.size(); ++b) {
      cd s = 0;
      for (std::size_t i = 0; i < n; ++i)
        s += testkit::to_complex(fx.table.characters()[i].values[a]) *
             std::conj(testkit::to_complex(fx.table.characters()[i].values[b]));
      const double expect = a == b ? order / static_cast<double>(classes[a].size()) : 0.0;
      ASSERT_LT(abs_err(s, cd(expect)), 1e-6) << a << "," << b;
    }
}

TEST_P(ChartabProperty, FlatWeightedSums) {
  Fixture fx(GetParam());
  const auto sums = chartab::weighted_class_sums(fx.table, fx.table.d_set());
  const int k = fx.group.field().half();
  const auto d_set = fx.table.d_set();
  const auto nn = static_cast<std::int64_t>(fx.group.order());
  const auto m = (std::int64_t{1} << (GetParam() - 1)) * ((std::int64_t{1} << GetParam()) - 1);
  // weighted by degree: m(n-m)/(n-1); plain sum: 2^{2k}
  const GaussianScaled weighted(m * (nn - m) / (nn - 1));
  const GaussianScaled plain(std::int64_t{1} << (2 * k));
  ASSERT_EQ(m * (nn - m) % (nn - 1), 0);
  for (std::size_t c = 1; c < sums.size(); ++c) {
    EXPECT_EQ(sums[c].norm(), weighted) << "class " << c;
    GaussianScaled s;
    for (auto chi : d_set) s = s + fx.table.characters()[chi].values[c];
    EXPECT_EQ(s.norm(), plain) << "class " << c;
  }
  EXPECT_EQ(sums[0], GaussianScaled(m));
}

TEST_P(ChartabProperty, ConjugatesPairTheFamilies) {
  Fixture fx(GetParam());
  const auto& chars = fx.table.characters();
  for (std::size_t chi = 0; chi < chars.size(); ++chi) {
    const auto c = fx.table.conjugate_of(chi);
    for (std::size_t k = 0; k < chars[chi].values.size(); ++k)
      ASSERT_EQ(chars[c].values[k], chars[chi].values[k].conj());
    if (chars[chi].label.kind == CharacterKind::nonlinear) {
      EXPECT_EQ(chars[c].label.parameter, chars[chi].label.parameter);
      EXPECT_EQ(chars[c].label.sign, -chars[chi].label.sign);
    } else {
      EXPECT_EQ(c, chi);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(OddDegrees, ChartabProperty, ::testing::Values(3, 5));

TEST(Chartab, JsonExport) {
  Fixture fx(3);
  const auto j = chartab::to_json(fx.table, chartab::check_orthogonality(fx.table.as_class_functions()));
  EXPECT_EQ(j["characters"].size(), 22u);
  EXPECT_EQ(j["classes"].size(), 22u);
  EXPECT_EQ(j["d_set"].size(), 7u);
  EXPECT_TRUE(j["orthogonality"]["rows"].get<bool>());
}
