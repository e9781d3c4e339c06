#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "linepack/etf.hpp"
#include "linepack/search.hpp"
#include "support.hpp"

using namespace linepack;
using search::SearchTuple;

namespace {

using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;

std::set<Key> keys(const std::vector<SearchTuple>& ts) {
  std::set<Key> out;
  for (const auto& t : ts) out.emplace(t.n, t.k, t.l, t.m);
  return out;
}

const std::vector<Key> kTableRows = {{64, 7, 2, 28},   {256, 30, 2, 120}, {256, 34, 2, 136}, {320, 22, 2, 88},
                                     {320, 58, 2, 232}, {576, 69, 2, 276}, {576, 75, 2, 300}, {640, 18, 2, 72},
                                     {896, 45, 2, 180}, {896, 179, 2, 716}};

// Direct enumeration from the stated constraints.
std::set<Key> naive(std::int64_t max_order) {
  std::set<Key> out;
  for (std::int64_t n = 2; n <= max_order; ++n)
    for (std::int64_t l = 2; l <= n; ++l) {
      if (n % l) continue;
      for (std::int64_t k = 1; k * l * l < n; ++k) {
        const auto m = k * l * l;
        if ((m * (m - 1)) % (n - 1) == 0) out.emplace(n, k, l, m);
      }
    }
  return out;
}

}  // namespace

TEST(Search, TableRowsContained) {
  const auto all = keys(search::enumerate_tuples(1023));
  for (const auto& row : kTableRows) EXPECT_TRUE(all.count(row)) << std::get<0>(row) << "," << std::get<1>(row);
}

TEST(Search, CalibrationCounts) {
  EXPECT_EQ(search::enumerate_tuples(1023).size(), 238u);
  EXPECT_EQ(search::enumerate_tuples(1023, {true}).size(), 224u);
}

TEST(Search, SmallAndInvalidOrders) {
  EXPECT_TRUE(search::enumerate_tuples(2).empty());
  EXPECT_THROW(search::enumerate_tuples(1), std::invalid_argument);
  const auto t64 = keys(search::enumerate_tuples(64));
  EXPECT_TRUE(t64.count({64, 7, 2, 28}));
  EXPECT_TRUE(t64.count({64, 9, 2, 36}));
}

TEST(Search, MatchesNaiveEnumeration) {
  for (std::int64_t max_order : {10, 64, 200, 1023}) EXPECT_EQ(keys(search::enumerate_tuples(max_order)), naive(max_order));
}

TEST(Search, IntegralityAndShapeOverFullOutput) {
  const auto ts = search::enumerate_tuples(1023);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    ASSERT_EQ((t.m * (t.m - 1)) % (t.n - 1), 0);
    ASSERT_EQ(t.lambda() * (t.n - 1), t.m * (t.m - 1));
    ASSERT_EQ(t.m, t.k * t.l * t.l);
    ASSERT_LT(t.m, t.n);
    ASSERT_GE(t.l, 2);
    ASSERT_EQ(t.n % t.l, 0);
    ASSERT_EQ(t.integrality, std::optional<bool>(true));
    if (i) ASSERT_LT(std::tie(ts[i - 1].n, ts[i - 1].l, ts[i - 1].k), std::tie(t.n, t.l, t.k));
  }
}

TEST(Search, MonotoneUnderFiltersAndOrder) {
  testkit::Gen gen(8);
  for (int i = 0; i < 10; ++i) {
    const auto a = gen.between(2, 1023), b = gen.between(2, 1023);
    const auto lo = keys(search::enumerate_tuples(std::min(a, b)));
    const auto hi = keys(search::enumerate_tuples(std::max(a, b)));
    EXPECT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
    const auto filtered = keys(search::enumerate_tuples(std::max(a, b), {true}));
    EXPECT_TRUE(std::includes(hi.begin(), hi.end(), filtered.begin(), filtered.end()));
  }
}

TEST(Search, AbelianOrdersMatchKnownList) {
  // orders n <= 100 for which every group is abelian
  const std::set<std::int64_t> known = {1,  2,  3,  4,  5,  7,  9,  11, 13, 15, 17, 19, 23, 25, 29,
                                        31, 33, 35, 37, 41, 43, 45, 47, 49, 51, 53, 59, 61, 65, 67,
                                        69, 71, 73, 77, 79, 83, 85, 87, 89, 91, 95, 97, 99};
  for (std::int64_t n = 1; n <= 100; ++n) EXPECT_EQ(search::every_group_abelian(n), known.count(n) == 1) << n;
}

TEST(Search, ClassSizeFilterOnSuzukiGroup) {
  etf::Construction c(3);
  std::vector<std::uint64_t> sizes;
  for (const auto& cls : c.group().classes()) sizes.push_back(cls.size());
  const SearchTuple t{64, 7, 2, 28};
  const auto v = search::conjugacy_size_filter(t, sizes, 8);
  EXPECT_TRUE(v.pass());
  EXPECT_EQ(v.bound, Rational(60, 7));
  EXPECT_LT(64 / testkit::to_double(v.bound), 7.47);
  EXPECT_GT(64 / testkit::to_double(v.bound), 7.46);

  std::vector<std::uint64_t> big = {1, 63};
  EXPECT_FALSE(search::conjugacy_size_filter(t, big, 1).pass());
  EXPECT_THROW(search::conjugacy_size_filter(t, {1, 2}, 8), std::invalid_argument);
  EXPECT_THROW(search::conjugacy_size_filter(t, sizes, 7), std::invalid_argument);
}

TEST(Search, CharacterSumFilterOnSuzukiGroup) {
  etf::Construction c(3);
  const auto table = c.table().as_class_functions();
  const auto v = search::character_sum_filter({64, 7, 2, 28}, table);
  EXPECT_TRUE(v.enough_characters);
  EXPECT_TRUE(v.pass());
  EXPECT_FALSE(search::character_sum_filter({64, 21, 1, 21}, table).enough_characters);
  EXPECT_THROW(search::character_sum_filter({256, 30, 2, 120}, table), std::invalid_argument);
}

TEST(Search, SqrtSumComparison) {
  EXPECT_EQ(search::compare_sqrt_sum({2, 8}, 18), 0);
  EXPECT_EQ(search::compare_sqrt_sum({2, 3}, 10), -1);
  EXPECT_EQ(search::compare_sqrt_sum({Rational(1, 4), Rational(1, 4)}, 1), 0);
  EXPECT_EQ(search::compare_sqrt_sum({}, 0), 0);
  EXPECT_EQ(search::compare_sqrt_sum({5}, 4), 1);
  EXPECT_THROW(search::compare_sqrt_sum({-1}, 0), std::invalid_argument);
}

TEST(Search, SqrtSumAgreesWithFloatingOracle) {
  testkit::Gen gen(12);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Rational> rads;
    double lhs = 0;
    const auto count = gen.between(1, 4);
    for (int j = 0; j < count; ++j) {
      const auto a = gen.between(0, 60);
      rads.emplace_back(a);
      lhs += std::sqrt(static_cast<double>(a));
    }
    const auto b = gen.between(0, 400);
    const double rhs = std::sqrt(static_cast<double>(b));
    const int got = search::compare_sqrt_sum(rads, b);
    if (std::abs(lhs - rhs) > 1e-9) ASSERT_EQ(got, lhs > rhs ? 1 : -1);
    // exact equality cases: both sides squared integers
    if (got == 0) ASSERT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(Search, CsvFormat) {
  auto ts = search::enumerate_tuples(64);
  ts.front().classes = false;
  std::ostringstream os;
  search::write_csv(os, ts);
  std::istringstream is(os.str());
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  EXPECT_EQ(header, "n,k,l,m,lambda,verdict_integrality,verdict_classes,verdict_chars");
  EXPECT_EQ(first.substr(first.find(",pass")), ",pass,fail,");
}
