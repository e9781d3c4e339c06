#include "linepack/chartab.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace linepack::chartab {

CharacterTable::CharacterTable(const GroupContext& group, std::vector<Character> characters)
    : group_(&group), characters_(std::move(characters)) {
  const std::size_t classes = group.classes().size();
  for (std::size_t i = 0; i < characters_.size(); ++i) {
    const auto& c = characters_[i];
    if (c.values.size() != classes) throw std::invalid_argument("character has wrong class count");
    if (c.values[GroupContext::kIdentityClass] != GaussianScaled(c.degree))
      throw std::logic_error("character value at the identity differs from its degree");
    if (c.label.kind == CharacterKind::nonlinear && c.label.sign == 1) d_set_.push_back(i);
  }
  using Key = std::vector<std::tuple<std::int64_t, std::int64_t, int>>;
  auto key = [](const std::vector<GaussianScaled>& values, bool conj) {
    Key k;
    for (const auto& v : values) k.emplace_back(v.re(), conj ? -v.im() : v.im(), v.log2_scale());
    return k;
  };
  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < characters_.size(); ++i) index.emplace(key(characters_[i].values, false), i);
  conjugate_.resize(characters_.size());
  for (std::size_t i = 0; i < characters_.size(); ++i) {
    auto it = index.find(key(characters_[i].values, true));
    if (it == index.end()) throw std::logic_error("character table not closed under conjugation");
    conjugate_[i] = it->second;
  }
}

ClassFunctionTable CharacterTable::as_class_functions() const {
  ClassFunctionTable t;
  t.group_order = group_->order();
  for (const auto& c : group_->classes()) t.class_sizes.push_back(c.size());
  for (const auto& c : characters_) {
    t.degrees.push_back(c.degree);
    t.values.push_back(c.values);
  }
  return t;
}

std::vector<Character> linear_characters(const GroupContext& group) {
  const auto& f = group.field();
  std::vector<Character> out;
  for (std::uint32_t c = 0; c < f.order(); ++c) {
    Character chi;
    chi.label = {CharacterKind::linear, {c}, 1};
    chi.degree = 1;
    for (const auto& cls : group.classes()) {
      const int t = f.trace(f.mul({c}, cls.representative.x));
      chi.values.emplace_back(t ? -1 : 1);
    }
    out.push_back(std::move(chi));
  }
  return out;
}

std::vector<Character> nonlinear_characters(const GroupContext& group, const heis::RepContext& rep) {
  const auto& f = group.field();
  const std::int64_t degree = std::int64_t{1} << f.half();
  std::vector<Character> plus;
  std::vector<Character> minus;
  for (std::uint32_t g = 1; g < f.order(); ++g) {
    const FieldElement gamma{g};
    Character chi;
    chi.label = {CharacterKind::nonlinear, gamma, 1};
    chi.degree = degree;
    for (const auto& cls : group.classes()) {
      const auto& r = cls.representative;
      GaussianScaled v;
      if (r.x.is_zero() || r.x == gamma) {
        const std::int64_t sign = f.hyperplane_quotient(gamma, r.y) ? -1 : 1;
        v = r.x.is_zero() ? GaussianScaled(sign * degree) : GaussianScaled(0, sign * degree);
      }
      const GaussInt traced = rep.pi_twisted(gamma, r).trace();
      if (GaussianScaled::from(traced) != v) {
        std::ostringstream msg;
        msg << "nonlinear character gamma=" << g << " disagrees with representation trace at ("
            << r.x.bits << "," << r.y.bits << ")";
        throw std::logic_error(msg.str());
      }
      chi.values.push_back(v);
    }
    Character conj = chi;
    conj.label.sign = -1;
    for (auto& v : conj.values) v = v.conj();
    plus.push_back(std::move(chi));
    minus.push_back(std::move(conj));
  }
  plus.insert(plus.end(), std::make_move_iterator(minus.begin()), std::make_move_iterator(minus.end()));
  return plus;
}

namespace {

/// Values as Gaussian integers after multiplying everything by 2^shift.
struct IntegralTable {
  int shift = 0;
  std::vector<std::vector<GaussInt>> values;
};

IntegralTable integral(const ClassFunctionTable& table) {
  int lowest = 0;
  for (const auto& row : table.values)
    for (const auto& v : row)
      if (!v.is_zero()) lowest = std::min(lowest, v.log2_scale());
  IntegralTable out;
  out.shift = -lowest;
  for (const auto& row : table.values) {
    std::vector<GaussInt> ints;
    for (const auto& v : row) ints.push_back((v * GaussianScaled(1, 0, out.shift)).to_gauss_int());
    out.values.push_back(std::move(ints));
  }
  return out;
}

}  // namespace

OrthogonalityReport check_orthogonality(const ClassFunctionTable& table) {
  OrthogonalityReport report;
  const std::size_t d = table.values.size();
  const std::size_t classes = table.class_sizes.size();
  report.square = d == classes;
  std::uint64_t size_sum = 0;
  for (auto s : table.class_sizes) size_sum += s;
  if (!report.square || size_sum != table.group_order || classes == 0 || table.class_sizes[0] != 1) {
    report.first_failure = "table shape or class sizes inconsistent with group order";
    return report;
  }
  std::int64_t deg_sq = 0;
  for (auto deg : table.degrees) deg_sq += deg * deg;
  report.degrees = static_cast<std::uint64_t>(deg_sq) == table.group_order;

  const auto it = integral(table);
  const std::int64_t unit = std::int64_t{1} << (2 * it.shift);
  const auto order = static_cast<std::int64_t>(table.group_order);

  report.rows = true;
  for (std::size_t a = 0; a < d && report.rows; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      GaussInt acc;
      for (std::size_t c = 0; c < classes; ++c)
        acc += it.values[a][c] * it.values[b][c].conj() * GaussInt(static_cast<std::int64_t>(table.class_sizes[c]));
      const GaussInt expected = a == b ? GaussInt(order * unit) : GaussInt();
      if (acc != expected) {
        report.rows = false;
        report.first_failure = "row orthogonality fails for characters " + std::to_string(a) + "," +
                               std::to_string(b);
        break;
      }
    }
  }

  report.columns = true;
  for (std::size_t g = 0; g < classes && report.columns; ++g) {
    for (std::size_t h = 0; h < classes; ++h) {
      GaussInt acc;
      for (std::size_t a = 0; a < d; ++a) acc += it.values[a][g] * it.values[a][h].conj();
      const GaussInt expected =
          g == h ? GaussInt(order / static_cast<std::int64_t>(table.class_sizes[g]) * unit) : GaussInt();
      if (acc != expected) {
        report.columns = false;
        if (report.first_failure.empty())
          report.first_failure = "column orthogonality fails for classes " + std::to_string(g) + "," +
                                 std::to_string(h);
        break;
      }
    }
  }
  return report;
}

CharacterTable assemble_table(const GroupContext& group, const heis::RepContext& rep) {
  auto chars = linear_characters(group);
  auto nonlinear = nonlinear_characters(group, rep);
  chars.insert(chars.end(), std::make_move_iterator(nonlinear.begin()),
               std::make_move_iterator(nonlinear.end()));
  return CharacterTable(group, std::move(chars));
}

CharacterTable full_table(const GroupContext& group, const heis::RepContext& rep) {
  CharacterTable table = assemble_table(group, rep);
  const auto report = check_orthogonality(table.as_class_functions());
  if (!report.ok()) throw std::logic_error("character table inconsistent: " + report.first_failure);
  return table;
}

std::vector<GaussianScaled> weighted_class_sums(const CharacterTable& table,
                                                const std::vector<std::size_t>& subset) {
  std::vector<GaussianScaled> sums(table.group().classes().size());
  for (auto chi : subset) {
    const auto& c = table.characters().at(chi);
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] = sums[k] + GaussianScaled(c.degree) * c.values[k];
  }
  return sums;
}

nlohmann::json to_json(const CharacterTable& table, const OrthogonalityReport& report) {
  using nlohmann::json;
  const auto& group = table.group();
  json classes = json::array();
  for (const auto& c : group.classes())
    classes.push_back({{"representative", {c.representative.x.bits, c.representative.y.bits}},
                       {"size", c.size()}});
  json chars = json::array();
  for (const auto& c : table.characters()) {
    json values = json::array();
    for (const auto& v : c.values)
      values.push_back({{"re", v.re()}, {"im", v.im()}, {"log2", v.log2_scale()}});
    chars.push_back({{"kind", c.label.kind == CharacterKind::linear ? "linear" : "nonlinear"},
                     {"parameter", c.label.parameter.bits},
                     {"sign", c.label.sign},
                     {"degree", c.degree},
                     {"values", values}});
  }
  return {{"n", group.field().degree()},
          {"modulus", group.field().modulus()},
          {"group_order", group.order()},
          {"classes", classes},
          {"characters", chars},
          {"d_set", table.d_set()},
          {"orthogonality",
           {{"rows", report.rows},
            {"columns", report.columns},
            {"degree_sum", report.degrees},
            {"square", report.square}}}};
}

}  // namespace linepack::chartab
