#include "linepack/heis.hpp"

#include <set>
#include <stdexcept>

namespace linepack::heis {

MonomialMatrix MonomialMatrix::identity(std::size_t dim) { return scalar(dim, 0); }

MonomialMatrix MonomialMatrix::scalar(std::size_t dim, int phase) {
  MonomialMatrix m;
  m.perm_.resize(dim);
  m.phase_.assign(dim, static_cast<std::uint8_t>(((phase % 4) + 4) % 4));
  for (std::size_t i = 0; i < dim; ++i) m.perm_[i] = static_cast<std::uint32_t>(i);
  return m;
}

GaussInt MonomialMatrix::entry(std::size_t r, std::size_t c) const {
  return perm_[r] == c ? i_pow(phase_[r]) : GaussInt{};
}

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("MonomialMatrix: dimension mismatch");
  MonomialMatrix out;
  out.perm_.resize(dim());
  out.phase_.resize(dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    const std::uint32_t mid = perm_[r];
    out.perm_[r] = o.perm_[mid];
    out.phase_[r] = static_cast<std::uint8_t>((phase_[r] + o.phase_[mid]) % 4);
  }
  return out;
}

MonomialMatrix MonomialMatrix::times_phase(int phase) const {
  MonomialMatrix out = *this;
  for (auto& p : out.phase_) p = static_cast<std::uint8_t>((p + ((phase % 4) + 4)) % 4);
  return out;
}

MonomialMatrix MonomialMatrix::inverse() const {
  // Unitary: the inverse is the conjugate transpose.
  MonomialMatrix out;
  out.perm_.resize(dim());
  out.phase_.resize(dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    out.perm_[perm_[r]] = static_cast<std::uint32_t>(r);
    out.phase_[perm_[r]] = static_cast<std::uint8_t>((4 - phase_[r]) % 4);
  }
  return out;
}

GaussInt MonomialMatrix::trace() const {
  GaussInt t;
  for (std::size_t r = 0; r < dim(); ++r)
    if (perm_[r] == r) t += i_pow(phase_[r]);
  return t;
}

ZiMatrix MonomialMatrix::dense() const {
  ZiMatrix m(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r) m(r, perm_[r]) = i_pow(phase_[r]);
  return m;
}

MonomialMatrix translation(int k, int s) {
  if (k < 0 || s < 0 || s >= k) throw std::invalid_argument("translation: index out of range");
  MonomialMatrix m = MonomialMatrix::identity(std::size_t{1} << k);
  for (std::uint32_t x = 0; x < m.dim(); ++x) m.perm_[x] = x ^ (std::uint32_t{1} << s);
  return m;
}

MonomialMatrix modulation(int k, int t) {
  if (k < 0 || t < 0 || t >= k) throw std::invalid_argument("modulation: index out of range");
  MonomialMatrix m = MonomialMatrix::identity(std::size_t{1} << k);
  for (std::uint32_t x = 0; x < m.dim(); ++x) m.phase_[x] = ((x >> t) & 1) ? 2 : 0;
  return m;
}

HeisenbergGenerators heis_generators(int k) {
  if (k < 1) throw std::invalid_argument("heis_generators: k must be >= 1");
  HeisenbergGenerators gens;
  for (int s = 0; s < k; ++s) gens.translations.push_back(translation(k, s));
  for (int t = 0; t < k; ++t) gens.modulations.push_back(modulation(k, t));
  return gens;
}

std::size_t generated_order(const std::vector<MonomialMatrix>& generators) {
  if (generators.empty()) return 1;
  std::set<MonomialMatrix> seen{MonomialMatrix::identity(generators.front().dim())};
  std::vector<MonomialMatrix> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<MonomialMatrix> next;
    for (const auto& m : frontier)
      for (const auto& g : generators) {
        auto p = m * g;
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

RepContext::RepContext(const GroupContext& group)
    : RepContext(group, gf2n::symplectic_basis(group.field())) {}

RepContext::RepContext(const GroupContext& group, gf2n::SymplecticBasis basis)
    : group_(group), k_(group.field().half()), symplectic_(std::move(basis)) {
  if (!gf2n::is_symplectic_basis(group.field(), symplectic_))
    throw std::invalid_argument("RepContext: not a symplectic basis of the trace-zero subspace");
  if (group.field().degree() > 16)
    throw std::invalid_argument("RepContext: field degree above 16 is not supported");
  build();
}

void RepContext::build() {
  const auto& f = group_.field();
  const std::size_t d = dim();
  for (auto x : symplectic_.x) field_basis_.push_back(f.theta(x));
  for (auto y : symplectic_.y) field_basis_.push_back(f.theta(y));
  field_basis_.push_back(gf2n::kOne);

  for (int s = 0; s < k_; ++s)
    generator_images_.push_back(translation(k_, s).times_phase(f.trace(f.cube(alpha(s)))));
  for (int t = 0; t < k_; ++t)
    generator_images_.push_back(modulation(k_, t).times_phase(f.trace(f.cube(beta(t)))));
  generator_images_.push_back(MonomialMatrix::scalar(d, 1));

  const std::uint32_t q = f.order();
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  coords_.assign(q, kUnset);
  for (std::uint32_t mask = 0; mask < q; ++mask) {
    FieldElement v = gf2n::kZero;
    for (std::size_t i = 0; i < field_basis_.size(); ++i)
      if ((mask >> i) & 1) v += field_basis_[i];
    if (coords_[v.bits] != kUnset) throw std::logic_error("RepContext: field basis is dependent");
    coords_[v.bits] = mask;
  }

  section_images_.resize(q);
  section_centers_.resize(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    GroupElement h = group_.identity();
    MonomialMatrix m = MonomialMatrix::identity(d);
    for (std::size_t i = 0; i < field_basis_.size(); ++i) {
      if ((coords_[x] >> i) & 1) {
        h = group_.mul(h, {field_basis_[i], gf2n::kZero});
        m = m * generator_images_[i];
      }
    }
    if (h.x.bits != x) throw std::logic_error("RepContext: basis decomposition failed");
    section_images_[x] = std::move(m);
    section_centers_[x] = h.y;
  }
}

MonomialMatrix RepContext::pi(GroupElement g) const {
  // g = (x, c_x) * (0, y + c_x) and pi(0, z) = (-1)^tr(z) I.
  const int sign = group_.field().trace(g.y + section_centers_[g.x.bits]);
  return section_images_[g.x.bits].times_phase(2 * sign);
}

MonomialMatrix RepContext::pi_twisted(FieldElement gamma, GroupElement g) const {
  return pi(bgroup::aut_psi(group_, group_.field().inv(gamma), g));
}

}  // namespace linepack::heis
