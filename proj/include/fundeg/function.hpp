#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fundeg/group.hpp"

namespace fundeg {

/// A total function between two finite abelian groups, stored as a dense
/// table of codomain ranks indexed by domain rank.
class GroupFunction {
 public:
  GroupFunction(FiniteAbelianGroup domain, FiniteAbelianGroup codomain,
                std::vector<std::uint32_t> table)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
    if (codomain_.order() > UINT32_MAX)
      throw std::invalid_argument("codomain too large for dense tables");
    if (table_.size() != domain_.order())
      throw std::invalid_argument("table length must equal the domain order");
    for (auto v : table_)
      if (v >= codomain_.order()) throw std::invalid_argument("table entry out of codomain");
  }

  static GroupFunction from_elements(const FiniteAbelianGroup& domain,
                                     const FiniteAbelianGroup& codomain,
                                     const std::vector<GroupElement>& values) {
    std::vector<std::uint32_t> t;
    t.reserve(values.size());
    for (const auto& v : values) {
      if (v.group() != codomain)
        throw std::invalid_argument("table value not in the codomain");
      t.push_back(static_cast<std::uint32_t>(codomain.rank(v)));
    }
    return GroupFunction(domain, codomain, std::move(t));
  }

  const FiniteAbelianGroup& domain() const { return domain_; }
  const FiniteAbelianGroup& codomain() const { return codomain_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  std::uint32_t at_rank(std::uint64_t r) const { return table_[r]; }

  GroupElement operator()(const GroupElement& x) const {
    return codomain_.unrank(table_[domain_.rank(x)]);
  }

  bool is_zero() const {
    for (auto v : table_)
      if (v != 0) return false;
    return true;
  }

  bool is_constant() const {
    for (auto v : table_)
      if (v != table_[0]) return false;
    return true;
  }

  /// Pointwise sum; domains and codomains must match.
  friend GroupFunction operator+(const GroupFunction& f, const GroupFunction& g) {
    f.require_compatible(g);
    std::vector<std::uint32_t> t(f.table_.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = static_cast<std::uint32_t>(f.codomain_.add_ranks(f.table_[i], g.table_[i]));
    return GroupFunction(f.domain_, f.codomain_, std::move(t));
  }

  friend GroupFunction operator-(const GroupFunction& f) {
    std::vector<std::uint32_t> t(f.table_.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = static_cast<std::uint32_t>(f.codomain_.neg_rank(f.table_[i]));
    return GroupFunction(f.domain_, f.codomain_, std::move(t));
  }

  friend bool operator==(const GroupFunction& f, const GroupFunction& g) {
    return f.domain_ == g.domain_ && f.codomain_ == g.codomain_ && f.table_ == g.table_;
  }
  friend bool operator!=(const GroupFunction& f, const GroupFunction& g) { return !(f == g); }

 private:
  void require_compatible(const GroupFunction& g) const {
    if (domain_ != g.domain_ || codomain_ != g.codomain_)
      throw std::invalid_argument("functions have different domain or codomain");
  }

  FiniteAbelianGroup domain_;
  FiniteAbelianGroup codomain_;
  std::vector<std::uint32_t> table_;
};

inline GroupFunction constant_fn(const FiniteAbelianGroup& domain,
                                 const FiniteAbelianGroup& codomain, const GroupElement& b) {
  if (b.group() != codomain) throw std::invalid_argument("constant value not in codomain");
  return GroupFunction(domain, codomain,
                       std::vector<std::uint32_t>(
                           domain.order(), static_cast<std::uint32_t>(codomain.rank(b))));
}

inline GroupFunction zero_fn(const FiniteAbelianGroup& domain,
                             const FiniteAbelianGroup& codomain) {
  return constant_fn(domain, codomain, codomain.zero());
}

/// The characteristic function sending `a` to `b` and everything else to 0.
inline GroupFunction char_fn(const FiniteAbelianGroup& domain, const GroupElement& a,
                             const FiniteAbelianGroup& codomain, const GroupElement& b) {
  if (a.group() != domain) throw std::invalid_argument("support point not in domain");
  if (b.group() != codomain) throw std::invalid_argument("value not in codomain");
  std::vector<std::uint32_t> t(domain.order(), 0);
  t[domain.rank(a)] = static_cast<std::uint32_t>(codomain.rank(b));
  return GroupFunction(domain, codomain, std::move(t));
}

/// The homomorphism determined by images of the standard generators (one
/// image per nontrivial cyclic factor, in factor order). Each image's order
/// must divide its generator's cyclic order.
inline GroupFunction hom_fn(const FiniteAbelianGroup& domain,
                            const FiniteAbelianGroup& codomain,
                            const std::vector<GroupElement>& generator_images) {
  const auto gens = domain.standard_generators();
  if (generator_images.size() != gens.size())
    throw std::invalid_argument("need exactly one image per nontrivial cyclic factor");
  std::vector<std::uint64_t> image_ranks;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& img = generator_images[i];
    if (img.group() != codomain) throw std::invalid_argument("generator image not in codomain");
    const std::uint64_t gen_order = gens[i].order();
    if (gen_order % img.order() != 0)
      throw std::invalid_argument("generator image order does not divide the factor order");
    image_ranks.push_back(codomain.rank(img));
  }
  std::vector<std::uint32_t> t(domain.order());
  std::vector<std::uint64_t> gen_ranks;
  for (const auto& g : gens) gen_ranks.push_back(domain.rank(g));
  for (std::uint64_t r = 0; r < domain.order(); ++r) {
    const auto coords = domain.coords_of_rank(r);
    std::uint64_t v = 0;
    std::size_t gi = 0;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (domain.cyclic_orders()[j] == 1) continue;
      v = codomain.add_ranks(v, codomain.scale_rank(coords[j], image_ranks[gi]));
      ++gi;
    }
    t[r] = static_cast<std::uint32_t>(v);
  }
  return GroupFunction(domain, codomain, std::move(t));
}

/// Identity on a group.
inline GroupFunction identity_fn(const FiniteAbelianGroup& g) {
  std::vector<std::uint32_t> t(g.order());
  for (std::uint64_t r = 0; r < g.order(); ++r) t[r] = static_cast<std::uint32_t>(r);
  return GroupFunction(g, g, std::move(t));
}

}  // namespace fundeg
