#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fundeg {

/// Raised on malformed textual input (group specs, polynomials, instances).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an enumeration or search exceeds a configured resource cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

class GroupElement;

/// A finite abelian group presented as a product of cyclic groups
/// Z_{n1} x ... x Z_{nk}. The presentation is preserved as given (no
/// normalization to invariant factors); `primary_decompose` is the explicit
/// canonicalizer. Values are immutable and cheap to copy.
///
/// Elements are coordinate tuples, ranked in mixed radix with the LAST
/// coordinate varying fastest; this fixes the table layout used by all
/// dense function tables and JSON output.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<std::uint64_t>{}) {}

  explicit FiniteAbelianGroup(std::vector<std::uint64_t> cyclic_orders)
      : data_(std::make_shared<const Data>(std::move(cyclic_orders))) {}

  /// Parses the grammar `Z<int>('x'Z<int>)*`, case-insensitive and
  /// whitespace-tolerant, e.g. "Z4xZ2". Each order must be >= 1.
  static FiniteAbelianGroup parse(std::string_view text);

  const std::vector<std::uint64_t>& cyclic_orders() const { return data_->orders; }
  std::size_t num_factors() const { return data_->orders.size(); }
  std::uint64_t order() const { return data_->order; }
  std::uint64_t exponent() const { return data_->exponent; }
  bool trivial() const { return data_->order == 1; }

  /// Structural equality: same cyclic orders in the same sequence.
  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.data_ == b.data_ || a.data_->orders == b.data_->orders;
  }
  friend bool operator!=(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return !(a == b);
  }

  // Rank-level arithmetic. Ranks are dense indices in [0, order()).
  std::uint64_t add_ranks(std::uint64_t a, std::uint64_t b) const {
    check_rank(a);
    check_rank(b);
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < data_->orders.size(); ++i) {
      const std::uint64_t n = data_->orders[i], s = data_->strides[i];
      const std::uint64_t ca = (a / s) % n, cb = (b / s) % n;
      std::uint64_t c = ca + cb;
      if (c >= n) c -= n;
      r += c * s;
    }
    return r;
  }

  std::uint64_t neg_rank(std::uint64_t a) const {
    check_rank(a);
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < data_->orders.size(); ++i) {
      const std::uint64_t n = data_->orders[i], s = data_->strides[i];
      const std::uint64_t c = (a / s) % n;
      r += (c == 0 ? 0 : n - c) * s;
    }
    return r;
  }

  std::uint64_t sub_ranks(std::uint64_t a, std::uint64_t b) const {
    return add_ranks(a, neg_rank(b));
  }

  /// Rank of k*a computed by binary doubling; k may exceed the exponent.
  std::uint64_t scale_rank(std::uint64_t k, std::uint64_t a) const {
    check_rank(a);
    std::uint64_t acc = 0, base = a;
    while (k != 0) {
      if (k & 1) acc = add_ranks(acc, base);
      base = add_ranks(base, base);
      k >>= 1;
    }
    return acc;
  }

  std::vector<std::uint64_t> coords_of_rank(std::uint64_t r) const {
    check_rank(r);
    std::vector<std::uint64_t> c(data_->orders.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] = (r / data_->strides[i]) % data_->orders[i];
    return c;
  }

  std::uint64_t rank_of_coords(const std::vector<std::uint64_t>& coords) const {
    if (coords.size() != data_->orders.size())
      throw std::invalid_argument("coordinate arity does not match group");
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] >= data_->orders[i])
        throw std::invalid_argument("coordinate not a reduced residue");
      r += coords[i] * data_->strides[i];
    }
    return r;
  }

  // Element-level API (defined after GroupElement).
  GroupElement zero() const;
  GroupElement unrank(std::uint64_t r) const;
  std::uint64_t rank(const GroupElement& a) const;
  GroupElement element(std::vector<std::uint64_t> coords) const;

  /// All elements in rank order.
  std::vector<GroupElement> enumerate() const;

  /// Unit vectors of the nontrivial cyclic factors; they generate the group.
  std::vector<GroupElement> standard_generators() const;

  /// Least m >= 1 with m*a = 0, computed from the coordinates.
  std::uint64_t element_order_rank(std::uint64_t r) const {
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < data_->orders.size(); ++i) {
      const std::uint64_t n = data_->orders[i];
      const std::uint64_t c = (r / data_->strides[i]) % n;
      ord = std::lcm(ord, n / std::gcd(c, n));
    }
    return ord;
  }

  /// An element whose order equals exponent(); deterministic choice.
  GroupElement max_order_element() const;

  /// Distinct primes dividing the group order, ascending.
  std::vector<std::uint64_t> primes() const;

  /// True if |G| is a power of p (trivial groups count for every p).
  bool is_p_group(std::uint64_t p) const {
    std::uint64_t n = data_->order;
    while (n % p == 0) n /= p;
    return n == 1;
  }

  std::string to_string() const {
    if (data_->orders.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < data_->orders.size(); ++i) {
      if (i) s += 'x';
      s += 'Z';
      s += std::to_string(data_->orders[i]);
    }
    return s;
  }

 private:
  struct Data {
    std::vector<std::uint64_t> orders;
    std::vector<std::uint64_t> strides;  // strides[k-1] = 1, last coord fastest
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;

    explicit Data(std::vector<std::uint64_t> o) : orders(std::move(o)) {
      strides.resize(orders.size());
      std::uint64_t acc = 1;
      for (std::size_t i = orders.size(); i-- > 0;) {
        if (orders[i] < 1) throw std::invalid_argument("cyclic order must be >= 1");
        strides[i] = acc;
        if (acc > UINT64_MAX / orders[i])
          throw std::invalid_argument("group order overflows 64 bits");
        acc *= orders[i];
        exponent = std::lcm(exponent, orders[i]);
      }
      order = acc;
    }
  };

  void check_rank(std::uint64_t r) const {
    if (r >= data_->order) throw std::out_of_range("element rank out of range");
  }

  std::shared_ptr<const Data> data_;
};

/// An element of a specific FiniteAbelianGroup. Carries its group so that
/// cross-group misuse is a detectable error rather than silent corruption.
class GroupElement {
 public:
  GroupElement(FiniteAbelianGroup group, std::vector<std::uint64_t> coords)
      : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_.num_factors())
      throw std::invalid_argument("coordinate arity does not match group");
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] >= group_.cyclic_orders()[i])
        throw std::invalid_argument("coordinate not a reduced residue");
  }

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::uint64_t>& coords() const { return coords_; }

  std::uint64_t rank() const { return group_.rank_of_coords(coords_); }
  std::uint64_t order() const { return group_.element_order_rank(rank()); }
  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
  }

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    require_same_group(a, b);
    std::vector<std::uint64_t> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = a.coords_[i] + b.coords_[i];
      const auto n = a.group_.cyclic_orders()[i];
      if (c[i] >= n) c[i] -= n;
    }
    return GroupElement(a.group_, std::move(c));
  }

  friend GroupElement operator-(const GroupElement& a) {
    std::vector<std::uint64_t> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto n = a.group_.cyclic_orders()[i];
      c[i] = a.coords_[i] == 0 ? 0 : n - a.coords_[i];
    }
    return GroupElement(a.group_, std::move(c));
  }

  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) {
    return a + (-b);
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const GroupElement& a) {
    os << '(';
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
      if (i) os << ',';
      os << a.coords_[i];
    }
    return os << ')';
  }

  static void require_same_group(const GroupElement& a, const GroupElement& b) {
    if (a.group_ != b.group_)
      throw std::invalid_argument("elements belong to different groups");
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<std::uint64_t> coords_;
};

inline GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement(*this, std::vector<std::uint64_t>(num_factors(), 0));
}

inline GroupElement FiniteAbelianGroup::unrank(std::uint64_t r) const {
  return GroupElement(*this, coords_of_rank(r));
}

inline std::uint64_t FiniteAbelianGroup::rank(const GroupElement& a) const {
  if (a.group() != *this) throw std::invalid_argument("element belongs to a different group");
  return rank_of_coords(a.coords());
}

inline GroupElement FiniteAbelianGroup::element(std::vector<std::uint64_t> coords) const {
  return GroupElement(*this, std::move(coords));
}

inline std::vector<GroupElement> FiniteAbelianGroup::enumerate() const {
  std::vector<GroupElement> out;
  out.reserve(order());
  for (std::uint64_t r = 0; r < order(); ++r) out.push_back(unrank(r));
  return out;
}

inline std::vector<GroupElement> FiniteAbelianGroup::standard_generators() const {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < num_factors(); ++i) {
    if (cyclic_orders()[i] == 1) continue;
    std::vector<std::uint64_t> c(num_factors(), 0);
    c[i] = 1;
    gens.push_back(GroupElement(*this, std::move(c)));
  }
  return gens;
}

namespace detail {

inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> fs;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::uint32_t e = 0;
    while (n % p == 0) n /= p, ++e;
    fs.emplace_back(p, e);
  }
  if (n > 1) fs.emplace_back(n, 1);
  return fs;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

inline std::vector<std::uint64_t> FiniteAbelianGroup::primes() const {
  std::vector<std::uint64_t> ps;
  for (auto n : cyclic_orders())
    for (auto [p, e] : detail::factorize(n))
      if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  return ps;
}

inline GroupElement FiniteAbelianGroup::max_order_element() const {
  // For each prime, route its maximal power through the first factor that
  // attains it; coprime contributions inside one cyclic factor compose to
  // an element of lcm order.
  std::vector<std::uint64_t> c(num_factors(), 0);
  for (auto p : primes()) {
    std::uint32_t best_e = 0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < num_factors(); ++i) {
      std::uint64_t n = cyclic_orders()[i];
      std::uint32_t e = 0;
      while (n % p == 0) n /= p, ++e;
      if (e > best_e) best_e = e, best_i = i;
    }
    if (best_e == 0) continue;
    const std::uint64_t n = cyclic_orders()[best_i];
    c[best_i] = (c[best_i] + n / detail::ipow(p, best_e)) % n;
  }
  return GroupElement(*this, std::move(c));
}

inline FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view text) {
  std::vector<std::uint64_t> orders;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (true) {
    skip_ws();
    if (i >= text.size() || (text[i] != 'Z' && text[i] != 'z'))
      throw ParseError("expected 'Z' in group spec");
    ++i;
    skip_ws();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected integer after 'Z' in group spec");
    std::uint64_t n = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (n > (UINT64_MAX - 9) / 10) throw ParseError("cyclic order too large");
      n = n * 10 + static_cast<std::uint64_t>(text[i] - '0');
      ++i;
    }
    if (n < 1) throw ParseError("cyclic order must be >= 1");
    orders.push_back(n);
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != 'x' && text[i] != 'X') throw ParseError("expected 'x' between factors");
    ++i;
  }
  return FiniteAbelianGroup(std::move(orders));
}

/// Product group with the factor coordinate blocks concatenated in order.
inline FiniteAbelianGroup product_group(const std::vector<FiniteAbelianGroup>& factors) {
  std::vector<std::uint64_t> orders;
  for (const auto& g : factors)
    orders.insert(orders.end(), g.cyclic_orders().begin(), g.cyclic_orders().end());
  return FiniteAbelianGroup(std::move(orders));
}

/// n-fold product A^n.
inline FiniteAbelianGroup power_group(const FiniteAbelianGroup& base, std::uint32_t n) {
  std::vector<std::uint64_t> orders;
  orders.reserve(base.num_factors() * n);
  for (std::uint32_t i = 0; i < n; ++i)
    orders.insert(orders.end(), base.cyclic_orders().begin(), base.cyclic_orders().end());
  return FiniteAbelianGroup(std::move(orders));
}

/// CRT splitting of a group into its p-components, with explicit coordinate
/// maps between the original group and the product of the components.
///
/// Component i collects, for prime primes[i], the p-power part of every
/// cyclic factor that has one, in the original factor order.
class PrimaryDecomposition {
 public:
  explicit PrimaryDecomposition(const FiniteAbelianGroup& group) : group_(group) {
    for (auto p : group.primes()) {
      primes_.push_back(p);
      std::vector<std::uint64_t> comp_orders;
      std::vector<std::size_t> sources;
      std::vector<std::uint64_t> powers;
      for (std::size_t j = 0; j < group.num_factors(); ++j) {
        std::uint64_t n = group.cyclic_orders()[j];
        std::uint64_t q = 1;
        while (n % p == 0) n /= p, q *= p;
        if (q > 1) {
          comp_orders.push_back(q);
          sources.push_back(j);
          powers.push_back(q);
        }
      }
      components_.push_back(FiniteAbelianGroup(std::move(comp_orders)));
      source_factor_.push_back(std::move(sources));
      prime_power_.push_back(std::move(powers));
    }
  }

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const std::vector<FiniteAbelianGroup>& components() const { return components_; }

  std::size_t index_of_prime(std::uint64_t p) const {
    for (std::size_t i = 0; i < primes_.size(); ++i)
      if (primes_[i] == p) return i;
    throw std::invalid_argument("prime does not divide the group order");
  }

  /// Projection onto component i (coordinatewise residue).
  std::uint64_t project_rank(std::size_t i, std::uint64_t rank) const {
    const auto coords = group_.coords_of_rank(rank);
    std::vector<std::uint64_t> c(source_factor_[i].size());
    for (std::size_t t = 0; t < c.size(); ++t)
      c[t] = coords[source_factor_[i][t]] % prime_power_[i][t];
    return components_[i].rank_of_coords(c);
  }

  /// Embedding of component i back into the group: the unique element that
  /// is the given residue in the p-part and 0 in every other component.
  std::uint64_t lift_rank(std::size_t i, std::uint64_t comp_rank) const {
    std::vector<std::uint64_t> parts(primes_.size(), 0);
    parts[i] = comp_rank;
    return combine_ranks(parts);
  }

  /// CRT reconstruction from one rank per component.
  std::uint64_t combine_ranks(const std::vector<std::uint64_t>& comp_ranks) const {
    if (comp_ranks.size() != primes_.size())
      throw std::invalid_argument("component count mismatch");
    std::vector<std::uint64_t> coords(group_.num_factors(), 0);
    std::vector<std::uint64_t> moduli(group_.num_factors(), 1);
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      const auto cc = components_[i].coords_of_rank(comp_ranks[i]);
      for (std::size_t t = 0; t < cc.size(); ++t) {
        const std::size_t j = source_factor_[i][t];
        const std::uint64_t q = prime_power_[i][t];
        // Merge residue cc[t] mod q into the running CRT residue for factor j.
        coords[j] = crt_pair(coords[j], moduli[j], cc[t], q);
        moduli[j] *= q;
      }
    }
    return group_.rank_of_coords(coords);
  }

  GroupElement project(std::size_t i, const GroupElement& a) const {
    return components_[i].unrank(project_rank(i, group_.rank(a)));
  }

  GroupElement lift(std::size_t i, const GroupElement& a) const {
    return group_.unrank(lift_rank(i, components_[i].rank(a)));
  }

 private:
  // x = a mod m, x = b mod q with gcd(m, q) = 1; returns x mod m*q.
  static std::uint64_t crt_pair(std::uint64_t a, std::uint64_t m, std::uint64_t b,
                                std::uint64_t q) {
    for (std::uint64_t x = a; ; x += m)
      if (x % q == b) return x;
  }

  FiniteAbelianGroup group_;
  std::vector<std::uint64_t> primes_;
  std::vector<FiniteAbelianGroup> components_;
  std::vector<std::vector<std::size_t>> source_factor_;
  std::vector<std::vector<std::uint64_t>> prime_power_;
};

inline PrimaryDecomposition primary_decompose(const FiniteAbelianGroup& g) {
  return PrimaryDecomposition(g);
}

/// A subgroup of an ambient group, materialized from generators by closure
/// and equipped with its own cyclic presentation plus the embedding.
class Subgroup {
 public:
  Subgroup(const FiniteAbelianGroup& ambient, const std::vector<GroupElement>& generators)
      : ambient_(ambient) {
    for (const auto& g : generators)
      if (g.group() != ambient)
        throw std::invalid_argument("subgroup generator not in ambient group");

    // Exhaustive closure under addition.
    std::vector<char> in_set(ambient.order(), 0);
    std::vector<std::uint64_t> worklist{0};
    in_set[0] = 1;
    std::vector<std::uint64_t> gen_ranks;
    for (const auto& g : generators) gen_ranks.push_back(ambient.rank(g));
    for (std::size_t head = 0; head < worklist.size(); ++head) {
      for (auto gr : gen_ranks) {
        const std::uint64_t nxt = ambient.add_ranks(worklist[head], gr);
        if (!in_set[nxt]) {
          in_set[nxt] = 1;
          worklist.push_back(nxt);
        }
      }
    }
    elements_ = std::move(worklist);
    std::sort(elements_.begin(), elements_.end());

    // Structure recovery: per prime, greedily pick elements of maximal order
    // in the quotient by the span so far, requiring the element's own order
    // to equal its quotient order (such picks always exist in a p-group and
    // yield an internal direct sum).
    std::vector<std::uint64_t> basis;
    std::vector<std::uint64_t> basis_orders;
    std::uint64_t n = elements_.size();
    for (auto [p, e] : detail::factorize(n)) {
      (void)e;
      std::vector<std::uint64_t> p_part;
      for (auto r : elements_)
        if (is_prime_power(ambient.element_order_rank(r), p)) p_part.push_back(r);
      std::vector<char> span(ambient.order(), 0);
      span[0] = 1;
      std::uint64_t span_size = 1;
      while (span_size < p_part.size()) {
        std::uint64_t best = 0, best_ord = 0;
        for (auto r : p_part) {
          const std::uint64_t qord = quotient_order(r, span);
          if (qord > best_ord && ambient.element_order_rank(r) == qord) {
            best_ord = qord;
            best = r;
          }
        }
        if (best_ord <= 1)
          throw std::logic_error("subgroup structure recovery failed");
        basis.push_back(best);
        basis_orders.push_back(best_ord);
        // span += <best>
        std::vector<std::uint64_t> old;
        for (std::uint64_t r = 0; r < ambient.order(); ++r)
          if (span[r]) old.push_back(r);
        for (auto r : old) {
          std::uint64_t cur = r;
          for (std::uint64_t k = 1; k < best_ord; ++k) {
            cur = ambient.add_ranks(cur, best);
            span[cur] = 1;
          }
        }
        span_size *= best_ord;
      }
    }

    group_ = FiniteAbelianGroup(basis_orders.empty()
                                    ? std::vector<std::uint64_t>{1}
                                    : basis_orders);
    embed_.resize(group_.order());
    for (std::uint64_t r = 0; r < group_.order(); ++r) {
      const auto coords = group_.coords_of_rank(r);
      std::uint64_t amb = 0;
      for (std::size_t i = 0; i < basis.size(); ++i)
        amb = ambient.add_ranks(amb, ambient.scale_rank(coords[i], basis[i]));
      embed_[r] = amb;
    }
    // Sanity: the embedding must be a bijection onto the closure.
    auto sorted = embed_;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != elements_)
      throw std::logic_error("subgroup structure recovery failed");
  }

  const FiniteAbelianGroup& ambient() const { return ambient_; }
  const FiniteAbelianGroup& group() const { return group_; }
  std::uint64_t order() const { return elements_.size(); }
  const std::vector<std::uint64_t>& element_ranks() const { return elements_; }
  std::uint64_t embed_rank(std::uint64_t subgroup_rank) const { return embed_[subgroup_rank]; }
  bool contains_rank(std::uint64_t ambient_rank) const {
    return std::binary_search(elements_.begin(), elements_.end(), ambient_rank);
  }

 private:
  static bool is_prime_power(std::uint64_t n, std::uint64_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
  }

  std::uint64_t quotient_order(std::uint64_t r, const std::vector<char>& span) const {
    std::uint64_t cur = r, m = 1;
    while (!span[cur]) {
      cur = ambient_.add_ranks(cur, r);
      ++m;
    }
    return m;
  }

  FiniteAbelianGroup ambient_;
  FiniteAbelianGroup group_;
  std::vector<std::uint64_t> elements_;
  std::vector<std::uint64_t> embed_;
};

}  // namespace fundeg
