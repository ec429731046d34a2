#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fundeg/function.hpp"
#include "fundeg/group.hpp"
#include "fundeg/group_ring.hpp"

namespace fundeg {

/// A degree value: a nonnegative integer or infinity.
class Degree {
 public:
  Degree() : infinite_(false), value_(0) {}
  explicit Degree(std::uint64_t v) : infinite_(false), value_(v) {}
  static Degree infinity() {
    Degree d;
    d.infinite_ = true;
    return d;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  std::uint64_t value() const {
    if (infinite_) throw std::logic_error("infinite degree has no numeric value");
    return value_;
  }

  friend bool operator==(const Degree& a, const Degree& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }
  friend bool operator<(const Degree& a, const Degree& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Degree& a, const Degree& b) { return a < b || a == b; }
  friend bool operator>(const Degree& a, const Degree& b) { return b < a; }
  friend bool operator>=(const Degree& a, const Degree& b) { return b <= a; }

  friend Degree operator+(const Degree& a, const Degree& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Degree(a.value_ + b.value_);
  }

  static Degree max(const Degree& a, const Degree& b) { return a < b ? b : a; }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

  friend std::ostream& operator<<(std::ostream& os, const Degree& d) {
    return os << d.to_string();
  }

 private:
  bool infinite_;
  std::uint64_t value_;
};

namespace detail {

struct TableHash {
  std::size_t operator()(const std::vector<std::uint32_t>& t) const {
    // FNV-1a over the entries.
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : t) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline bool table_is_zero(const std::vector<std::uint32_t>& t) {
  for (auto v : t)
    if (v) return false;
  return true;
}

/// Degree of a function between two p-groups for one prime, by level-set
/// search over products of generator difference operators. Level m holds
/// the distinct nonzero tables obtainable by applying m such operators;
/// the degree is the last level with a nonzero member. Deduplication keys
/// on the whole table: the operators commute, so multisets of generators
/// collide and the level width stays bounded by the number of distinct
/// tables. The search must end by the p-group degree bound; running past
/// it means the implementation is broken, not the input.
inline std::uint64_t p_group_degree(const GroupFunction& f, std::uint64_t p) {
  const auto& A = f.domain();
  const auto& B = f.codomain();
  if (table_is_zero(f.table()) || f.is_constant() || A.order() == 1 || B.order() == 1)
    return 0;

  std::uint64_t domain_sum = 0;  // sum of (p^alpha_i - 1)
  for (auto n : A.cyclic_orders()) domain_sum += n - 1;
  std::uint64_t beta = 0;  // exp(B) = p^beta
  for (std::uint64_t e = B.exponent(); e > 1; e /= p) ++beta;
  const std::uint64_t bound = beta * domain_sum;

  // Shift permutation per generator.
  std::vector<std::vector<std::uint32_t>> shift;
  for (const auto& g : A.standard_generators()) {
    const std::uint64_t gr = A.rank(g);
    std::vector<std::uint32_t> perm(A.order());
    for (std::uint64_t x = 0; x < A.order(); ++x)
      perm[x] = static_cast<std::uint32_t>(A.add_ranks(x, gr));
    shift.push_back(std::move(perm));
  }

  std::vector<std::vector<std::uint32_t>> level{f.table()};
  std::uint64_t m = 0;
  while (true) {
    std::unordered_set<std::vector<std::uint32_t>, TableHash> next;
    for (const auto& t : level) {
      for (const auto& perm : shift) {
        std::vector<std::uint32_t> d(t.size());
        for (std::size_t x = 0; x < t.size(); ++x)
          d[x] = static_cast<std::uint32_t>(B.sub_ranks(t[perm[x]], t[x]));
        if (!table_is_zero(d)) next.insert(std::move(d));
      }
    }
    if (next.empty()) return m;
    ++m;
    if (m > bound)
      throw std::logic_error("degree search exceeded the p-group bound (internal invariant violation)");
    level.assign(next.begin(), next.end());
  }
}

}  // namespace detail

/// Per-prime breakdown of a degree computation.
struct DegreeReport {
  Degree degree;
  /// One entry per prime dividing the codomain order: (prime, degree of the
  /// p-component). Only present for finite results.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> per_prime;
  /// For infinite results: a witnessing pair (p, q) of distinct primes such
  /// that the q-part of the value moves when only the p-part of the
  /// argument changes.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> infinite_witness;
};

/// Exact functional degree of f with the full per-prime report.
///
/// The computation splits both groups into their p-components. The degree
/// is finite exactly when each q-component of the value depends only on
/// the q-component of the argument; in that case f decomposes into
/// independent p-group functions and the degree is the maximum of their
/// degrees, each found by the generator level-set search.
inline DegreeReport functional_degree_report(const GroupFunction& f) {
  DegreeReport rep;
  const auto& A = f.domain();
  const auto& B = f.codomain();
  if (A.order() == 1 || B.order() == 1) {
    rep.degree = Degree(0);
    return rep;
  }

  const PrimaryDecomposition PA(A), PB(B);

  // Finiteness: for distinct primes p | |A|, q | |B|, the q-part of f may
  // not depend on the p-part of the argument.
  for (std::size_t qi = 0; qi < PB.primes().size(); ++qi) {
    const std::uint64_t q = PB.primes()[qi];
    for (std::size_t pi = 0; pi < PA.primes().size(); ++pi) {
      const std::uint64_t p = PA.primes()[pi];
      if (p == q) continue;
      for (std::uint64_t x = 0; x < A.order(); ++x) {
        // Zero the p-part of x.
        std::vector<std::uint64_t> parts(PA.primes().size());
        for (std::size_t i = 0; i < parts.size(); ++i)
          parts[i] = (i == pi) ? 0 : PA.project_rank(i, x);
        const std::uint64_t x0 = PA.combine_ranks(parts);
        if (PB.project_rank(qi, f.at_rank(x)) != PB.project_rank(qi, f.at_rank(x0))) {
          rep.degree = Degree::infinity();
          rep.infinite_witness = std::make_pair(p, q);
          return rep;
        }
      }
    }
  }

  // Finite: split into per-prime components and search each one.
  std::uint64_t best = 0;
  for (std::size_t qi = 0; qi < PB.primes().size(); ++qi) {
    const std::uint64_t q = PB.primes()[qi];
    const auto& Bq = PB.components()[qi];
    std::uint64_t deg_q = 0;
    auto it = std::find(PA.primes().begin(), PA.primes().end(), q);
    if (it == PA.primes().end()) {
      // Trivial q-part of the domain: the component is constant (already
      // verified above), so it contributes degree 0.
      deg_q = 0;
    } else {
      const std::size_t ai = static_cast<std::size_t>(it - PA.primes().begin());
      const auto& Aq = PA.components()[ai];
      std::vector<std::uint32_t> t(Aq.order());
      for (std::uint64_t xa = 0; xa < Aq.order(); ++xa)
        t[xa] = static_cast<std::uint32_t>(
            PB.project_rank(qi, f.at_rank(PA.lift_rank(ai, xa))));
      deg_q = detail::p_group_degree(GroupFunction(Aq, Bq, std::move(t)), q);
    }
    rep.per_prime.emplace_back(q, deg_q);
    best = std::max(best, deg_q);
  }
  rep.degree = Degree(best);
  return rep;
}

inline Degree functional_degree(const GroupFunction& f) { return functional_degree_report(f).degree; }

/// Result of the slow brute-force degree oracle.
struct OracleResult {
  bool exceeded_cap = false;
  Degree degree;  // meaningful only when !exceeded_cap
};

/// Independent slow oracle: searches products of difference operators taken
/// over the FULL group (not just generators), with no primary splitting and
/// no finiteness shortcut. Intended for cross-validating `fundeg` on tiny
/// domains. Reports exceeded_cap when the degree cannot be certified within
/// `cap` operator applications (in particular for functions of infinite
/// degree).
inline OracleResult functional_degree_oracle(const GroupFunction& f, std::uint64_t cap = 8) {
  const auto& A = f.domain();
  const auto& B = f.codomain();
  if (A.order() > 16) throw std::invalid_argument("oracle domain capped at 16 elements");
  if (cap > 8) throw std::invalid_argument("oracle level cap is 8");

  std::vector<std::vector<std::uint32_t>> shift;
  for (std::uint64_t a = 0; a < A.order(); ++a) {
    std::vector<std::uint32_t> perm(A.order());
    for (std::uint64_t x = 0; x < A.order(); ++x)
      perm[x] = static_cast<std::uint32_t>(A.add_ranks(x, a));
    shift.push_back(std::move(perm));
  }

  std::vector<std::vector<std::uint32_t>> level;
  if (!detail::table_is_zero(f.table())) level.push_back(f.table());
  std::uint64_t m = 0;
  while (true) {
    if (level.empty()) return OracleResult{false, Degree(m == 0 ? 0 : m - 1)};
    if (m == cap + 1) return OracleResult{true, Degree()};
    std::unordered_set<std::vector<std::uint32_t>, detail::TableHash> next;
    for (const auto& t : level)
      for (const auto& perm : shift) {
        std::vector<std::uint32_t> d(t.size());
        for (std::size_t x = 0; x < t.size(); ++x)
          d[x] = static_cast<std::uint32_t>(B.sub_ranks(t[perm[x]], t[x]));
        if (!detail::table_is_zero(d)) next.insert(std::move(d));
      }
    level.assign(next.begin(), next.end());
    ++m;
  }
}

/// Partial degree of f in its i-th argument (0-based), for a domain that is
/// explicitly presented as the product of `factors` (their concatenated
/// coordinates must form the domain). The value is the supremum over all
/// contexts of the degree of the one-argument section.
inline Degree partial_degree(const GroupFunction& f, const std::vector<FiniteAbelianGroup>& factors,
                      std::size_t i) {
  if (i >= factors.size()) throw std::out_of_range("partial-degree index out of range");
  if (product_group(factors) != f.domain())
    throw std::invalid_argument("factor presentation does not match the domain");

  // Block strides within the concatenated rank.
  std::vector<std::uint64_t> bstride(factors.size(), 1);
  for (std::size_t j = factors.size(); j-- > 1;)
    bstride[j - 1] = bstride[j] * factors[j].order();

  const auto& Ai = factors[i];
  std::uint64_t context_count = 1;
  for (std::size_t j = 0; j < factors.size(); ++j)
    if (j != i) context_count *= factors[j].order();

  Degree best(0);
  for (std::uint64_t c = 0; c < context_count; ++c) {
    // Decode the context into block ranks for the non-i positions.
    std::uint64_t base = 0, rem = c;
    for (std::size_t j = factors.size(); j-- > 0;) {
      if (j == i) continue;
      const std::uint64_t bj = rem % factors[j].order();
      rem /= factors[j].order();
      base += bj * bstride[j];
    }
    std::vector<std::uint32_t> t(Ai.order());
    for (std::uint64_t x = 0; x < Ai.order(); ++x)
      t[x] = f.at_rank(base + x * bstride[i]);
    best = Degree::max(best, functional_degree(GroupFunction(Ai, f.codomain(), std::move(t))));
    if (best.is_infinite()) return best;
  }
  return best;
}

/// The supremum of fundeg over all functions A -> B. Finite exactly when
/// both groups are p-groups for one common prime (or either is trivial),
/// and then attained by the characteristic function of 0 with a value of
/// maximal order.
inline Degree delta(const FiniteAbelianGroup& A, const FiniteAbelianGroup& B) {
  if (A.trivial() || B.trivial()) return Degree(0);
  const auto pa = A.primes(), pb = B.primes();
  if (pa.size() != 1 || pb.size() != 1 || pa[0] != pb[0]) return Degree::infinity();
  return functional_degree(char_fn(A, A.zero(), B, B.max_order_element()));
}

inline GroupFunction compose(const GroupFunction& g, const GroupFunction& f) {
  if (f.codomain() != g.domain())
    throw std::invalid_argument("compose: codomain of the inner function must be the domain of the outer");
  std::vector<std::uint32_t> t(f.domain().order());
  for (std::uint64_t x = 0; x < f.domain().order(); ++x) t[x] = g.at_rank(f.at_rank(x));
  return GroupFunction(f.domain(), g.codomain(), std::move(t));
}

/// x -> (f(x), g(x)) into the product of the codomains.
inline GroupFunction combine(const GroupFunction& f, const GroupFunction& g) {
  if (f.domain() != g.domain()) throw std::invalid_argument("combine: domains differ");
  const auto BC = product_group({f.codomain(), g.codomain()});
  const std::uint64_t cs = g.codomain().order();
  std::vector<std::uint32_t> t(f.domain().order());
  for (std::uint64_t x = 0; x < f.domain().order(); ++x)
    t[x] = static_cast<std::uint32_t>(f.at_rank(x) * cs + g.at_rank(x));
  return GroupFunction(f.domain(), BC, std::move(t));
}

inline GroupFunction restrict_fn(const GroupFunction& f, const Subgroup& s) {
  if (s.ambient() != f.domain()) throw std::invalid_argument("subgroup not inside the domain");
  std::vector<std::uint32_t> t(s.group().order());
  for (std::uint64_t h = 0; h < s.group().order(); ++h) t[h] = f.at_rank(s.embed_rank(h));
  return GroupFunction(s.group(), f.codomain(), std::move(t));
}

inline GroupFunction restrict_fn(const GroupFunction& f,
                                 const std::vector<GroupElement>& subgroup_generators) {
  return restrict_fn(f, Subgroup(f.domain(), subgroup_generators));
}

}  // namespace fundeg
