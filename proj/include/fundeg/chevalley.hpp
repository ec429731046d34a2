#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fundeg/degree.hpp"
#include "fundeg/finite_field.hpp"
#include "fundeg/function.hpp"
#include "fundeg/group.hpp"
#include "fundeg/rings_nc.hpp"

namespace fundeg {

/// Outcome of one verifier run. `conclusion_holds` is only set when the
/// hypothesis holds; a hypothesis-failing instance is vacuous and asserts
/// nothing. A set-but-false conclusion is a refuted theorem instance,
/// which callers must treat as a hard failure.
struct VerifierReport {
  std::string theorem_id;
  bool hypothesis_holds = false;
  std::uint64_t hypothesis_lhs = 0;  // the inequality is lhs > rhs
  std::uint64_t hypothesis_rhs = 0;
  std::string hypothesis_text;
  std::uint64_t zero_count = 0;
  std::optional<bool> conclusion_holds;
  std::optional<std::uint64_t> divisor;      // divisibility conclusions
  std::optional<std::uint64_t> lower_bound;  // count lower-bound conclusions
  std::optional<std::vector<std::uint64_t>> witness;  // coords of a relevant point
  std::vector<Degree> computed_degrees;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;

  bool passed() const { return !hypothesis_holds || (conclusion_holds && *conclusion_holds); }
};

namespace detail {

/// Deterministic chunked parallel count of points satisfying a predicate.
inline std::uint64_t parallel_count(std::uint64_t npoints,
                                    const std::function<bool(std::uint64_t)>& pred,
                                    unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunk = 1u << 14;
  const std::uint64_t nchunks = (npoints + chunk - 1) / chunk;
  if (threads == 1 || nchunks <= 1) {
    std::uint64_t c = 0;
    for (std::uint64_t x = 0; x < npoints; ++x)
      if (pred(x)) ++c;
    return c;
  }
  std::vector<std::uint64_t> counts(nchunks, 0);
  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> next{0};
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= nchunks) return;
        const std::uint64_t lo = i * chunk, hi = std::min(npoints, lo + chunk);
        std::uint64_t c = 0;
        for (std::uint64_t x = lo; x < hi; ++x)
          if (pred(x)) ++c;
        counts[i] = c;
      }
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto c : counts) total += c;  // fixed chunk order
  return total;
}

inline void require_common_domain(const std::vector<GroupFunction>& fs) {
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (fs[i].domain() != fs[0].domain())
      throw std::invalid_argument("system functions must share one domain");
}

/// The single common prime of a family of p-groups; throws when the groups
/// mix primes. Trivial groups are p-groups for every p.
inline std::uint64_t common_prime(const std::vector<FiniteAbelianGroup>& groups) {
  std::uint64_t p = 0;
  for (const auto& g : groups)
    for (auto q : g.primes()) {
      if (p == 0) p = q;
      if (p != q) throw std::invalid_argument("groups are not p-groups for a common prime");
    }
  if (p == 0) throw std::invalid_argument("all groups are trivial; no prime is determined");
  return p;
}

inline std::uint64_t degree_weight(const FiniteAbelianGroup& g) {
  std::uint64_t s = 0;
  for (auto n : g.cyclic_orders()) s += n - 1;
  return s;
}

}  // namespace detail

/// Exact number of common zeros of a system of table-functions over their
/// shared domain, or over an explicit subgroup of it. An empty system
/// counts the whole domain.
inline std::uint64_t count_zeros(const FiniteAbelianGroup& domain,
                                 const std::vector<GroupFunction>& fs,
                                 const std::optional<Subgroup>& restriction = std::nullopt,
                                 std::uint64_t point_cap = (1u << 24), unsigned threads = 1) {
  detail::require_common_domain(fs);
  if (!fs.empty() && fs[0].domain() != domain)
    throw std::invalid_argument("functions are not defined on the stated domain");
  if (restriction && restriction->ambient() != domain)
    throw std::invalid_argument("restriction subgroup not inside the domain");

  if (restriction) {
    const auto& ranks = restriction->element_ranks();
    if (ranks.size() > point_cap) throw CapExceeded("zero counting exceeds the point cap");
    std::uint64_t c = 0;
    for (auto x : ranks) {
      bool all = true;
      for (const auto& f : fs)
        if (f.at_rank(x) != 0) {
          all = false;
          break;
        }
      if (all) ++c;
    }
    return c;
  }
  if (domain.order() > point_cap) throw CapExceeded("zero counting exceeds the point cap");
  return detail::parallel_count(
      domain.order(),
      [&fs](std::uint64_t x) {
        for (const auto& f : fs)
          if (f.at_rank(x) != 0) return false;
        return true;
      },
      threads);
}

namespace detail {

/// Shared body of the group-case verifiers: evaluates the two-group
/// inequality N * sum(p^alpha_i - 1) > (sum of degrees) * sum(p^beta_j - 1)
/// with recomputed degrees.
inline VerifierReport group_case_report(const std::string& theorem_id,
                                        const FiniteAbelianGroup& base, std::uint32_t N,
                                        const FiniteAbelianGroup& codomain,
                                        const std::vector<GroupFunction>& fs,
                                        const std::vector<std::optional<std::uint64_t>>& declared,
                                        std::uint64_t point_cap, unsigned threads) {
  require_common_domain(fs);
  const FiniteAbelianGroup domain = power_group(base, N);
  for (const auto& f : fs) {
    if (f.domain() != domain) throw std::invalid_argument("function domain is not A^N");
    if (f.codomain() != codomain) throw std::invalid_argument("function codomain mismatch");
  }
  const std::uint64_t p = common_prime({base, codomain});

  VerifierReport rep;
  rep.theorem_id = theorem_id;
  std::uint64_t degsum = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Degree d = functional_degree(fs[i]);
    rep.computed_degrees.push_back(d);
    degsum += d.value();  // finite: same-prime p-groups
    if (i < declared.size() && declared[i] && *declared[i] != d.value())
      rep.warnings.push_back("function " + std::to_string(i) + ": declared degree " +
                             std::to_string(*declared[i]) + " differs from computed " +
                             d.to_string() + "; computed value governs");
  }
  rep.hypothesis_lhs = static_cast<std::uint64_t>(N) * degree_weight(base);
  rep.hypothesis_rhs = degsum * degree_weight(codomain);
  rep.hypothesis_text = "N*sum(p^a_i-1) = " + std::to_string(rep.hypothesis_lhs) + " > " +
                        std::to_string(rep.hypothesis_rhs) + " = (sum fundeg)*sum(p^b_j-1)";
  rep.hypothesis_holds = rep.hypothesis_lhs > rep.hypothesis_rhs;
  rep.divisor = p;
  rep.zero_count = count_zeros(domain, fs, std::nullopt, point_cap, threads);
  if (!rep.hypothesis_holds) {
    rep.notes.push_back("hypothesis fails; no conclusion asserted");
    return rep;
  }
  if (theorem_id == "chevalley_group") {
    rep.conclusion_holds = (rep.zero_count != 1);
    if (rep.zero_count == 1) {
      for (std::uint64_t x = 0; x < domain.order(); ++x) {
        bool all = true;
        for (const auto& f : fs)
          if (f.at_rank(x) != 0) all = false;
        if (all) {
          rep.witness = domain.coords_of_rank(x);
          break;
        }
      }
    }
  } else {
    rep.conclusion_holds = (rep.zero_count % p == 0);
  }
  return rep;
}

}  // namespace detail

/// V(f_1,...,f_r) is not a singleton when N*sum(p^a_i-1) over the domain
/// presentation exceeds (sum of functional degrees)*sum(p^b_j-1) over the
/// codomain presentation. Degrees are recomputed; declared values only
/// produce warnings.
inline VerifierReport verify_chevalley_group(
    const FiniteAbelianGroup& base, std::uint32_t N, const FiniteAbelianGroup& codomain,
    const std::vector<GroupFunction>& fs,
    const std::vector<std::optional<std::uint64_t>>& declared = {},
    std::uint64_t point_cap = (1u << 24), unsigned threads = 1) {
  return detail::group_case_report("chevalley_group", base, N, codomain, fs, declared, point_cap,
                                   threads);
}

/// Same hypothesis as the Chevalley case; concludes p | |V|.
inline VerifierReport verify_warning1_group(
    const FiniteAbelianGroup& base, std::uint32_t N, const FiniteAbelianGroup& codomain,
    const std::vector<GroupFunction>& fs,
    const std::vector<std::optional<std::uint64_t>>& declared = {},
    std::uint64_t point_cap = (1u << 24), unsigned threads = 1) {
  return detail::group_case_report("warning1_group", base, N, codomain, fs, declared, point_cap,
                                   threads);
}

/// Noncommutative-ring case: for polynomial expressions over a finite ring
/// of prime-power order, N > sum of syntactic degrees forces p | |V|.
inline VerifierReport verify_warning1_ring(const FiniteRing& ring, std::uint32_t N,
                                           const std::vector<NcPolyExpression>& fs,
                                           std::uint64_t point_cap = (1u << 24),
                                           unsigned threads = 1) {
  const auto factors = detail::factorize(ring.size());
  if (factors.size() != 1)
    throw std::invalid_argument("ring order must be a prime power");
  const std::uint64_t p = factors[0].first;

  VerifierReport rep;
  rep.theorem_id = "warning1_ring";
  std::uint64_t degsum = 0;
  for (const auto& f : fs) {
    if (f.ring() != ring) throw std::invalid_argument("expression over a different ring");
    if (f.nvars() > N) throw std::invalid_argument("expression uses more than N variables");
    const std::uint64_t d = nc_degree(f);
    rep.computed_degrees.push_back(Degree(d));
    degsum += d;
  }
  rep.hypothesis_lhs = N;
  rep.hypothesis_rhs = degsum;
  rep.hypothesis_text =
      "N = " + std::to_string(N) + " > " + std::to_string(degsum) + " = sum deg";
  rep.hypothesis_holds = N > degsum;
  rep.divisor = p;

  const std::uint64_t rsize = ring.size();
  std::uint64_t npoints = 1;
  for (std::uint32_t i = 0; i < N; ++i) {
    if (npoints > point_cap / rsize) throw CapExceeded("zero counting exceeds the point cap");
    npoints *= rsize;
  }
  rep.zero_count = detail::parallel_count(
      npoints,
      [&](std::uint64_t x) {
        std::vector<std::uint64_t> point(N);
        std::uint64_t rem = x;
        for (std::uint32_t v = N; v-- > 0;) {
          point[v] = rem % rsize;
          rem /= rsize;
        }
        for (const auto& f : fs) {
          std::vector<std::uint64_t> pt(point.begin(), point.begin() + f.nvars());
          if (f.evaluate_ranks(pt) != ring.zero_rank()) return false;
        }
        return true;
      },
      threads);
  if (!rep.hypothesis_holds) {
    rep.notes.push_back("hypothesis fails; no conclusion asserted");
    return rep;
  }
  rep.conclusion_holds = (rep.zero_count % p == 0);
  return rep;
}

namespace detail {

inline std::uint64_t count_poly_zeros(const FiniteField& field,
                                      const std::vector<MultivariatePolynomial>& fs,
                                      std::uint32_t N, std::uint64_t point_cap, unsigned threads,
                                      const std::optional<Subgroup>& restriction = std::nullopt) {
  const std::uint64_t q = field.q();
  std::uint64_t npoints = 1;
  for (std::uint32_t i = 0; i < N; ++i) {
    if (npoints > point_cap / q) throw CapExceeded("zero counting exceeds the point cap");
    npoints *= q;
  }
  const std::uint32_t alpha = field.alpha();
  const FiniteAbelianGroup domain = power_group(field.additive_group(), N);

  auto zero_at_rank = [&](std::uint64_t r) {
    const auto coords = domain.coords_of_rank(r);
    std::vector<FqElement> point(N);
    for (std::uint32_t v = 0; v < N; ++v)
      point[v] = FqElement{std::vector<std::uint64_t>(coords.begin() + v * alpha,
                                                      coords.begin() + (v + 1) * alpha)};
    for (const auto& f : fs) {
      std::vector<FqElement> pt(point.begin(), point.begin() + f.nvars());
      if (!field.is_zero(f.evaluate(pt))) return false;
    }
    return true;
  };

  if (restriction) {
    if (restriction->ambient() != domain)
      throw std::invalid_argument("restriction subgroup not inside F^N");
    std::uint64_t c = 0;
    for (auto x : restriction->element_ranks())
      if (zero_at_rank(x)) ++c;
    return c;
  }
  return parallel_count(npoints, zero_at_rank, threads);
}

}  // namespace detail

/// p-weight-degree case over a finite field: N > sum of p-weight degrees
/// forces p | |V|.
inline VerifierReport verify_warning1_field_pweight(const FiniteField& field, std::uint32_t N,
                                                    const std::vector<MultivariatePolynomial>& fs,
                                                    std::uint64_t point_cap = (1u << 24),
                                                    unsigned threads = 1) {
  VerifierReport rep;
  rep.theorem_id = "warning1_pweight";
  std::uint64_t degsum = 0;
  for (const auto& f : fs) {
    if (f.field() != field) throw std::invalid_argument("polynomial over a different field");
    if (f.nvars() > N) throw std::invalid_argument("polynomial uses more than N variables");
    const std::uint64_t d = f.pweight_degree();
    rep.computed_degrees.push_back(Degree(d));
    degsum += d;
  }
  rep.hypothesis_lhs = N;
  rep.hypothesis_rhs = degsum;
  rep.hypothesis_text =
      "N = " + std::to_string(N) + " > " + std::to_string(degsum) + " = sum pdeg";
  rep.hypothesis_holds = N > degsum;
  rep.divisor = field.p();
  rep.zero_count = detail::count_poly_zeros(field, fs, N, point_cap, threads);
  if (!rep.hypothesis_holds) {
    rep.notes.push_back("hypothesis fails; no conclusion asserted");
    return rep;
  }
  rep.conclusion_holds = (rep.zero_count % field.p() == 0);
  return rep;
}

/// Restricted-domain case: common zeros are counted inside a subgroup A of
/// (F^N, +) with |A| = p^M; M > alpha * sum pdeg forces p | |V /\ A|.
inline VerifierReport verify_restricted_subgroup(const FiniteField& field, std::uint32_t N,
                                                 const std::vector<MultivariatePolynomial>& fs,
                                                 const std::vector<GroupElement>& subgroup_gens,
                                                 std::uint64_t point_cap = (1u << 24),
                                                 unsigned threads = 1) {
  const FiniteAbelianGroup domain = power_group(field.additive_group(), N);
  const Subgroup sub(domain, subgroup_gens);

  std::uint64_t M = 0;
  for (std::uint64_t s = sub.order(); s > 1; s /= field.p()) {
    if (s % field.p() != 0) throw std::logic_error("subgroup order is not a power of p");
    ++M;
  }

  VerifierReport rep;
  rep.theorem_id = "restricted_subgroup";
  std::uint64_t degsum = 0;
  for (const auto& f : fs) {
    if (f.field() != field) throw std::invalid_argument("polynomial over a different field");
    if (f.nvars() > N) throw std::invalid_argument("polynomial uses more than N variables");
    const std::uint64_t d = f.pweight_degree();
    rep.computed_degrees.push_back(Degree(d));
    degsum += d;
  }
  rep.hypothesis_lhs = M;
  rep.hypothesis_rhs = field.alpha() * degsum;
  rep.hypothesis_text = "M = " + std::to_string(M) + " > " +
                        std::to_string(rep.hypothesis_rhs) + " = alpha * sum pdeg";
  rep.hypothesis_holds = rep.hypothesis_lhs > rep.hypothesis_rhs;
  rep.divisor = field.p();
  rep.zero_count = detail::count_poly_zeros(field, fs, N, point_cap, threads, sub);
  if (!rep.hypothesis_holds) {
    rep.notes.push_back("hypothesis fails; no conclusion asserted");
    return rep;
  }
  rep.conclusion_holds = (rep.zero_count % field.p() == 0);
  return rep;
}

/// A function B -> Z_p that is 1 at 0, vanishes on the rest of S, and has
/// degree at most |S| - 1. Built recursively: peel one s off S with a
/// linear functional h, h(s) = 1, and multiply by (1 - h(x)).
inline GroupFunction c0_function(const FiniteAbelianGroup& B,
                                 const std::vector<GroupElement>& S) {
  const std::uint64_t p = B.exponent();
  if (!detail::is_prime(p) && !(B.trivial() && p == 1))
    throw std::invalid_argument("codomain group must have prime exponent");
  const std::uint64_t zp = detail::is_prime(p) ? p : 2;  // trivial B: any prime works
  const FiniteAbelianGroup Zp({zp});

  std::set<std::uint64_t> want;
  bool has_zero = false;
  for (const auto& s : S) {
    if (s.group() != B) throw std::invalid_argument("set element not in the group");
    if (s.is_zero()) has_zero = true;
    want.insert(B.rank(s));
  }
  if (!has_zero) throw std::invalid_argument("the set must contain 0");

  // c0 as a Z_p-valued table, built by peeling elements off the set.
  std::vector<std::uint64_t> table(B.order(), 1);
  std::vector<std::uint64_t> remaining(want.begin(), want.end());
  for (auto s_rank : remaining) {
    if (s_rank == 0) continue;
    // Linear functional with h(s) = 1: pick a coordinate where s is
    // nonzero and rescale by its inverse mod p.
    const auto coords = B.coords_of_rank(s_rank);
    std::size_t pivot = 0;
    while (coords[pivot] == 0) ++pivot;
    std::uint64_t inv = 1;
    for (std::uint64_t t = 1; t < zp; ++t)
      if ((t * coords[pivot]) % zp == 1) {
        inv = t;
        break;
      }
    for (std::uint64_t x = 0; x < B.order(); ++x) {
      const std::uint64_t hx = (inv * B.coords_of_rank(x)[pivot]) % zp;
      table[x] = (table[x] * ((1 + zp - hx) % zp)) % zp;
    }
  }

  std::vector<std::uint32_t> t32(table.begin(), table.end());
  GroupFunction c0(B, Zp, std::move(t32));
  // Postconditions.
  if (c0.at_rank(0) != 1) throw std::logic_error("c0 construction failed at 0");
  for (auto r : want)
    if (r != 0 && c0.at_rank(r) != 0) throw std::logic_error("c0 does not vanish on the set");
  const Degree d = functional_degree(c0);
  if (!(d <= Degree(want.size() - 1)))
    throw std::logic_error("c0 degree bound violated");
  return c0;
}

/// Restricted-range case: for f_1,...,f_r : A -> B with exp(B) = p prime
/// and A a p-group, delta(A, Z_p) > sum (|range f_i| - 1) * functional_degree(f_i)
/// forces p | |V|.
inline VerifierReport verify_restricted_range(const std::vector<GroupFunction>& fs,
                                              std::uint64_t point_cap = (1u << 24),
                                              unsigned threads = 1) {
  if (fs.empty()) throw std::invalid_argument("need at least one function");
  detail::require_common_domain(fs);
  const auto& A = fs[0].domain();
  const auto& B = fs[0].codomain();
  for (const auto& f : fs)
    if (f.codomain() != B) throw std::invalid_argument("functions must share one codomain");
  const std::uint64_t p = B.exponent();
  if (!detail::is_prime(p)) throw std::invalid_argument("codomain exponent must be prime");
  if (!A.is_p_group(p)) throw std::invalid_argument("domain must be a p-group for the same p");

  VerifierReport rep;
  rep.theorem_id = "restricted_range";
  const Degree dA = delta(A, FiniteAbelianGroup({p}));
  std::uint64_t budget = 0;
  bool empty_by_range = false;
  for (const auto& f : fs) {
    std::set<std::uint32_t> range(f.table().begin(), f.table().end());
    const Degree d = functional_degree(f);
    rep.computed_degrees.push_back(d);
    budget += (range.size() - 1) * d.value();
    if (!range.count(0)) empty_by_range = true;
  }
  rep.hypothesis_lhs = dA.value();
  rep.hypothesis_rhs = budget;
  rep.hypothesis_text = "delta(A,Z_p) = " + dA.to_string() + " > " + std::to_string(budget) +
                        " = sum (|range|-1)*fundeg";
  rep.hypothesis_holds = rep.hypothesis_lhs > rep.hypothesis_rhs;
  rep.divisor = p;
  rep.zero_count = count_zeros(A, fs, std::nullopt, point_cap, threads);
  if (empty_by_range) rep.notes.push_back("empty by range");
  if (!rep.hypothesis_holds) {
    rep.notes.push_back("hypothesis fails; no conclusion asserted");
    return rep;
  }
  rep.conclusion_holds = (rep.zero_count % p == 0);
  return rep;
}

/// Count lower bound: when 0 is a common zero, |V| >= q^(N - sum pdeg)
/// (floored at 1).
inline VerifierReport verify_warning2(const FiniteField& field, std::uint32_t N,
                                      const std::vector<MultivariatePolynomial>& fs,
                                      std::uint64_t point_cap = (1u << 24),
                                      unsigned threads = 1) {
  VerifierReport rep;
  rep.theorem_id = "warning2";
  std::uint64_t degsum = 0;
  bool zero_is_solution = true;
  const std::vector<FqElement> origin(N, field.zero());
  for (const auto& f : fs) {
    if (f.field() != field) throw std::invalid_argument("polynomial over a different field");
    if (f.nvars() > N) throw std::invalid_argument("polynomial uses more than N variables");
    degsum += f.pweight_degree();
    rep.computed_degrees.push_back(Degree(f.pweight_degree()));
    const std::vector<FqElement> pt(origin.begin(), origin.begin() + f.nvars());
    if (!field.is_zero(f.evaluate(pt))) zero_is_solution = false;
  }
  rep.hypothesis_holds = zero_is_solution;
  rep.hypothesis_text = zero_is_solution ? "0 is a common zero" : "0 is not a common zero";
  rep.zero_count = detail::count_poly_zeros(field, fs, N, point_cap, threads);
  std::uint64_t bound = 1;  // q^N <= the point cap here, so this cannot overflow
  if (N > degsum) bound = detail::ipow(field.q(), static_cast<std::uint32_t>(N - degsum));
  rep.lower_bound = bound;
  if (!rep.hypothesis_holds) {
    rep.notes.push_back("hypothesis fails; no conclusion asserted");
    return rep;
  }
  rep.conclusion_holds = (rep.zero_count >= bound);
  return rep;
}

}  // namespace fundeg
