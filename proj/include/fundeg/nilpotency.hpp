#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fundeg/degree.hpp"
#include "fundeg/group.hpp"

namespace fundeg {

/// One computed value of nu(Z_n[A]), the nilpotency degree of the
/// augmentation ideal: the least m >= 1 with Aug^m = 0.
struct NuResult {
  FiniteAbelianGroup group;
  std::uint64_t modulus = 0;
  Degree nu;
  std::string method;  // "delta-link" | "cyclic-poly-oracle"
  std::optional<std::uint64_t> hypothesis_value;
  std::optional<bool> matches_hypothesis;
};

/// nu(Z_n[A]) through the degree link: delta(A, Z_n) + 1. Infinite exactly
/// when A and Z_n are not p-groups for a common prime.
inline NuResult nu_via_delta(const FiniteAbelianGroup& A, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("modulus must be >= 2");
  NuResult res;
  res.group = A;
  res.modulus = n;
  res.method = "delta-link";
  const Degree d = delta(A, FiniteAbelianGroup({n}));
  res.nu = d.is_infinite() ? Degree::infinity() : Degree(d.value() + 1);
  return res;
}

/// nu(Z_{p^beta}[Z_{p^alpha}]) by direct polynomial arithmetic: the least
/// nu with (x-1)^nu = 0 in Z_{p^beta}[x]/(x^{p^alpha} - 1). Maintains the
/// coefficient vector of the running power, multiplying by (x-1) with
/// exponent wrap-around, and returns the first all-zero power.
inline NuResult nu_cyclic_oracle(std::uint64_t p, std::uint32_t alpha, std::uint32_t beta) {
  if (alpha < 1 || beta < 1) throw std::invalid_argument("alpha and beta must be >= 1");
  const std::uint64_t len = detail::ipow(p, alpha);      // p^alpha
  if (len > (1u << 14)) throw CapExceeded("cyclic oracle capped at p^alpha <= 2^14");
  const std::uint64_t mod = detail::ipow(p, beta);       // p^beta

  NuResult res;
  res.group = FiniteAbelianGroup({len});
  res.modulus = mod;
  res.method = "cyclic-poly-oracle";

  // c holds the coefficient vector of (x-1)^m, starting at m = 1.
  std::vector<std::uint64_t> c(len, 0);
  c[0] = mod - 1;
  c[1 % len] = (c[1 % len] + 1) % mod;
  const std::uint64_t bound = 1 + beta * (len - 1);
  for (std::uint64_t m = 1;; ++m) {
    if (std::all_of(c.begin(), c.end(), [](std::uint64_t v) { return v == 0; })) {
      res.nu = Degree(m);
      return res;
    }
    if (m >= bound)
      throw std::logic_error(
          "cyclic nu oracle exceeded the nilpotency bound (internal invariant violation)");
    // c <- c * (x - 1), exponents wrapped mod p^alpha.
    std::vector<std::uint64_t> nxt(len);
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t shifted = c[(i + len - 1) % len];  // coefficient of x^{i-1}
      nxt[i] = (shifted + mod - c[i]) % mod;
    }
    c = std::move(nxt);
  }
}

/// The conjectured closed form beta*p^alpha - (beta-1)*p^(alpha-1) for the
/// cyclic case. A hypothesis, never asserted as ground truth.
inline std::uint64_t hypothesis_value(std::uint64_t p, std::uint32_t alpha, std::uint32_t beta) {
  return beta * detail::ipow(p, alpha) - (beta - 1) * detail::ipow(p, alpha - 1);
}

/// One row of the conjecture sweep.
struct SweepRow {
  std::uint64_t p = 0;
  std::uint32_t alpha = 0;
  std::uint32_t beta = 0;
  std::optional<std::uint64_t> nu_oracle;
  std::optional<std::uint64_t> nu_delta;   // empty when skipped by the cost cap
  std::uint64_t hypothesis = 0;
  std::optional<bool> match;               // oracle vs hypothesis
  std::string error;                       // nonempty when the row failed a cap
};

/// Sweeps nu over all primes p <= p_max, 1 <= alpha <= alpha_max,
/// 1 <= beta <= beta_max for cyclic groups Z_{p^alpha}. Each row records
/// the polynomial-oracle value, the degree-link value where the group is
/// small enough to afford it, and the hypothesis comparison. Rows that hit
/// a resource cap carry an error and the sweep continues.
inline std::vector<SweepRow> conjecture_sweep(std::uint64_t p_max, std::uint32_t alpha_max,
                                              std::uint32_t beta_max,
                                              std::uint64_t delta_cost_cap = 4096) {
  std::vector<SweepRow> rows;
  for (std::uint64_t p = 2; p <= p_max; ++p) {
    if (!detail::is_prime(p)) continue;
    for (std::uint32_t alpha = 1; alpha <= alpha_max; ++alpha) {
      for (std::uint32_t beta = 1; beta <= beta_max; ++beta) {
        SweepRow row;
        row.p = p;
        row.alpha = alpha;
        row.beta = beta;
        row.hypothesis = hypothesis_value(p, alpha, beta);
        try {
          const auto oracle = nu_cyclic_oracle(p, alpha, beta);
          row.nu_oracle = oracle.nu.value();
          row.match = (*row.nu_oracle == row.hypothesis);
          const std::uint64_t pa = detail::ipow(p, alpha);
          const std::uint64_t pb = detail::ipow(p, beta);
          if (pa * pb <= delta_cost_cap) {
            const auto dl = nu_via_delta(FiniteAbelianGroup({pa}), pb);
            row.nu_delta = dl.nu.value();
          }
        } catch (const CapExceeded& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace fundeg
