#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fundeg/function.hpp"
#include "fundeg/group.hpp"

namespace fundeg {

using BigInt = boost::multiprecision::cpp_int;

/// An element of the integral group ring Z[A], or of Z_n[A] when a modulus
/// n > 0 is set. Written as a finitely supported sum of shift symbols,
/// one per group element, multiplied by tau_a * tau_b = tau_{a+b}.
///
/// Canonical form: no stored coefficient is zero; with modulus n > 0 every
/// coefficient lies in [0, n).
class GroupRingElement {
 public:
  explicit GroupRingElement(FiniteAbelianGroup group, std::uint64_t modulus = 0)
      : group_(std::move(group)), modulus_(modulus) {
    if (modulus == 1) throw std::invalid_argument("modulus 1 gives the zero ring");
  }

  const FiniteAbelianGroup& group() const { return group_; }
  std::uint64_t modulus() const { return modulus_; }
  const std::map<std::uint64_t, BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  BigInt coeff_at(std::uint64_t rank) const {
    const auto it = coeffs_.find(rank);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  void add_term(std::uint64_t rank, BigInt z) {
    if (modulus_ > 0) {
      z %= modulus_;
      if (z < 0) z += modulus_;
    }
    auto it = coeffs_.find(rank);
    if (it == coeffs_.end()) {
      if (z != 0) coeffs_.emplace(rank, std::move(z));
      return;
    }
    it->second += z;
    if (modulus_ > 0) {
      it->second %= modulus_;
      if (it->second < 0) it->second += modulus_;
    }
    if (it->second == 0) coeffs_.erase(it);
  }

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    require_same_ring(a, b);
    GroupRingElement out = a;
    for (const auto& [r, z] : b.coeffs_) out.add_term(r, z);
    return out;
  }

  friend GroupRingElement operator-(const GroupRingElement& a) {
    GroupRingElement out(a.group_, a.modulus_);
    for (const auto& [r, z] : a.coeffs_) out.add_term(r, -z);
    return out;
  }

  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    return a + (-b);
  }

  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    require_same_ring(a, b);
    GroupRingElement out(a.group_, a.modulus_);
    for (const auto& [ra, za] : a.coeffs_)
      for (const auto& [rb, zb] : b.coeffs_)
        out.add_term(a.group_.add_ranks(ra, rb), za * zb);
    return out;
  }

  friend GroupRingElement operator*(const BigInt& z, const GroupRingElement& a) {
    GroupRingElement out(a.group_, a.modulus_);
    for (const auto& [r, c] : a.coeffs_) out.add_term(r, z * c);
    return out;
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.group_ == b.group_ && a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const GroupRingElement& a, const GroupRingElement& b) {
    return !(a == b);
  }

  static void require_same_ring(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.group_ != b.group_) throw std::invalid_argument("group ring elements over different groups");
    if (a.modulus_ != b.modulus_)
      throw std::invalid_argument("group ring elements with different moduli");
  }

 private:
  FiniteAbelianGroup group_;
  std::uint64_t modulus_;
  std::map<std::uint64_t, BigInt> coeffs_;
};

/// The shift symbol tau_a.
inline GroupRingElement tau(const GroupElement& a, std::uint64_t modulus = 0) {
  GroupRingElement r(a.group(), modulus);
  r.add_term(a.group().rank(a), 1);
  return r;
}

/// The multiplicative unit tau_0.
inline GroupRingElement ring_one(const FiniteAbelianGroup& g, std::uint64_t modulus = 0) {
  GroupRingElement r(g, modulus);
  r.add_term(0, 1);
  return r;
}

/// tau_a - 1, a generator of the augmentation ideal.
inline GroupRingElement shift_minus_one(const GroupElement& a, std::uint64_t modulus = 0) {
  GroupRingElement r(a.group(), modulus);
  r.add_term(a.group().rank(a), 1);
  r.add_term(0, -1);
  return r;
}

/// Coefficient sum. An element lies in the augmentation ideal iff this is
/// zero (zero mod n for modulus n > 0, but stored coefficients are already
/// reduced, so the sum itself is reduced here as well).
inline BigInt augmentation(const GroupRingElement& r) {
  BigInt s = 0;
  for (const auto& [rank, z] : r.coeffs()) s += z;
  if (r.modulus() > 0) {
    s %= r.modulus();
    if (s < 0) s += r.modulus();
  }
  return s;
}

inline bool in_augmentation_ideal(const GroupRingElement& r) {
  return augmentation(r) == 0;
}

/// The shift action (r * f)(x) = sum_a z_a f(x + a). Scalars act by
/// repeated codomain addition; they are reduced modulo the codomain
/// exponent first, which leaves the result unchanged, and then applied by
/// binary doubling. A modulus n > 0 on r requires n to annihilate the
/// codomain (exp(B) | n), since the Z_n[A] action is only defined then.
inline GroupFunction act(const GroupRingElement& r, const GroupFunction& f) {
  const auto& A = f.domain();
  const auto& B = f.codomain();
  if (r.group() != A) throw std::invalid_argument("ring element and function domain differ");
  if (r.modulus() > 0 && r.modulus() % B.exponent() != 0)
    throw std::invalid_argument("ring modulus does not annihilate the codomain");

  std::vector<std::uint32_t> out(A.order(), 0);
  const std::uint64_t expB = B.exponent();
  for (const auto& [a_rank, z] : r.coeffs()) {
    BigInt zm = z % expB;
    if (zm < 0) zm += expB;
    const std::uint64_t zr = zm.convert_to<std::uint64_t>();
    if (zr == 0) continue;
    for (std::uint64_t x = 0; x < A.order(); ++x) {
      const std::uint32_t fv = f.at_rank(A.add_ranks(x, a_rank));
      out[x] = static_cast<std::uint32_t>(B.add_ranks(out[x], B.scale_rank(zr, fv)));
    }
  }
  return GroupFunction(A, B, std::move(out));
}

/// The difference operator (tau_g - 1) * f, i.e. x -> f(x+g) - f(x).
/// Fast path: one shifted subtraction per table entry.
inline GroupFunction difference_op(const GroupElement& g, const GroupFunction& f) {
  const auto& A = f.domain();
  const auto& B = f.codomain();
  if (g.group() != A) throw std::invalid_argument("shift element not in function domain");
  const std::uint64_t gr = A.rank(g);
  std::vector<std::uint32_t> out(A.order());
  for (std::uint64_t x = 0; x < A.order(); ++x)
    out[x] = static_cast<std::uint32_t>(B.sub_ranks(f.at_rank(A.add_ranks(x, gr)), f.at_rank(x)));
  return GroupFunction(A, B, std::move(out));
}

}  // namespace fundeg
