#include <catch2/catch_amalgamated.hpp>

#include "fundeg/degree.hpp"
#include "fundeg/finite_field.hpp"
#include "fundeg/rings_nc.hpp"
#include "fundeg/rng.hpp"

using namespace fundeg;

namespace {

GroupFunction random_fn(Rng& rng, const FiniteAbelianGroup& A, const FiniteAbelianGroup& B) {
  std::vector<std::uint32_t> t(A.order());
  for (auto& v : t) v = static_cast<std::uint32_t>(rng.below(B.order()));
  return GroupFunction(A, B, std::move(t));
}

/// Random function with degree lowered by applying difference operators.
GroupFunction random_low_degree_fn(Rng& rng, const FiniteAbelianGroup& A,
                                   const FiniteAbelianGroup& B, int drops) {
  auto f = random_fn(rng, A, B);
  const auto gens = A.standard_generators();
  for (int i = 0; i < drops && !gens.empty(); ++i)
    f = difference_op(gens[rng.below(gens.size())], f);
  return f;
}

Degree mul_deg(const Degree& a, const Degree& b) {
  REQUIRE(a.is_finite());
  REQUIRE(b.is_finite());
  return Degree(a.value() * b.value());
}

const std::vector<const char*> kP2Domains{"Z2", "Z4", "Z8", "Z2xZ2", "Z4xZ2", "Z2xZ2xZ2",
                                          "Z16", "Z4xZ4", "Z8xZ2"};
const std::vector<const char*> kP2Codomains{"Z2", "Z4", "Z8", "Z2xZ2", "Z4xZ2"};
const std::vector<const char*> kP3Domains{"Z3", "Z9", "Z3xZ3"};
const std::vector<const char*> kP3Codomains{"Z3", "Z9", "Z3xZ3"};

struct Pair {
  FiniteAbelianGroup A, B;
};

Pair random_same_p_pair(Rng& rng) {
  if (rng.coin()) {
    return {FiniteAbelianGroup::parse(kP2Domains[rng.below(kP2Domains.size())]),
            FiniteAbelianGroup::parse(kP2Codomains[rng.below(kP2Codomains.size())])};
  }
  return {FiniteAbelianGroup::parse(kP3Domains[rng.below(kP3Domains.size())]),
          FiniteAbelianGroup::parse(kP3Codomains[rng.below(kP3Codomains.size())])};
}

}  // namespace

TEST_CASE("addition law") {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    const auto [A, B] = random_same_p_pair(rng);
    const auto f = random_low_degree_fn(rng, A, B, static_cast<int>(rng.below(3)));
    const auto g = random_low_degree_fn(rng, A, B, static_cast<int>(rng.below(3)));
    const Degree df = functional_degree(f), dg = functional_degree(g);
    const Degree ds = functional_degree(f + g);
    CHECK(ds <= Degree::max(df, dg));
    if (df != dg) CHECK(ds == Degree::max(df, dg));
  }
}

TEST_CASE("combination law") {
  Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    const auto [A, B] = random_same_p_pair(rng);
    const auto C = FiniteAbelianGroup::parse(rng.coin() ? "Z4" : "Z2xZ2");
    const auto f = random_fn(rng, A, B);
    const auto g = random_fn(rng, A, C);
    CHECK(functional_degree(combine(f, g)) ==
          Degree::max(functional_degree(f), functional_degree(g)));
  }
}

TEST_CASE("restriction law") {
  Rng rng(107);
  for (int i = 0; i < 200; ++i) {
    const auto [A, B] = random_same_p_pair(rng);
    const auto f = random_fn(rng, A, B);
    std::vector<GroupElement> gens{A.unrank(rng.below(A.order()))};
    if (rng.coin()) gens.push_back(A.unrank(rng.below(A.order())));
    CHECK(functional_degree(restrict_fn(f, gens)) <= functional_degree(f));
  }
}

TEST_CASE("composition law") {
  Rng rng(109);
  for (int i = 0; i < 200; ++i) {
    const bool p2 = rng.coin();
    const auto A = FiniteAbelianGroup::parse(p2 ? "Z4xZ2" : "Z9");
    const auto B = FiniteAbelianGroup::parse(p2 ? "Z2xZ2" : "Z3");
    const auto C = FiniteAbelianGroup::parse(p2 ? "Z4" : "Z9");
    const auto f = random_low_degree_fn(rng, A, B, static_cast<int>(rng.below(3)));
    const auto g = random_low_degree_fn(rng, B, C, static_cast<int>(rng.below(2)));
    const Degree df = functional_degree(f), dg = functional_degree(g);
    CHECK(functional_degree(compose(g, f)) <= mul_deg(dg, df));
  }
}

TEST_CASE("partial degrees sandwich the total degree") {
  Rng rng(113);
  for (int i = 0; i < 200; ++i) {
    const bool p2 = rng.coin();
    const auto A1 = FiniteAbelianGroup::parse(p2 ? "Z4" : "Z3");
    const auto A2 = FiniteAbelianGroup::parse(p2 ? "Z2" : "Z3");
    const auto B = FiniteAbelianGroup::parse(p2 ? "Z4" : "Z9");
    const auto D = product_group({A1, A2});
    const auto f = random_fn(rng, D, B);
    const Degree total = functional_degree(f);
    const Degree p1 = partial_degree(f, {A1, A2}, 0);
    const Degree p2d = partial_degree(f, {A1, A2}, 1);
    CHECK(p1 <= total);
    CHECK(p2d <= total);
    CHECK(total <= p1 + p2d);
  }
}

TEST_CASE("substituting functions into a multivariate function") {
  Rng rng(127);
  for (int i = 0; i < 200; ++i) {
    const auto A = FiniteAbelianGroup::parse(rng.coin() ? "Z4" : "Z2xZ2");
    const auto B1 = FiniteAbelianGroup::parse("Z2");
    const auto B2 = FiniteAbelianGroup::parse(rng.coin() ? "Z4" : "Z2");
    const auto C = FiniteAbelianGroup::parse("Z4");
    const auto f1 = random_low_degree_fn(rng, A, B1, static_cast<int>(rng.below(2)));
    const auto f2 = random_low_degree_fn(rng, A, B2, static_cast<int>(rng.below(2)));
    const auto D = product_group({B1, B2});
    const auto g = random_fn(rng, D, C);

    // G(a) = g(f1(a), f2(a))
    std::vector<std::uint32_t> t(A.order());
    for (std::uint64_t x = 0; x < A.order(); ++x)
      t[x] = g.at_rank(f1.at_rank(x) * B2.order() + f2.at_rank(x));
    const GroupFunction G(A, C, std::move(t));

    const Degree bound = mul_deg(partial_degree(g, {B1, B2}, 0), functional_degree(f1)) +
                         mul_deg(partial_degree(g, {B1, B2}, 1), functional_degree(f2));
    CHECK(functional_degree(G) <= bound);
  }
}

TEST_CASE("pointwise ring products add degrees at most") {
  Rng rng(131);
  const std::vector<FiniteRing> rings{FiniteRing::make_zn(4), FiniteRing::make_zn(8),
                                      FiniteRing::make_zn(9), FiniteRing::make_mat(2, 2)};
  for (int i = 0; i < 200; ++i) {
    const auto& R = rings[rng.below(rings.size())];
    const auto& RA = R.additive_group();
    const auto A = FiniteAbelianGroup::parse(
        RA.primes()[0] == 2 ? (rng.coin() ? "Z4" : "Z2xZ2") : (rng.coin() ? "Z3" : "Z9"));
    const auto f = random_low_degree_fn(rng, A, RA, static_cast<int>(rng.below(2)));
    const auto g = random_low_degree_fn(rng, A, RA, static_cast<int>(rng.below(2)));
    std::vector<std::uint32_t> t(A.order());
    for (std::uint64_t x = 0; x < A.order(); ++x)
      t[x] = static_cast<std::uint32_t>(R.mul_ranks(f.at_rank(x), g.at_rank(x)));
    const GroupFunction fg(A, RA, std::move(t));
    CHECK(functional_degree(fg) <= functional_degree(f) + functional_degree(g));
  }
}

TEST_CASE("tensor products of nonzero field-valued functions add degrees exactly") {
  Rng rng(137);
  const auto gf2 = FiniteField::make(2, 1);
  const auto gf3 = FiniteField::make(3, 1);
  const auto gf4 = FiniteField::make(2, 2);
  for (int i = 0; i < 200; ++i) {
    const int which = static_cast<int>(rng.below(3));
    const FiniteField& F = which == 0 ? gf2 : which == 1 ? gf3 : gf4;
    const auto A = FiniteAbelianGroup::parse(
        F.p() == 2 ? (rng.coin() ? "Z4" : "Z2xZ2") : (rng.coin() ? "Z3" : "Z9"));
    const auto B = FiniteAbelianGroup::parse(F.p() == 2 ? "Z2" : "Z3");
    auto f = random_fn(rng, A, F.additive_group());
    auto g = random_fn(rng, B, F.additive_group());
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(functional_degree(tensor(f, g, F)) ==
          functional_degree(f) + functional_degree(g));
  }
}

TEST_CASE("tensor with a zero factor is the zero function") {
  const auto gf2 = FiniteField::make(2, 1);
  const auto Z2 = FiniteAbelianGroup::parse("Z2");
  const auto z = zero_fn(Z2, gf2.additive_group());
  const auto f = char_fn(Z2, Z2.zero(), gf2.additive_group(), gf2.additive_group().element({1}));
  CHECK(tensor(z, f, gf2).is_zero());
  CHECK(functional_degree(tensor(z, f, gf2)) == Degree(0));
}

TEST_CASE("tensor of two one-point indicators is the indicator of the pair") {
  const auto gf2 = FiniteField::make(2, 1);
  const auto Z2 = FiniteAbelianGroup::parse("Z2");
  const auto B = gf2.additive_group();
  const auto chi = char_fn(Z2, Z2.zero(), B, B.element({1}));
  const auto t = tensor(chi, chi, gf2);
  CHECK(t.domain().cyclic_orders() == std::vector<std::uint64_t>{2, 2});
  CHECK(t.at_rank(0) == 1);
  for (std::uint64_t r = 1; r < 4; ++r) CHECK(t.at_rank(r) == 0);
  CHECK(functional_degree(t) == Degree(2));
}

TEST_CASE("multiplication tables as tensors of the identity") {
  const auto gf3 = FiniteField::make(3, 1);
  const auto Z3 = FiniteAbelianGroup::parse("Z3");
  const auto id = identity_fn(Z3);  // Z3 is GF(3)'s additive group
  const auto m = tensor(id, id, gf3);
  for (std::uint64_t x = 0; x < 3; ++x)
    for (std::uint64_t y = 0; y < 3; ++y) CHECK(m.at_rank(x * 3 + y) == (x * y) % 3);
  CHECK(functional_degree(m) == Degree(2));
}

TEST_CASE("inclusion-exclusion expansion beyond the degree") {
  Rng rng(139);
  int done = 0;
  while (done < 200) {
    const auto [A, B] = random_same_p_pair(rng);
    const auto f = random_low_degree_fn(rng, A, B, 2 + static_cast<int>(rng.below(2)));
    const Degree d = functional_degree(f);
    if (!d.is_finite() || d.value() > 3) continue;
    const std::uint32_t k = static_cast<std::uint32_t>(d.value()) + 1;

    std::vector<std::uint64_t> xs(k);
    for (auto& x : xs) x = rng.below(A.order());
    std::uint64_t sum_all = 0;
    for (auto x : xs) sum_all = A.add_ranks(sum_all, x);

    // Alternating sum over the proper subsets.
    std::uint64_t rhs = 0;  // codomain rank accumulator
    for (std::uint32_t mask = 0; mask + 1 < (1u << k); ++mask) {
      std::uint64_t part = 0;
      std::uint32_t bits = 0;
      for (std::uint32_t i = 0; i < k; ++i)
        if (mask & (1u << i)) {
          part = A.add_ranks(part, xs[i]);
          ++bits;
        }
      const std::uint64_t v = f.at_rank(part);
      const bool plus = ((k - bits + 1) % 2) == 0;
      rhs = B.add_ranks(rhs, plus ? v : B.neg_rank(v));
    }
    CHECK(f.at_rank(sum_all) == rhs);
    ++done;
  }
}

TEST_CASE("generator reduction matches the full-group oracle") {
  Rng rng(149);
  for (int i = 0; i < 150; ++i) {
    const auto A = FiniteAbelianGroup::parse(rng.coin() ? "Z4xZ2" : "Z9");
    const auto B = FiniteAbelianGroup::parse(rng.coin() ? "Z2" : "Z3");
    const auto f = random_low_degree_fn(rng, A, B, static_cast<int>(rng.below(3)));
    const auto orc = functional_degree_oracle(f, 8);
    if (orc.exceeded_cap) continue;  // mixed-prime cases
    CHECK(functional_degree(f) == orc.degree);
  }
}

TEST_CASE("p-group degree bound is never exceeded") {
  Rng rng(151);
  for (int i = 0; i < 200; ++i) {
    const auto [A, B] = random_same_p_pair(rng);
    const auto f = random_fn(rng, A, B);
    std::uint64_t beta = 0;
    const std::uint64_t p = A.primes().empty() ? 2 : A.primes()[0];
    for (std::uint64_t e = B.exponent(); e > 1; e /= p) ++beta;
    std::uint64_t s = 0;
    for (auto n : A.cyclic_orders()) s += n - 1;
    CHECK(functional_degree(f) <= Degree(beta * s));
  }
}

TEST_CASE("functions below the maximal degree sum to zero") {
  Rng rng(157);
  for (const char* spec : {"Z4", "Z2xZ2", "Z9"}) {
    const auto A = FiniteAbelianGroup::parse(spec);
    const std::uint64_t p = A.primes()[0];
    const FiniteAbelianGroup Zp({p});
    const std::uint64_t d = delta(A, Zp).value();
    for (int i = 0; i < 100; ++i) {
      const auto f = random_low_degree_fn(rng, A, Zp, 1 + static_cast<int>(rng.below(2)));
      REQUIRE(functional_degree(f) < Degree(d));
      std::uint64_t sum = 0;
      for (std::uint64_t x = 0; x < A.order(); ++x) sum = (sum + f.at_rank(x)) % p;
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("finite-degree mixed-prime functions split componentwise") {
  Rng rng(163);
  const auto Z6 = FiniteAbelianGroup::parse("Z6");
  const auto D = primary_decompose(Z6);
  // Build f(a) = (g1(a_2), g2(a_3)) from random per-prime pieces; it must
  // have finite degree and reconstruct from its own component sections.
  for (int i = 0; i < 100; ++i) {
    const auto g1 = random_fn(rng, D.components()[0], D.components()[0]);
    const auto g2 = random_fn(rng, D.components()[1], D.components()[1]);
    std::vector<std::uint32_t> t(6);
    for (std::uint64_t x = 0; x < 6; ++x) {
      const std::uint64_t v2 = g1.at_rank(D.project_rank(0, x));
      const std::uint64_t v3 = g2.at_rank(D.project_rank(1, x));
      t[x] = static_cast<std::uint32_t>(D.combine_ranks({v2, v3}));
    }
    const GroupFunction f(Z6, Z6, std::move(t));
    CHECK(functional_degree(f).is_finite());
    // Reconstruct the components through sections at zero and compare.
    for (std::uint64_t x = 0; x < 6; ++x) {
      const std::uint64_t lifted2 = D.lift_rank(0, D.project_rank(0, x));
      const std::uint64_t lifted3 = D.lift_rank(1, D.project_rank(1, x));
      const std::uint64_t rebuilt = D.combine_ranks(
          {D.project_rank(0, f.at_rank(lifted2)), D.project_rank(1, f.at_rank(lifted3))});
      CHECK(rebuilt == f.at_rank(x));
    }
  }
}
