#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fundeg/function.hpp"
#include "fundeg/group.hpp"

namespace fundeg {

/// An element of GF(p^alpha) in the power basis (1, t, ..., t^{alpha-1})
/// of the root t of the field's modulus polynomial.
struct FqElement {
  std::vector<std::uint64_t> coeffs;  // length alpha, entries in [0, p)

  friend bool operator==(const FqElement& a, const FqElement& b) = default;
};

/// GF(p^alpha), constructed over a monic irreducible modulus polynomial.
/// The default modulus is the lexicographically smallest monic irreducible
/// of degree alpha, where polynomials are ordered by reading their
/// coefficients as base-p digits (coefficient of x^i = digit i). This makes
/// element encodings reproducible across runs.
class FiniteField {
 public:
  /// Builds GF(p^alpha) with the canonical smallest modulus.
  static FiniteField make(std::uint64_t p, std::uint32_t alpha) {
    check_params(p, alpha);
    const std::uint64_t q = detail::ipow(p, alpha);
    for (std::uint64_t v = 0; v < q; ++v) {
      std::vector<std::uint64_t> m(alpha + 1);
      std::uint64_t rem = v;
      for (std::uint32_t i = 0; i < alpha; ++i) {
        m[i] = rem % p;
        rem /= p;
      }
      m[alpha] = 1;
      if (poly_irreducible(m, p)) return FiniteField(p, alpha, std::move(m));
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable for prime p
  }

  /// Builds GF(p^alpha) over an explicitly given monic modulus
  /// (coefficients c[0..alpha], c[alpha] = 1); verified irreducible.
  static FiniteField make_with_modulus(std::uint64_t p, std::uint32_t alpha,
                                       std::vector<std::uint64_t> modulus) {
    check_params(p, alpha);
    if (modulus.size() != alpha + 1 || modulus[alpha] != 1)
      throw std::invalid_argument("modulus must be monic of degree alpha");
    for (auto& c : modulus) c %= p;
    modulus[alpha] = 1;
    if (!poly_irreducible(modulus, p))
      throw std::invalid_argument("modulus polynomial is reducible");
    return FiniteField(p, alpha, std::move(modulus));
  }

  std::uint64_t p() const { return p_; }
  std::uint32_t alpha() const { return alpha_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  /// The additive group (Z_p)^alpha in power-basis coordinate order.
  const FiniteAbelianGroup& additive_group() const { return add_group_; }

  FqElement zero() const { return FqElement{std::vector<std::uint64_t>(alpha_, 0)}; }
  FqElement one() const { return from_integer(1); }
  FqElement gen() const {  // the modulus root t
    FqElement e = zero();
    if (alpha_ >= 2)
      e.coeffs[1] = 1;
    // For alpha = 1 the modulus is x, whose root is 0.
    return e;
  }

  FqElement from_integer(std::int64_t z) const {
    std::int64_t r = z % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    FqElement e = zero();
    e.coeffs[0] = static_cast<std::uint64_t>(r);
    return e;
  }

  bool is_zero(const FqElement& a) const {
    for (auto c : a.coeffs)
      if (c) return false;
    return true;
  }

  FqElement add(const FqElement& a, const FqElement& b) const {
    check(a);
    check(b);
    FqElement r = a;
    for (std::uint32_t i = 0; i < alpha_; ++i) r.coeffs[i] = (r.coeffs[i] + b.coeffs[i]) % p_;
    return r;
  }

  FqElement neg(const FqElement& a) const {
    check(a);
    FqElement r = a;
    for (auto& c : r.coeffs) c = c ? p_ - c : 0;
    return r;
  }

  FqElement sub(const FqElement& a, const FqElement& b) const { return add(a, neg(b)); }

  FqElement mul(const FqElement& a, const FqElement& b) const {
    check(a);
    check(b);
    std::vector<std::uint64_t> prod(2 * alpha_ - 1, 0);
    for (std::uint32_t i = 0; i < alpha_; ++i) {
      if (!a.coeffs[i]) continue;
      for (std::uint32_t j = 0; j < alpha_; ++j)
        prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % p_;
    }
    // Reduce modulo the monic modulus.
    for (std::size_t d = prod.size(); d-- > alpha_;) {
      const std::uint64_t lead = prod[d];
      if (!lead) continue;
      prod[d] = 0;
      for (std::uint32_t i = 0; i < alpha_; ++i)
        prod[d - alpha_ + i] = (prod[d - alpha_ + i] + (p_ - modulus_[i]) % p_ * lead) % p_;
    }
    prod.resize(alpha_);
    return FqElement{std::move(prod)};
  }

  FqElement pow(FqElement base, std::uint64_t e) const {
    FqElement acc = one();
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  FqElement inv(const FqElement& a) const {
    if (is_zero(a)) throw std::invalid_argument("zero has no multiplicative inverse");
    return pow(a, q_ - 2);
  }

  // Rank encoding through the additive group's convention, so field tables
  // and group-function tables agree bit for bit.
  std::uint64_t rank_of(const FqElement& a) const {
    check(a);
    return add_group_.rank_of_coords(a.coeffs);
  }
  FqElement element_of_rank(std::uint64_t r) const {
    return FqElement{add_group_.coords_of_rank(r)};
  }

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.p_ == b.p_ && a.alpha_ == b.alpha_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const FiniteField& a, const FiniteField& b) { return !(a == b); }

 private:
  FiniteField(std::uint64_t p, std::uint32_t alpha, std::vector<std::uint64_t> modulus)
      : p_(p),
        alpha_(alpha),
        q_(detail::ipow(p, alpha)),
        modulus_(std::move(modulus)),
        add_group_(std::vector<std::uint64_t>(alpha, p)) {}

  static void check_params(std::uint64_t p, std::uint32_t alpha) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (alpha < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < alpha; ++i) {
      q *= p;
      if (q > (1u << 16)) throw std::invalid_argument("fields capped at p^alpha <= 2^16");
    }
  }

  void check(const FqElement& a) const {
    if (a.coeffs.size() != alpha_) throw std::invalid_argument("element has wrong basis length");
    for (auto c : a.coeffs)
      if (c >= p_) throw std::invalid_argument("element coordinate not reduced mod p");
  }

  // --- Z_p[x] helpers for irreducibility by trial division. ---

  static std::vector<std::uint64_t> poly_mod(std::vector<std::uint64_t> a,
                                             const std::vector<std::uint64_t>& d,
                                             std::uint64_t p) {
    // d monic. Returns a mod d.
    const std::size_t dd = d.size() - 1;
    while (a.size() > dd) {
      const std::uint64_t lead = a.back();
      a.pop_back();
      if (lead) {
        for (std::size_t i = 0; i < dd; ++i)
          a[a.size() - dd + i] = (a[a.size() - dd + i] + (p - d[i]) % p * lead) % p;
      }
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }

  static bool poly_irreducible(const std::vector<std::uint64_t>& m, std::uint64_t p) {
    const std::uint32_t deg = static_cast<std::uint32_t>(m.size() - 1);
    if (deg == 0) return false;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
      const std::uint64_t count = detail::ipow(p, d);
      for (std::uint64_t v = 0; v < count; ++v) {
        std::vector<std::uint64_t> div(d + 1);
        std::uint64_t rem = v;
        for (std::uint32_t i = 0; i < d; ++i) {
          div[i] = rem % p;
          rem /= p;
        }
        div[d] = 1;
        if (poly_mod(m, div, p).empty()) return false;
      }
    }
    return true;
  }

  std::uint64_t p_;
  std::uint32_t alpha_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  FiniteAbelianGroup add_group_;
};

inline std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p) {
  std::uint64_t s = 0;
  while (n) {
    s += n % p;
    n /= p;
  }
  return s;
}

/// A sparse multivariate polynomial over GF(p^alpha) in canonical form
/// (no zero coefficients stored).
class MultivariatePolynomial {
 public:
  MultivariatePolynomial(FiniteField field, std::uint32_t nvars)
      : field_(std::move(field)), nvars_(nvars) {}

  const FiniteField& field() const { return field_; }
  std::uint32_t nvars() const { return nvars_; }
  const std::map<std::vector<std::uint64_t>, FqElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  static constexpr std::uint64_t kMaxExponent = (1ull << 63) - 1;

  void add_term(std::vector<std::uint64_t> exps, const FqElement& coef) {
    if (exps.size() != nvars_) throw std::invalid_argument("exponent vector arity mismatch");
    for (auto e : exps)
      if (e > kMaxExponent) throw std::invalid_argument("exponent exceeds 2^63-1");
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      if (!field_.is_zero(coef)) terms_.emplace(std::move(exps), coef);
      return;
    }
    it->second = field_.add(it->second, coef);
    if (field_.is_zero(it->second)) terms_.erase(it);
  }

  friend MultivariatePolynomial operator+(const MultivariatePolynomial& a,
                                          const MultivariatePolynomial& b) {
    a.require_same(b);
    MultivariatePolynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend MultivariatePolynomial operator-(const MultivariatePolynomial& a) {
    MultivariatePolynomial out(a.field_, a.nvars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, a.field_.neg(c));
    return out;
  }

  friend MultivariatePolynomial operator-(const MultivariatePolynomial& a,
                                          const MultivariatePolynomial& b) {
    return a + (-b);
  }

  friend MultivariatePolynomial operator*(const MultivariatePolynomial& a,
                                          const MultivariatePolynomial& b) {
    a.require_same(b);
    MultivariatePolynomial out(a.field_, a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        std::vector<std::uint64_t> e(a.nvars_);
        for (std::uint32_t i = 0; i < a.nvars_; ++i) {
          if (ea[i] > kMaxExponent - eb[i])
            throw std::invalid_argument("exponent exceeds 2^63-1");
          e[i] = ea[i] + eb[i];
        }
        out.add_term(std::move(e), a.field_.mul(ca, cb));
      }
    return out;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint64_t s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  /// p-weight degree: max over monomials of the sum of base-p digit sums of
  /// the exponents. 0 for the zero polynomial.
  std::uint64_t pweight_degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint64_t s = 0;
      for (auto x : e) s += digit_sum(x, field_.p());
      d = std::max(d, s);
    }
    return d;
  }

  /// The canonical representative inducing the same function with every
  /// exponent at most q-1: exponents e > 0 become ((e-1) mod (q-1)) + 1,
  /// e = 0 stays 0; like terms merge.
  MultivariatePolynomial reduce_mod_field() const {
    const std::uint64_t q = field_.q();
    MultivariatePolynomial out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
      std::vector<std::uint64_t> r(e.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        r[i] = e[i] == 0 ? 0 : ((e[i] - 1) % (q - 1)) + 1;
      out.add_term(std::move(r), c);
    }
    return out;
  }

  FqElement evaluate(const std::vector<FqElement>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluation point arity mismatch");
    FqElement acc = field_.zero();
    for (const auto& [e, c] : terms_) {
      FqElement term = c;
      for (std::uint32_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        term = field_.mul(term, field_.pow(point[i], e[i]));
      }
      acc = field_.add(acc, term);
    }
    return acc;
  }

  /// The function F^n -> F induced by the polynomial, as a table on the
  /// additive groups: domain (Z_p)^{alpha*n} with per-variable power-basis
  /// blocks, codomain (Z_p)^alpha.
  GroupFunction induced_function() const {
    const auto& Fq = field_.additive_group();
    const FiniteAbelianGroup domain = power_group(Fq, nvars_);
    const std::uint64_t npoints = domain.order();
    std::vector<std::uint32_t> table(npoints);
    std::vector<FqElement> point(nvars_, field_.zero());
    for (std::uint64_t r = 0; r < npoints; ++r) {
      const auto coords = domain.coords_of_rank(r);
      for (std::uint32_t v = 0; v < nvars_; ++v)
        point[v].coeffs.assign(coords.begin() + v * field_.alpha(),
                               coords.begin() + (v + 1) * field_.alpha());
      table[r] = static_cast<std::uint32_t>(field_.rank_of(evaluate(point)));
    }
    return GroupFunction(domain, Fq, std::move(table));
  }

 private:
  void require_same(const MultivariatePolynomial& b) const {
    if (field_ != b.field_ || nvars_ != b.nvars_)
      throw std::invalid_argument("polynomials over different fields or arities");
  }

  FiniteField field_;
  std::uint32_t nvars_;
  std::map<std::vector<std::uint64_t>, FqElement> terms_;
};

namespace detail {

/// Recursive-descent parser for the polynomial grammar: terms joined by
/// '+'/'-'; a term is a product of factors (explicit '*' optional); a
/// factor is an integer, 't', 'x<i>' or a parenthesized expression,
/// optionally raised with '^<int>'.
class PolyParser {
 public:
  PolyParser(const FiniteField& field, std::uint32_t nvars, std::string_view text)
      : field_(field), nvars_(nvars), text_(text) {}

  MultivariatePolynomial parse() {
    auto out = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input in polynomial");
    return out;
  }

 private:
  MultivariatePolynomial parse_expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = (take() == '-');
    MultivariatePolynomial acc = parse_term();
    if (negate) acc = -acc;
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == '+' || c == '-') {
        take();
        auto t = parse_term();
        acc = (c == '+') ? acc + t : acc - t;
      } else {
        return acc;
      }
    }
  }

  MultivariatePolynomial parse_term() {
    MultivariatePolynomial acc = parse_factor();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == '*') {
        take();
        acc = acc * parse_factor();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'x' ||
                 c == '(') {
        acc = acc * parse_factor();  // implicit multiplication
      } else {
        return acc;
      }
    }
  }

  MultivariatePolynomial parse_factor() {
    skip_ws();
    MultivariatePolynomial base(field_, nvars_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t z = parse_uint();
      base.add_term(std::vector<std::uint64_t>(nvars_, 0),
                    field_.from_integer(static_cast<std::int64_t>(z % field_.p())));
    } else if (c == 't') {
      take();
      base.add_term(std::vector<std::uint64_t>(nvars_, 0), field_.gen());
    } else if (c == 'x') {
      take();
      const std::uint64_t idx = parse_uint();
      if (idx < 1 || idx > nvars_) throw ParseError("variable index out of range");
      std::vector<std::uint64_t> e(nvars_, 0);
      e[idx - 1] = 1;
      base.add_term(std::move(e), field_.one());
    } else if (c == '(') {
      take();
      base = parse_expr();
      skip_ws();
      if (take() != ')') throw ParseError("expected ')'");
    } else {
      throw ParseError("expected a factor in polynomial");
    }
    skip_ws();
    if (peek() == '^') {
      take();
      skip_ws();
      const std::uint64_t e = parse_uint();
      base = pow_poly(base, e);
    }
    return base;
  }

  MultivariatePolynomial pow_poly(const MultivariatePolynomial& b, std::uint64_t e) {
    if (e > MultivariatePolynomial::kMaxExponent) throw ParseError("exponent exceeds 2^63-1");
    // Single-monomial bases take the exponent directly; general bases are
    // squared, with a small cap to keep term blowup in check.
    if (b.terms().size() == 1) {
      const auto& [exps, coef] = *b.terms().begin();
      std::vector<std::uint64_t> ne(exps.size());
      for (std::size_t i = 0; i < ne.size(); ++i) {
        if (exps[i] != 0 && e > MultivariatePolynomial::kMaxExponent / exps[i])
          throw ParseError("exponent exceeds 2^63-1");
        ne[i] = exps[i] * e;
      }
      MultivariatePolynomial out(field_, nvars_);
      out.add_term(std::move(ne), field_.pow(coef, e));
      return out;
    }
    if (e > 64) throw ParseError("exponent too large for a multi-term base");
    MultivariatePolynomial acc(field_, nvars_);
    acc.add_term(std::vector<std::uint64_t>(nvars_, 0), field_.one());
    MultivariatePolynomial sq = b;
    while (e) {
      if (e & 1) acc = acc * sq;
      sq = sq * sq;
      e >>= 1;
    }
    return acc;
  }

  std::uint64_t parse_uint() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected an integer");
    std::uint64_t n = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (n > (UINT64_MAX - 9) / 10) throw ParseError("integer literal too large");
      n = n * 10 + static_cast<std::uint64_t>(take() - '0');
    }
    return n;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

  const FiniteField& field_;
  std::uint32_t nvars_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MultivariatePolynomial poly_parse(const FiniteField& field, std::uint32_t nvars,
                                         std::string_view text) {
  return detail::PolyParser(field, nvars, text).parse();
}

/// Renders a polynomial in a form poly_parse accepts.
inline std::string poly_render(const MultivariatePolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) out += " + ";
    first = false;
    std::string coef;
    const auto& cs = c.coeffs;
    bool coef_trivial = cs[0] == 1;
    for (std::size_t i = 1; i < cs.size(); ++i) coef_trivial = coef_trivial && cs[i] == 0;
    {
      std::string t;
      bool any = false;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i]) continue;
        if (any) t += "+";
        any = true;
        if (i == 0)
          t += std::to_string(cs[i]);
        else {
          if (cs[i] != 1) t += std::to_string(cs[i]);
          t += "t";
          if (i > 1) t += "^" + std::to_string(i);
        }
      }
      coef = cs.size() > 1 && any && (t.find('t') != std::string::npos) ? "(" + t + ")" : t;
    }
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += coef.empty() ? "1" : coef;
    } else if (coef_trivial) {
      out += mono;
    } else {
      out += (coef.empty() ? "1" : coef) + "*" + mono;
    }
  }
  return out;
}

/// Pointwise product (f (x) g)(a, b) = f(a) * g(b) on A x B, for functions
/// into the additive group of `field`. For nonzero factors the degree adds.
inline GroupFunction tensor(const GroupFunction& f, const GroupFunction& g,
                            const FiniteField& field) {
  if (f.codomain() != field.additive_group() || g.codomain() != field.additive_group())
    throw std::invalid_argument("tensor factors must map into the field's additive group");
  const auto AB = product_group({f.domain(), g.domain()});
  const std::uint64_t bs = g.domain().order();
  std::vector<std::uint32_t> t(AB.order());
  for (std::uint64_t a = 0; a < f.domain().order(); ++a) {
    const FqElement fa = field.element_of_rank(f.at_rank(a));
    for (std::uint64_t b = 0; b < bs; ++b) {
      const FqElement gb = field.element_of_rank(g.at_rank(b));
      t[a * bs + b] = static_cast<std::uint32_t>(field.rank_of(field.mul(fa, gb)));
    }
  }
  return GroupFunction(AB, field.additive_group(), std::move(t));
}

/// Pointwise product of two functions into the same field's additive group.
inline GroupFunction pointwise_mul(const GroupFunction& f, const GroupFunction& g,
                                   const FiniteField& field) {
  if (f.domain() != g.domain()) throw std::invalid_argument("domains differ");
  if (f.codomain() != field.additive_group() || g.codomain() != field.additive_group())
    throw std::invalid_argument("factors must map into the field's additive group");
  std::vector<std::uint32_t> t(f.domain().order());
  for (std::uint64_t x = 0; x < f.domain().order(); ++x)
    t[x] = static_cast<std::uint32_t>(field.rank_of(
        field.mul(field.element_of_rank(f.at_rank(x)), field.element_of_rank(g.at_rank(x)))));
  return GroupFunction(f.domain(), field.additive_group(), std::move(t));
}

}  // namespace fundeg
