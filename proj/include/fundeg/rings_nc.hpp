#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fundeg/function.hpp"
#include "fundeg/group.hpp"

namespace fundeg {

/// A finite, possibly noncommutative ring: either Z_n or the matrix ring
/// M_k(Z_n). Elements are handled as ranks into the additive group (Z_n
/// resp. Z_n^{k*k} with row-major entry order, last entry fastest).
class FiniteRing {
 public:
  enum class Kind { Zn, Mat };

  static FiniteRing make_zn(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("ring modulus must be >= 2");
    return FiniteRing(Kind::Zn, 1, n);
  }

  static FiniteRing make_mat(std::uint32_t k, std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("ring modulus must be >= 2");
    if (k < 1) throw std::invalid_argument("matrix size must be >= 1");
    return FiniteRing(Kind::Mat, k, n);
  }

  /// Parses "Z<n>" or "M<k>(Z<n>)".
  static FiniteRing parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::uint32_t mat_size() const { return k_; }
  std::uint64_t base_modulus() const { return n_; }
  std::uint64_t size() const { return add_group_.order(); }
  const FiniteAbelianGroup& additive_group() const { return add_group_; }

  std::uint64_t zero_rank() const { return 0; }

  std::uint64_t one_rank() const {
    if (kind_ == Kind::Zn) return 1 % n_;
    std::vector<std::uint64_t> c(k_ * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) c[i * k_ + i] = 1 % n_;
    return add_group_.rank_of_coords(c);
  }

  std::uint64_t add_ranks(std::uint64_t a, std::uint64_t b) const {
    return add_group_.add_ranks(a, b);
  }
  std::uint64_t neg_rank(std::uint64_t a) const { return add_group_.neg_rank(a); }

  std::uint64_t mul_ranks(std::uint64_t a, std::uint64_t b) const {
    if (kind_ == Kind::Zn) return (a * b) % n_;
    const auto ma = add_group_.coords_of_rank(a);
    const auto mb = add_group_.coords_of_rank(b);
    std::vector<std::uint64_t> mc(k_ * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t l = 0; l < k_; ++l) {
        const std::uint64_t v = ma[i * k_ + l];
        if (!v) continue;
        for (std::uint32_t j = 0; j < k_; ++j)
          mc[i * k_ + j] = (mc[i * k_ + j] + v * mb[l * k_ + j]) % n_;
      }
    return add_group_.rank_of_coords(mc);
  }

  /// Rank of the element with the given matrix entries (row-major) or,
  /// for Z_n, the single residue. Values are reduced mod n; signed input
  /// is accepted for convenience with literal matrices.
  std::uint64_t element_from_ints(const std::vector<std::int64_t>& vals) const {
    const std::size_t want = kind_ == Kind::Zn ? 1 : static_cast<std::size_t>(k_) * k_;
    if (vals.size() != want) throw std::invalid_argument("wrong number of ring entries");
    std::vector<std::uint64_t> c(want);
    for (std::size_t i = 0; i < want; ++i) {
      std::int64_t r = vals[i] % static_cast<std::int64_t>(n_);
      if (r < 0) r += static_cast<std::int64_t>(n_);
      c[i] = static_cast<std::uint64_t>(r);
    }
    return add_group_.rank_of_coords(c);
  }

  std::string render_rank(std::uint64_t r) const {
    if (kind_ == Kind::Zn) return std::to_string(r);
    const auto c = add_group_.coords_of_rank(r);
    std::string s = "[";
    for (std::uint32_t i = 0; i < k_; ++i) {
      if (i) s += ",";
      s += "[";
      for (std::uint32_t j = 0; j < k_; ++j) {
        if (j) s += ",";
        s += std::to_string(c[i * k_ + j]);
      }
      s += "]";
    }
    return s + "]";
  }

  std::string to_string() const {
    if (kind_ == Kind::Zn) return "Z" + std::to_string(n_);
    return "M" + std::to_string(k_) + "(Z" + std::to_string(n_) + ")";
  }

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) {
    return a.kind_ == b.kind_ && a.k_ == b.k_ && a.n_ == b.n_;
  }
  friend bool operator!=(const FiniteRing& a, const FiniteRing& b) { return !(a == b); }

 private:
  FiniteRing(Kind kind, std::uint32_t k, std::uint64_t n)
      : kind_(kind),
        k_(kind == Kind::Zn ? 1 : k),
        n_(n),
        add_group_(std::vector<std::uint64_t>(kind == Kind::Zn ? 1 : static_cast<std::size_t>(k) * k,
                                              n)) {
    if (size() > (1u << 16)) throw std::invalid_argument("rings capped at 2^16 elements");
  }

  Kind kind_;
  std::uint32_t k_;
  std::uint64_t n_;
  FiniteAbelianGroup add_group_;
};

/// One letter of a word: a variable x_i or a ring constant.
struct NcAtom {
  bool is_var = false;
  std::uint32_t var = 0;          // 0-based, valid when is_var
  std::uint64_t const_rank = 0;   // valid when !is_var

  friend auto operator<=>(const NcAtom&, const NcAtom&) = default;
};

using NcWord = std::vector<NcAtom>;

/// A formal polynomial expression over a finite ring: an integer
/// combination of nonempty words over constants and variables. Words keep
/// their factor order and adjacent constants are NOT merged; evaluation
/// makes them equal, but the syntax stays a free word. Coefficients are
/// stored reduced modulo the exponent of the additive group (sound
/// pointwise) and zero-coefficient terms are dropped.
class NcPolyExpression {
 public:
  NcPolyExpression(FiniteRing ring, std::uint32_t nvars)
      : ring_(std::move(ring)), nvars_(nvars) {}

  const FiniteRing& ring() const { return ring_; }
  std::uint32_t nvars() const { return nvars_; }
  const std::map<NcWord, std::uint64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(NcWord word, std::int64_t z) {
    if (word.empty()) throw std::invalid_argument("words must be nonempty");
    for (const auto& a : word) {
      if (a.is_var && a.var >= nvars_) throw std::invalid_argument("variable index out of range");
      if (!a.is_var && a.const_rank >= ring_.size())
        throw std::invalid_argument("constant does not belong to the ring");
    }
    const std::int64_t e = static_cast<std::int64_t>(ring_.additive_group().exponent());
    std::int64_t r = z % e;
    if (r < 0) r += e;
    auto it = terms_.find(word);
    if (it == terms_.end()) {
      if (r != 0) terms_.emplace(std::move(word), static_cast<std::uint64_t>(r));
      return;
    }
    it->second = (it->second + static_cast<std::uint64_t>(r)) % static_cast<std::uint64_t>(e);
    if (it->second == 0) terms_.erase(it);
  }

  /// Count of variable letters in the longest surviving word; 0 for the
  /// zero expression.
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& [w, z] : terms_) {
      std::uint64_t vars = 0;
      for (const auto& a : w) vars += a.is_var ? 1 : 0;
      d = std::max(d, vars);
    }
    return d;
  }

  /// Evaluates at a point given by one additive-group rank per variable.
  std::uint64_t evaluate_ranks(const std::vector<std::uint64_t>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluation point arity mismatch");
    std::uint64_t acc = ring_.zero_rank();
    for (const auto& [w, z] : terms_) {
      std::uint64_t val = w[0].is_var ? point[w[0].var] : w[0].const_rank;
      for (std::size_t i = 1; i < w.size(); ++i)
        val = ring_.mul_ranks(val, w[i].is_var ? point[w[i].var] : w[i].const_rank);
      acc = ring_.add_ranks(acc, ring_.additive_group().scale_rank(z, val));
    }
    return acc;
  }

  std::uint64_t evaluate(const std::vector<std::uint64_t>& point_ranks) const {
    return evaluate_ranks(point_ranks);
  }

  /// The induced function R^n -> R on additive groups: domain is the
  /// n-fold product of the ring's additive group, one block per variable.
  GroupFunction induced_function(std::uint64_t point_cap = (1u << 24)) const {
    const auto& R = ring_.additive_group();
    const FiniteAbelianGroup domain = power_group(R, nvars_);
    if (domain.order() > point_cap) throw CapExceeded("induced-function table exceeds the point cap");
    std::vector<std::uint32_t> t(domain.order());
    std::vector<std::uint64_t> point(nvars_);
    const std::uint64_t rsize = R.order();
    for (std::uint64_t r = 0; r < domain.order(); ++r) {
      std::uint64_t rem = r;
      for (std::uint32_t v = nvars_; v-- > 0;) {
        point[v] = rem % rsize;
        rem /= rsize;
      }
      t[r] = static_cast<std::uint32_t>(evaluate_ranks(point));
    }
    return GroupFunction(domain, R, std::move(t));
  }

 private:
  FiniteRing ring_;
  std::uint32_t nvars_;
  std::map<NcWord, std::uint64_t> terms_;
};

namespace detail {

/// Parser for noncommutative polynomial expressions: terms joined by
/// '+'/'-'; a term is an optional leading integer coefficient followed by
/// '*'-joined factors, each `x<i>`, an integer constant (Z_n rings) or a
/// row-major matrix literal `[[..],..]` (matrix rings). A term that is a
/// bare integer is the constant word of that ring element.
class NcParser {
 public:
  NcParser(const FiniteRing& ring, std::uint32_t nvars, std::string_view text)
      : ring_(ring), nvars_(nvars), text_(text) {}

  NcPolyExpression parse() {
    NcPolyExpression out(ring_, nvars_);
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = (take() == '-');
    parse_term(out, negate);
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == '+' || c == '-') {
        take();
        parse_term(out, c == '-');
      } else {
        break;
      }
    }
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input in expression");
    return out;
  }

 private:
  void parse_term(NcPolyExpression& out, bool negate) {
    skip_ws();
    std::int64_t coeff = 1;
    NcWord word;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint64_t z = parse_uint();
      skip_ws();
      if (peek() == '*') {
        take();
        coeff = static_cast<std::int64_t>(z);
        parse_factors(word);
      } else {
        // A bare integer is a constant word.
        if (ring_.kind() != FiniteRing::Kind::Zn)
          throw ParseError("integer constant in a matrix-ring expression");
        word.push_back(NcAtom{false, 0, ring_.element_from_ints({static_cast<std::int64_t>(z)})});
      }
    } else {
      parse_factors(word);
    }
    out.add_term(std::move(word), negate ? -coeff : coeff);
  }

  void parse_factors(NcWord& word) {
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == 'x') {
        take();
        const std::uint64_t idx = parse_uint();
        if (idx < 1 || idx > nvars_) throw ParseError("variable index out of range");
        word.push_back(NcAtom{true, static_cast<std::uint32_t>(idx - 1), 0});
      } else if (c == '[') {
        if (ring_.kind() != FiniteRing::Kind::Mat)
          throw ParseError("matrix literal in a non-matrix ring expression");
        word.push_back(NcAtom{false, 0, parse_matrix()});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        if (ring_.kind() != FiniteRing::Kind::Zn)
          throw ParseError("integer constant in a matrix-ring expression");
        word.push_back(NcAtom{false, 0, ring_.element_from_ints({parse_int()})});
      } else {
        throw ParseError("expected a factor in expression");
      }
      skip_ws();
      if (peek() == '*')
        take();
      else
        break;
    }
    if (word.empty()) throw ParseError("empty term in expression");
  }

  std::uint64_t parse_matrix() {
    const std::uint32_t k = ring_.mat_size();
    expect('[');
    std::vector<std::int64_t> vals;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (i) expect(',');
      expect('[');
      for (std::uint32_t j = 0; j < k; ++j) {
        if (j) expect(',');
        vals.push_back(parse_int());
      }
      expect(']');
    }
    expect(']');
    return ring_.element_from_ints(vals);
  }

  std::int64_t parse_int() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      take();
      neg = true;
    }
    const std::uint64_t n = parse_uint();
    if (n > static_cast<std::uint64_t>(INT64_MAX)) throw ParseError("integer literal too large");
    return neg ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n);
  }

  std::uint64_t parse_uint() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected an integer");
    std::uint64_t n = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (n > (UINT64_MAX - 9) / 10) throw ParseError("integer literal too large");
      n = n * 10 + static_cast<std::uint64_t>(take() - '0');
    }
    return n;
  }

  void expect(char c) {
    skip_ws();
    if (take() != c) throw ParseError(std::string("expected '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

  const FiniteRing& ring_;
  std::uint32_t nvars_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline NcPolyExpression nc_parse(const FiniteRing& ring, std::uint32_t nvars,
                                 std::string_view text) {
  return detail::NcParser(ring, nvars, text).parse();
}

inline std::uint64_t nc_degree(const NcPolyExpression& f) { return f.degree(); }

inline FiniteRing FiniteRing::parse(std::string_view text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_uint = [&]() -> std::uint64_t {
    skip_ws();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected an integer in ring spec");
    std::uint64_t n = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      n = n * 10 + static_cast<std::uint64_t>(text[i++] - '0');
    return n;
  };
  skip_ws();
  if (i >= text.size()) throw ParseError("empty ring spec");
  const char c = text[i];
  if (c == 'Z' || c == 'z') {
    ++i;
    const std::uint64_t n = parse_uint();
    skip_ws();
    if (i != text.size()) throw ParseError("unexpected trailing input in ring spec");
    return make_zn(n);
  }
  if (c == 'M' || c == 'm') {
    ++i;
    const std::uint64_t k = parse_uint();
    skip_ws();
    if (i >= text.size() || text[i] != '(') throw ParseError("expected '(' in ring spec");
    ++i;
    skip_ws();
    if (i >= text.size() || (text[i] != 'Z' && text[i] != 'z'))
      throw ParseError("expected 'Z' in ring spec");
    ++i;
    const std::uint64_t n = parse_uint();
    skip_ws();
    if (i >= text.size() || text[i] != ')') throw ParseError("expected ')' in ring spec");
    ++i;
    skip_ws();
    if (i != text.size()) throw ParseError("unexpected trailing input in ring spec");
    return make_mat(static_cast<std::uint32_t>(k), n);
  }
  throw ParseError("ring spec must be Z<n> or M<k>(Z<n>)");
}

}  // namespace fundeg
