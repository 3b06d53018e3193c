#pragma once

// F[x_1..x_m] tensor Exterior(xi_1..xi_n) with the supercommutative sign rule.
// Terms live in a canonically ordered map, so equality is structural equality
// and printing order is the storage order.

#include "superjac/field.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace superjac {

inline constexpr std::size_t kMaxOddVars = 63;
inline constexpr int kJDegreeInfinity = std::numeric_limits<int>::max();

struct RingContext {
  std::size_t even_vars = 0;
  std::size_t odd_vars = 0;
  FieldSpec field;

  RingContext() = default;
  RingContext(std::size_t m, std::size_t n, FieldSpec f)
      : even_vars(m), odd_vars(n), field(std::move(f)) {
    if (odd_vars > kMaxOddVars) fail_precondition("too many odd generators");
  }

  friend bool operator==(const RingContext& a, const RingContext& b) {
    return a.even_vars == b.even_vars && a.odd_vars == b.odd_vars && a.field == b.field;
  }
  friend bool operator!=(const RingContext& a, const RingContext& b) { return !(a == b); }
};

// Bit k-1 set means xi_k is present.
using OddSet = std::uint64_t;

struct SuperMonomial {
  std::vector<std::uint32_t> exponents;  // length = even_vars
  OddSet odd = 0;

  unsigned total_even_degree() const {
    unsigned d = 0;
    for (auto e : exponents) d += e;
    return d;
  }

  int odd_degree() const { return std::popcount(odd); }

  friend bool operator==(const SuperMonomial& a, const SuperMonomial& b) {
    return a.odd == b.odd && a.exponents == b.exponents;
  }
  friend bool operator!=(const SuperMonomial& a, const SuperMonomial& b) { return !(a == b); }
};

// Storage and print order: higher total even degree first, then even exponent
// vectors lexicographically descending, then fewer odd factors first, then odd
// index sequences lexicographically ascending.
struct TermOrder {
  bool operator()(const SuperMonomial& a, const SuperMonomial& b) const {
    unsigned da = a.total_even_degree(), db = b.total_even_degree();
    if (da != db) return da > db;
    if (a.exponents != b.exponents) {
      for (std::size_t i = 0; i < a.exponents.size(); ++i) {
        if (a.exponents[i] != b.exponents[i]) return a.exponents[i] > b.exponents[i];
      }
    }
    int pa = a.odd_degree(), pb = b.odd_degree();
    if (pa != pb) return pa < pb;
    if (a.odd == b.odd) return false;
    OddSet diff = a.odd ^ b.odd;
    OddSet lowest = diff & (~diff + 1);
    return (a.odd & lowest) != 0;
  }
};

enum class Parity { zero, even, odd, mixed };

class SuperPolynomial {
 public:
  using TermMap = std::map<SuperMonomial, Scalar, TermOrder>;

  SuperPolynomial() = default;
  explicit SuperPolynomial(RingContext ctx) : ctx_(std::move(ctx)) {}

  static SuperPolynomial zero(const RingContext& ctx) { return SuperPolynomial(ctx); }

  static SuperPolynomial constant(const RingContext& ctx, const Scalar& c) {
    check_scalar(ctx, c);
    SuperPolynomial p(ctx);
    if (!c.is_zero()) {
      p.terms_.emplace(unit_monomial(ctx), c);
    }
    return p;
  }

  static SuperPolynomial constant(const RingContext& ctx, long long v) {
    return constant(ctx, Scalar::from_integer(ctx.field, v));
  }

  // 1-based generator indices, matching the x1/xi1 surface syntax.
  static SuperPolynomial even_variable(const RingContext& ctx, std::size_t i) {
    if (i < 1 || i > ctx.even_vars) fail_precondition("even variable index out of range");
    SuperMonomial m = unit_monomial(ctx);
    m.exponents[i - 1] = 1;
    SuperPolynomial p(ctx);
    p.terms_.emplace(std::move(m), Scalar::one(ctx.field));
    return p;
  }

  static SuperPolynomial odd_variable(const RingContext& ctx, std::size_t k) {
    if (k < 1 || k > ctx.odd_vars) fail_precondition("odd variable index out of range");
    SuperMonomial m = unit_monomial(ctx);
    m.odd = OddSet{1} << (k - 1);
    SuperPolynomial p(ctx);
    p.terms_.emplace(std::move(m), Scalar::one(ctx.field));
    return p;
  }

  static SuperPolynomial monomial(const RingContext& ctx, SuperMonomial m, const Scalar& c) {
    check_monomial(ctx, m);
    check_scalar(ctx, c);
    SuperPolynomial p(ctx);
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
  }

  // Sums duplicates and drops zero sums; the input need not be sorted.
  static SuperPolynomial from_terms(const RingContext& ctx,
                                    const std::vector<std::pair<SuperMonomial, Scalar>>& terms) {
    SuperPolynomial p(ctx);
    for (const auto& [m, c] : terms) {
      check_monomial(ctx, m);
      check_scalar(ctx, c);
      p.accumulate(m, c);
    }
    return p;
  }

  const RingContext& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const SuperMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(ctx_.field) : it->second;
  }

  Scalar constant_term() const { return coefficient(unit_monomial(ctx_)); }

  friend SuperPolynomial operator+(const SuperPolynomial& a, const SuperPolynomial& b) {
    a.check_same(b);
    SuperPolynomial r = a;
    for (const auto& [m, c] : b.terms_) r.accumulate(m, c);
    return r;
  }

  friend SuperPolynomial operator-(const SuperPolynomial& a, const SuperPolynomial& b) {
    return a + (-b);
  }

  SuperPolynomial operator-() const {
    SuperPolynomial r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    a.check_same(b);
    SuperPolynomial r(a.ctx_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.odd & mb.odd) continue;  // repeated odd factor kills the term
        SuperMonomial m;
        m.exponents.resize(ma.exponents.size());
        for (std::size_t i = 0; i < m.exponents.size(); ++i) {
          m.exponents[i] = ma.exponents[i] + mb.exponents[i];
        }
        m.odd = ma.odd | mb.odd;
        Scalar c = ca * cb;
        if (koszul_inversions(ma.odd, mb.odd) & 1) c = -c;
        r.accumulate(m, c);
      }
    }
    return r;
  }

  friend SuperPolynomial operator*(const Scalar& c, const SuperPolynomial& a) {
    check_scalar(a.ctx_, c);
    SuperPolynomial r(a.ctx_);
    if (c.is_zero()) return r;
    for (const auto& [m, t] : a.terms_) {
      Scalar v = c * t;
      if (!v.is_zero()) r.terms_.emplace(m, v);
    }
    return r;
  }

  friend SuperPolynomial operator*(const SuperPolynomial& a, const Scalar& c) { return c * a; }

  SuperPolynomial& operator+=(const SuperPolynomial& o) { return *this = *this + o; }
  SuperPolynomial& operator-=(const SuperPolynomial& o) { return *this = *this - o; }
  SuperPolynomial& operator*=(const SuperPolynomial& o) { return *this = *this * o; }

  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SuperPolynomial& a, const SuperPolynomial& b) { return !(a == b); }

  Parity parity() const {
    if (terms_.empty()) return Parity::zero;
    bool any_even = false, any_odd = false;
    for (const auto& [m, c] : terms_) {
      (m.odd_degree() % 2 == 0 ? any_even : any_odd) = true;
    }
    if (any_even && any_odd) return Parity::mixed;
    return any_even ? Parity::even : Parity::odd;
  }

  // Projection to the classical subring: kills every term touching an odd generator.
  SuperPolynomial reduce_mod_j() const {
    SuperPolynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
      if (m.odd == 0) r.terms_.emplace(m, c);
    }
    return r;
  }

  bool is_classical() const {
    for (const auto& [m, c] : terms_) {
      if (m.odd != 0) return false;
    }
    return true;
  }

  // Minimal number of odd factors across terms; infinity for the zero polynomial.
  int j_degree() const {
    int d = kJDegreeInfinity;
    for (const auto& [m, c] : terms_) d = std::min(d, m.odd_degree());
    return d;
  }

  // Largest total even degree across terms; 0 for the zero polynomial.
  unsigned even_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_even_degree());
    return d;
  }

  // True iff the image under reduce_mod_j is a nonzero constant.
  bool is_unit() const {
    bool found = false;
    for (const auto& [m, c] : terms_) {
      if (m.odd != 0) continue;
      if (m.total_even_degree() != 0) return false;
      found = true;
    }
    return found;
  }

  // Substitutes even coordinates, keeps odd generators; result has even_vars = 0.
  SuperPolynomial evaluate_at_point(const std::vector<Scalar>& a) const {
    if (a.size() != ctx_.even_vars) fail_precondition("point length does not match even variable count");
    for (const auto& ai : a) check_scalar(ctx_, ai);
    RingContext rct(0, ctx_.odd_vars, ctx_.field);
    SuperPolynomial r(rct);
    for (const auto& [m, c] : terms_) {
      Scalar v = c;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (m.exponents[i]) v *= a[i].pow(m.exponents[i]);
      }
      SuperMonomial rm;
      rm.odd = m.odd;
      r.accumulate(rm, v);
    }
    return r;
  }

  // Coefficient embedding into a field with the same prime subfield.
  SuperPolynomial extend_scalars(const FieldSpec& target) const {
    if (target == ctx_.field) return *this;
    if (ctx_.field.kind() != FieldSpec::Kind::prime ||
        target.kind() != FieldSpec::Kind::extension ||
        target.characteristic() != ctx_.field.characteristic()) {
      fail_precondition("no coefficient embedding into the requested field");
    }
    RingContext rct(ctx_.even_vars, ctx_.odd_vars, target);
    SuperPolynomial r(rct);
    for (const auto& [m, c] : terms_) {
      r.terms_.emplace(m, Scalar::from_coefficients(target, {c.residue()}));
    }
    return r;
  }

  static SuperMonomial unit_monomial(const RingContext& ctx) {
    SuperMonomial m;
    m.exponents.assign(ctx.even_vars, 0);
    return m;
  }

  // Count of pairs (k, l) in K x L with k > l; parity gives the Koszul sign.
  static int koszul_inversions(OddSet k, OddSet l) {
    int inv = 0;
    while (l) {
      int bit = std::countr_zero(l);
      inv += std::popcount(k >> (bit + 1));
      l &= l - 1;
    }
    return inv;
  }

 private:
  static void check_monomial(const RingContext& ctx, const SuperMonomial& m) {
    if (m.exponents.size() != ctx.even_vars) fail_precondition("monomial exponent length mismatch");
    if (ctx.odd_vars < kMaxOddVars && (m.odd >> ctx.odd_vars) != 0) {
      fail_precondition("monomial uses odd generators outside the context");
    }
  }

  static void check_scalar(const RingContext& ctx, const Scalar& c) {
    if (c.field() != ctx.field) fail_precondition("scalar field does not match ring context");
  }

  void check_same(const SuperPolynomial& o) const {
    if (ctx_ != o.ctx_) fail_precondition("ring context mismatch");
  }

  void accumulate(const SuperMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  RingContext ctx_;
  TermMap terms_;
};

}  // namespace superjac
