#pragma once

// Endomorphisms of the superalgebra, given by parity-respecting generator
// images. apply() realizes the induced algebra map; compose(phi, psi) is the
// map with apply(compose(phi, psi), p) == apply(phi, apply(psi, p)).

#include "superjac/matrix.hpp"
#include "superjac/ring.hpp"
#include "superjac/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace superjac {

class SuperEndomorphism {
 public:
  SuperEndomorphism(RingContext ctx, std::vector<SuperPolynomial> even_images,
                    std::vector<SuperPolynomial> odd_images)
      : ctx_(std::move(ctx)), fx_(std::move(even_images)), fxi_(std::move(odd_images)) {
    if (fx_.size() != ctx_.even_vars || fxi_.size() != ctx_.odd_vars) {
      fail_precondition("image count does not match ring context");
    }
    for (const auto& f : fx_) {
      if (f.context() != ctx_) fail_precondition("even image context mismatch");
      Parity p = f.parity();
      if (p == Parity::odd || p == Parity::mixed) {
        fail_precondition("even generator image must have even parity");
      }
    }
    for (const auto& q : fxi_) {
      if (q.context() != ctx_) fail_precondition("odd image context mismatch");
      Parity p = q.parity();
      if (p == Parity::even || p == Parity::mixed) {
        fail_precondition("odd generator image must have odd parity");
      }
    }
  }

  static SuperEndomorphism identity(const RingContext& ctx) {
    std::vector<SuperPolynomial> fx, fxi;
    for (std::size_t i = 1; i <= ctx.even_vars; ++i) fx.push_back(SuperPolynomial::even_variable(ctx, i));
    for (std::size_t k = 1; k <= ctx.odd_vars; ++k) fxi.push_back(SuperPolynomial::odd_variable(ctx, k));
    return SuperEndomorphism(ctx, std::move(fx), std::move(fxi));
  }

  const RingContext& context() const { return ctx_; }
  const std::vector<SuperPolynomial>& even_images() const { return fx_; }
  const std::vector<SuperPolynomial>& odd_images() const { return fxi_; }
  const SuperPolynomial& even_image(std::size_t i) const { return fx_.at(i - 1); }
  const SuperPolynomial& odd_image(std::size_t k) const { return fxi_.at(k - 1); }

  bool is_identity() const { return *this == identity(ctx_); }

  friend bool operator==(const SuperEndomorphism& a, const SuperEndomorphism& b) {
    return a.ctx_ == b.ctx_ && a.fx_ == b.fx_ && a.fxi_ == b.fxi_;
  }
  friend bool operator!=(const SuperEndomorphism& a, const SuperEndomorphism& b) { return !(a == b); }

 private:
  RingContext ctx_;
  std::vector<SuperPolynomial> fx_;
  std::vector<SuperPolynomial> fxi_;
};

// Substitution engine. Power products of the images are memoized, so applying
// one endomorphism to many polynomials shares work.
class ApplyEngine {
 public:
  explicit ApplyEngine(const SuperEndomorphism& phi) : phi_(phi) {}

  SuperPolynomial operator()(const SuperPolynomial& p) {
    if (p.context() != phi_.context()) fail_precondition("ring context mismatch");
    const RingContext& ctx = phi_.context();
    SuperPolynomial result = SuperPolynomial::zero(ctx);
    for (const auto& [m, c] : p.terms()) {
      SuperPolynomial image = even_product(m.exponents) * odd_product(m.odd);
      result += c * image;
    }
    return result;
  }

 private:
  const SuperPolynomial& even_product(const std::vector<std::uint32_t>& alpha) {
    auto found = even_memo_.find(alpha);
    if (found != even_memo_.end()) return found->second;
    std::vector<std::vector<std::uint32_t>> chain;
    std::vector<std::uint32_t> cur = alpha;
    while (even_memo_.find(cur) == even_memo_.end()) {
      std::size_t j = 0;
      while (j < cur.size() && cur[j] == 0) ++j;
      if (j == cur.size()) {
        even_memo_.emplace(cur, SuperPolynomial::constant(phi_.context(), 1));
        break;
      }
      chain.push_back(cur);
      --cur[j];
    }
    while (!chain.empty()) {
      std::vector<std::uint32_t> top = std::move(chain.back());
      chain.pop_back();
      std::size_t j = 0;
      while (top[j] == 0) ++j;
      std::vector<std::uint32_t> prev = top;
      --prev[j];
      SuperPolynomial prod = even_memo_.at(prev) * phi_.even_image(j + 1);
      even_memo_.emplace(std::move(top), std::move(prod));
    }
    return even_memo_.at(alpha);
  }

  // Builds q_{k1} * ... * q_{kr} with indices ascending.
  const SuperPolynomial& odd_product(OddSet k) {
    auto found = odd_memo_.find(k);
    if (found != odd_memo_.end()) return found->second;
    if (odd_memo_.find(0) == odd_memo_.end()) {
      odd_memo_.emplace(0, SuperPolynomial::constant(phi_.context(), 1));
    }
    std::vector<OddSet> chain;
    OddSet cur = k;
    while (odd_memo_.find(cur) == odd_memo_.end()) {
      chain.push_back(cur);
      OddSet high = OddSet{1} << (63 - std::countl_zero(cur));
      cur &= ~high;
    }
    while (!chain.empty()) {
      OddSet top = chain.back();
      chain.pop_back();
      int hb = 63 - std::countl_zero(top);
      SuperPolynomial prod = odd_memo_.at(top & ~(OddSet{1} << hb)) * phi_.odd_image(static_cast<std::size_t>(hb) + 1);
      odd_memo_.emplace(top, std::move(prod));
    }
    return odd_memo_.at(k);
  }

  const SuperEndomorphism& phi_;
  std::map<std::vector<std::uint32_t>, SuperPolynomial> even_memo_;
  std::map<OddSet, SuperPolynomial> odd_memo_;
};

inline SuperPolynomial apply(const SuperEndomorphism& phi, const SuperPolynomial& p) {
  ApplyEngine engine(phi);
  return engine(p);
}

inline SuperEndomorphism compose(const SuperEndomorphism& phi, const SuperEndomorphism& psi) {
  if (phi.context() != psi.context()) fail_precondition("ring context mismatch");
  ApplyEngine engine(phi);
  std::vector<SuperPolynomial> fx, fxi;
  fx.reserve(phi.context().even_vars);
  fxi.reserve(phi.context().odd_vars);
  for (const auto& f : psi.even_images()) fx.push_back(engine(f));
  for (const auto& q : psi.odd_images()) fxi.push_back(engine(q));
  return SuperEndomorphism(phi.context(), std::move(fx), std::move(fxi));
}

// Data of the first-order part: classical even images, the matrix of
// xi-linear coefficients (entries in F[x]) and its constant part.
struct LinearParts {
  std::vector<SuperPolynomial> even_part;
  PolyMatrix coeff_matrix;
  ScalarMatrix const_matrix;
};

inline LinearParts linear_parts(const SuperEndomorphism& phi) {
  const RingContext& ctx = phi.context();
  LinearParts lp;
  for (const auto& f : phi.even_images()) lp.even_part.push_back(f.reduce_mod_j());
  std::size_t n = ctx.odd_vars;
  lp.coeff_matrix.assign(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(ctx)));
  lp.const_matrix.assign(n, std::vector<Scalar>(n, Scalar::zero(ctx.field)));
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [m, c] : phi.odd_images()[k].terms()) {
      if (m.odd_degree() != 1) continue;
      std::size_t l = static_cast<std::size_t>(std::countr_zero(m.odd));
      SuperMonomial classical;
      classical.exponents = m.exponents;
      lp.coeff_matrix[k][l] += SuperPolynomial::monomial(ctx, classical, c);
      if (m.total_even_degree() == 0) lp.const_matrix[k][l] = c;
    }
  }
  return lp;
}

// Elementary automorphism builders. Each one validates the conditions that
// make the map invertible by construction.

inline SuperEndomorphism elementary_even_linear(const RingContext& ctx, const ScalarMatrix& a) {
  if (a.size() != ctx.even_vars) fail_precondition("matrix size does not match even variable count");
  if (scalar_det(ctx.field, a).is_zero()) fail_precondition("even linear matrix is singular");
  auto id = SuperEndomorphism::identity(ctx);
  std::vector<SuperPolynomial> fx;
  for (std::size_t i = 0; i < ctx.even_vars; ++i) {
    SuperPolynomial img = SuperPolynomial::zero(ctx);
    for (std::size_t j = 0; j < ctx.even_vars; ++j) {
      img += a[i][j] * SuperPolynomial::even_variable(ctx, j + 1);
    }
    fx.push_back(std::move(img));
  }
  return SuperEndomorphism(ctx, std::move(fx), id.odd_images());
}

inline SuperEndomorphism elementary_even_triangular(const RingContext& ctx, std::size_t i,
                                                    const SuperPolynomial& h) {
  if (i < 1 || i > ctx.even_vars) fail_precondition("even variable index out of range");
  if (h.context() != ctx) fail_precondition("ring context mismatch");
  if (!h.is_classical()) fail_precondition("triangular shift must be classical");
  for (const auto& [m, c] : h.terms()) {
    if (m.exponents[i - 1] != 0) fail_precondition("triangular shift must not involve the shifted variable");
  }
  auto result = SuperEndomorphism::identity(ctx);
  std::vector<SuperPolynomial> fx = result.even_images();
  fx[i - 1] += h;
  return SuperEndomorphism(ctx, std::move(fx), result.odd_images());
}

inline SuperEndomorphism elementary_even_jshift(const RingContext& ctx, std::size_t i,
                                                const SuperPolynomial& s) {
  if (i < 1 || i > ctx.even_vars) fail_precondition("even variable index out of range");
  if (s.context() != ctx) fail_precondition("ring context mismatch");
  Parity p = s.parity();
  if (p == Parity::odd || p == Parity::mixed) fail_precondition("shift must have even parity");
  if (s.j_degree() < 2) fail_precondition("shift must vanish mod the odd ideal squared");
  auto result = SuperEndomorphism::identity(ctx);
  std::vector<SuperPolynomial> fx = result.even_images();
  fx[i - 1] += s;
  return SuperEndomorphism(ctx, std::move(fx), result.odd_images());
}

inline SuperEndomorphism elementary_odd_linear(const RingContext& ctx, const PolyMatrix& c) {
  if (c.size() != ctx.odd_vars) fail_precondition("matrix size does not match odd variable count");
  check_square(ctx, c);
  for (const auto& row : c) {
    for (const auto& e : row) {
      if (!e.is_classical()) fail_precondition("odd linear coefficients must be classical");
    }
  }
  if (!det_even(ctx, c).is_unit()) {
    fail_precondition("odd linear matrix determinant is not a nonzero constant");
  }
  auto id = SuperEndomorphism::identity(ctx);
  std::vector<SuperPolynomial> fxi;
  for (std::size_t k = 0; k < ctx.odd_vars; ++k) {
    SuperPolynomial img = SuperPolynomial::zero(ctx);
    for (std::size_t l = 0; l < ctx.odd_vars; ++l) {
      img += c[k][l] * SuperPolynomial::odd_variable(ctx, l + 1);
    }
    fxi.push_back(std::move(img));
  }
  return SuperEndomorphism(ctx, id.even_images(), std::move(fxi));
}

inline SuperEndomorphism elementary_odd_shift(const RingContext& ctx, std::size_t k,
                                              const SuperPolynomial& w) {
  if (k < 1 || k > ctx.odd_vars) fail_precondition("odd variable index out of range");
  if (w.context() != ctx) fail_precondition("ring context mismatch");
  Parity p = w.parity();
  if (p == Parity::even || p == Parity::mixed) fail_precondition("shift must have odd parity");
  if (w.j_degree() < 3) fail_precondition("shift must lie deeper than the linear odd layer");
  auto result = SuperEndomorphism::identity(ctx);
  std::vector<SuperPolynomial> fxi = result.odd_images();
  fxi[k - 1] += w;
  return SuperEndomorphism(ctx, result.even_images(), std::move(fxi));
}

struct TameOptions {
  // Cap on the composed classical degree; draws that would exceed it are
  // redrawn with smaller parameters. Keeps inversion of the result tractable.
  unsigned even_degree_cap = 16;
};

namespace detail {

inline Scalar random_scalar(Rng& rng, const FieldSpec& field) {
  if (field.is_finite()) {
    return Scalar::from_index(field, rng.below(field.element_count()));
  }
  return Scalar::from_integer(field, rng.range(-2, 2));
}

inline Scalar random_nonzero_scalar(Rng& rng, const FieldSpec& field) {
  for (;;) {
    Scalar s = random_scalar(rng, field);
    if (!s.is_zero()) return s;
  }
}

// Classical monomial of total degree <= max_degree in the allowed variables.
inline SuperMonomial random_classical_monomial(Rng& rng, const RingContext& ctx,
                                               const std::vector<std::size_t>& allowed,
                                               unsigned max_degree) {
  SuperMonomial m = SuperPolynomial::unit_monomial(ctx);
  if (allowed.empty()) return m;
  unsigned d = static_cast<unsigned>(rng.below(max_degree + 1));
  for (unsigned t = 0; t < d; ++t) {
    std::size_t var = allowed[rng.below(allowed.size())];
    ++m.exponents[var - 1];
  }
  return m;
}

inline SuperPolynomial random_classical_poly(Rng& rng, const RingContext& ctx,
                                             const std::vector<std::size_t>& allowed,
                                             unsigned max_degree, std::size_t terms) {
  std::vector<std::pair<SuperMonomial, Scalar>> tl;
  for (std::size_t t = 0; t < terms; ++t) {
    tl.emplace_back(random_classical_monomial(rng, ctx, allowed, max_degree),
                    random_nonzero_scalar(rng, ctx.field));
  }
  return SuperPolynomial::from_terms(ctx, tl);
}

inline OddSet random_odd_subset(Rng& rng, std::size_t n, int size) {
  OddSet mask = 0;
  while (std::popcount(mask) < size) {
    mask |= OddSet{1} << rng.below(n);
  }
  return mask;
}

}  // namespace detail

// Seeded generator of tame automorphisms: a composition of `depth` elementary
// automorphisms with sparse random parameters of degree <= max_degree.
inline SuperEndomorphism random_tame(const RingContext& ctx, unsigned depth, unsigned max_degree,
                                     std::uint64_t seed, const TameOptions& options) {
  Rng rng(seed);
  std::size_t m = ctx.even_vars, n = ctx.odd_vars;
  std::vector<int> kinds;
  if (m >= 1) {
    kinds.push_back(0);  // even linear
    kinds.push_back(1);  // even triangular
    if (n >= 2) kinds.push_back(2);  // even shift into the odd ideal
  }
  if (n >= 1) kinds.push_back(3);  // odd linear
  if (n >= 3) kinds.push_back(4);  // odd shift
  SuperEndomorphism result = SuperEndomorphism::identity(ctx);
  if (kinds.empty() || max_degree == 0) return result;
  // Degree governor. bound dominates the even degree of every image of the
  // running composition. Substituting an elementary whose even images have
  // even degree e and whose odd images carry coefficients of even degree d
  // turns a term of even degree a with k odd factors into one of even degree
  // at most a*e + k*d, so: bound' = bound * max(1, e) + n * d. Each step
  // budgets its parameters to keep bound within options.even_degree_cap.
  unsigned long long bound = 1;
  const unsigned long long cap = std::max<unsigned long long>(1, options.even_degree_cap);
  std::vector<std::size_t> all_even;
  for (std::size_t i = 1; i <= m; ++i) all_even.push_back(i);
  for (unsigned step = 0; step < depth; ++step) {
    int kind = kinds[rng.below(kinds.size())];
    // Remaining multiplicative room (>= 1) and additive room per odd factor.
    unsigned mul_room = static_cast<unsigned>(std::min<unsigned long long>(cap / bound, max_degree));
    unsigned add_room = n == 0 ? 0 : static_cast<unsigned>(std::min<unsigned long long>((cap - bound) / n, max_degree));
    SuperEndomorphism elem = SuperEndomorphism::identity(ctx);
    switch (kind) {
      case 0: {
        ScalarMatrix a(m, std::vector<Scalar>(m, Scalar::zero(ctx.field)));
        do {
          for (auto& row : a) {
            for (auto& e : row) e = detail::random_scalar(rng, ctx.field);
          }
        } while (scalar_det(ctx.field, a).is_zero());
        elem = elementary_even_linear(ctx, a);
        break;
      }
      case 1: {
        std::size_t i = 1 + rng.below(m);
        std::vector<std::size_t> others;
        for (std::size_t v = 1; v <= m; ++v) {
          if (v != i) others.push_back(v);
        }
        SuperPolynomial h =
            detail::random_classical_poly(rng, ctx, others, std::max(1u, mul_room), 1 + rng.below(2));
        elem = elementary_even_triangular(ctx, i, h);
        bound *= std::max(1u, h.even_degree());
        break;
      }
      case 2: {
        std::size_t i = 1 + rng.below(m);
        std::vector<std::pair<SuperMonomial, Scalar>> tl;
        std::size_t terms = 1 + rng.below(2);
        for (std::size_t t = 0; t < terms; ++t) {
          int size = (n >= 4 && rng.chance(1, 4)) ? 4 : 2;
          SuperMonomial mono = detail::random_classical_monomial(rng, ctx, all_even, mul_room);
          mono.odd = detail::random_odd_subset(rng, n, size);
          tl.emplace_back(std::move(mono), detail::random_nonzero_scalar(rng, ctx.field));
        }
        SuperPolynomial s = SuperPolynomial::from_terms(ctx, tl);
        if (s.is_zero()) continue;
        elem = elementary_even_jshift(ctx, i, s);
        bound *= std::max(1u, s.even_degree());
        break;
      }
      case 3: {
        // P * L * D * U with unit triangular L, U and diagonal units, so the
        // determinant is a nonzero constant whatever the sparse entries are.
        // L*U products double the entry degree at worst, hence the halved
        // allowance.
        unsigned entry_degree = std::min({add_room / 2, 2u, max_degree});
        PolyMatrix lower = poly_matrix_identity(ctx, n);
        PolyMatrix upper = poly_matrix_identity(ctx, n);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < n; ++c) {
            if (r > c && rng.chance(1, 2)) {
              lower[r][c] = detail::random_classical_poly(rng, ctx, all_even, entry_degree, 1);
            }
            if (r < c && rng.chance(1, 2)) {
              upper[r][c] = detail::random_classical_poly(rng, ctx, all_even, entry_degree, 1);
            }
          }
        }
        PolyMatrix diag = poly_matrix_identity(ctx, n);
        for (std::size_t r = 0; r < n; ++r) {
          diag[r][r] = SuperPolynomial::constant(ctx, detail::random_nonzero_scalar(rng, ctx.field));
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t r = n; r > 1; --r) {
          std::swap(perm[r - 1], perm[rng.below(r)]);
        }
        PolyMatrix pm(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(ctx)));
        for (std::size_t r = 0; r < n; ++r) pm[r][perm[r]] = SuperPolynomial::constant(ctx, 1);
        PolyMatrix c = poly_matrix_mul(ctx, pm, poly_matrix_mul(ctx, lower, poly_matrix_mul(ctx, diag, upper)));
        unsigned coeff_degree = 0;
        for (const auto& row : c) {
          for (const auto& e : row) coeff_degree = std::max(coeff_degree, e.even_degree());
        }
        elem = elementary_odd_linear(ctx, c);
        bound += n * coeff_degree;
        break;
      }
      case 4: {
        std::size_t k = 1 + rng.below(n);
        std::vector<std::pair<SuperMonomial, Scalar>> tl;
        std::size_t terms = 1 + rng.below(2);
        for (std::size_t t = 0; t < terms; ++t) {
          int size = (n >= 5 && rng.chance(1, 4)) ? 5 : 3;
          SuperMonomial mono = detail::random_classical_monomial(rng, ctx, all_even, add_room);
          mono.odd = detail::random_odd_subset(rng, n, size);
          tl.emplace_back(std::move(mono), detail::random_nonzero_scalar(rng, ctx.field));
        }
        SuperPolynomial w = SuperPolynomial::from_terms(ctx, tl);
        if (w.is_zero()) continue;
        elem = elementary_odd_shift(ctx, k, w);
        bound += n * w.even_degree();
        break;
      }
    }
    result = compose(elem, result);
  }
  return result;
}

inline SuperEndomorphism random_tame(const RingContext& ctx, unsigned depth, unsigned max_degree,
                                     std::uint64_t seed) {
  return random_tame(ctx, depth, max_degree, seed, TameOptions{});
}

}  // namespace superjac
