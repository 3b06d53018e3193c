#pragma once

// Inversion pipeline: a degree-graded solve for the classical even part, an
// explicit inverse for the first-order factor, and a finite fixed-point
// iteration for the unipotent remainder. Every reported inverse is verified
// exactly on both sides before it leaves this header.

#include "superjac/calculus.hpp"
#include "superjac/matrix.hpp"
#include "superjac/morphism.hpp"
#include "superjac/pointcheck.hpp"
#include "superjac/ring.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace superjac {

struct ClassicalInverse {
  std::vector<SuperPolynomial> inverse;
  unsigned degree = 0;
};

struct ClassicalInconclusive {
  unsigned degree_bound_tried = 0;
};

using ClassicalResult = std::variant<ClassicalInverse, ClassicalInconclusive>;

namespace detail {

inline SuperPolynomial truncated_mul(const SuperPolynomial& a, const SuperPolynomial& b,
                                     unsigned cap) {
  const RingContext& ctx = a.context();
  std::vector<std::pair<SuperMonomial, Scalar>> terms;
  for (const auto& [ma, ca] : a.terms()) {
    unsigned da = ma.total_even_degree();
    if (da > cap) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (da + mb.total_even_degree() > cap) continue;
      SuperMonomial m;
      m.exponents.resize(ma.exponents.size());
      for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        m.exponents[i] = ma.exponents[i] + mb.exponents[i];
      }
      terms.emplace_back(std::move(m), ca * cb);
    }
  }
  return SuperPolynomial::from_terms(ctx, terms);
}

inline SuperPolynomial truncate_even(const SuperPolynomial& p, unsigned cap) {
  std::vector<std::pair<SuperMonomial, Scalar>> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.total_even_degree() <= cap) terms.emplace_back(m, c);
  }
  return SuperPolynomial::from_terms(p.context(), terms);
}

inline SuperPolynomial homogeneous_component(const SuperPolynomial& p, unsigned d) {
  std::vector<std::pair<SuperMonomial, Scalar>> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.total_even_degree() == d) terms.emplace_back(m, c);
  }
  return SuperPolynomial::from_terms(p.context(), terms);
}

// Substitution of classical images with all products truncated at a degree
// cap. Power products are memoized; the same instance serves a whole solve.
class TruncatedSubstituter {
 public:
  TruncatedSubstituter(const RingContext& ctx, const std::vector<SuperPolynomial>& images,
                       unsigned cap)
      : ctx_(ctx), images_(images), cap_(cap) {}

  SuperPolynomial operator()(const SuperPolynomial& p) {
    SuperPolynomial result = SuperPolynomial::zero(ctx_);
    for (const auto& [m, c] : p.terms()) {
      result += c * power(m.exponents);
    }
    return result;
  }

 private:
  const SuperPolynomial& power(const std::vector<std::uint32_t>& alpha) {
    auto found = memo_.find(alpha);
    if (found != memo_.end()) return found->second;
    std::vector<std::vector<std::uint32_t>> chain;
    std::vector<std::uint32_t> cur = alpha;
    while (memo_.find(cur) == memo_.end()) {
      std::size_t j = 0;
      while (j < cur.size() && cur[j] == 0) ++j;
      if (j == cur.size()) {
        memo_.emplace(cur, SuperPolynomial::constant(ctx_, 1));
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
      SuperPolynomial prod = truncated_mul(memo_.at(prev), images_[j], cap_);
      memo_.emplace(std::move(top), std::move(prod));
    }
    return memo_.at(alpha);
  }

  const RingContext& ctx_;
  const std::vector<SuperPolynomial>& images_;
  unsigned cap_;
  std::map<std::vector<std::uint32_t>, SuperPolynomial> memo_;
};

// Endomorphism acting as the given substitution on even variables and fixing
// the odd generators.
inline SuperEndomorphism classical_endo(const RingContext& ctx,
                                        const std::vector<SuperPolynomial>& images) {
  auto id = SuperEndomorphism::identity(ctx);
  return SuperEndomorphism(ctx, images, id.odd_images());
}

}  // namespace detail

// Default working bound for the classical solve: (max input degree)^(m-1),
// clamped to the ceiling. Degree-1 inputs invert at degree 1.
inline unsigned classical_degree_bound(const std::vector<SuperPolynomial>& f, unsigned ceiling) {
  unsigned d = 0;
  for (const auto& fi : f) d = std::max(d, fi.even_degree());
  if (d <= 1 || f.size() <= 1) return 1;
  unsigned long long bound = 1;
  for (std::size_t i = 1; i < f.size(); ++i) {
    bound *= d;
    if (bound >= ceiling) return ceiling;
  }
  return static_cast<unsigned>(bound);
}

// Solves g(f) = x degree by degree: with f = c + L x + higher, the degree-d
// coefficients of g are determined by the lower ones, so the candidate series
// is unique. A candidate only becomes a result after an exact two-sided check,
// so a polynomial answer is always correct and everything else is reported as
// inconclusive at the bound that was tried.
inline ClassicalResult invert_classical(const std::vector<SuperPolynomial>& f,
                                        unsigned degree_bound) {
  if (f.empty()) fail_precondition("empty polynomial tuple");
  const RingContext& ctx = f.front().context();
  if (f.size() != ctx.even_vars) fail_precondition("tuple length does not match even variable count");
  for (const auto& fi : f) {
    if (fi.context() != ctx) fail_precondition("ring context mismatch");
    if (!fi.is_classical()) fail_precondition("classical inversion needs classical input");
  }
  if (degree_bound == 0) fail_precondition("degree bound must be positive");
  std::size_t m = ctx.even_vars;

  PolyMatrix jac(m, std::vector<SuperPolynomial>(m, SuperPolynomial::zero(ctx)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) jac[i][j] = d_dx(f[i], j + 1);
  }
  if (!det_even(ctx, jac).is_unit()) {
    fail_precondition("classical Jacobian determinant is not a nonzero constant");
  }

  // Shift away the constants; the linear part is then invertible.
  std::vector<Scalar> shift;
  std::vector<SuperPolynomial> reduced;
  for (const auto& fi : f) {
    Scalar c = fi.constant_term();
    shift.push_back(c);
    reduced.push_back(fi - SuperPolynomial::constant(ctx, c));
  }
  ScalarMatrix lin(m, std::vector<Scalar>(m, Scalar::zero(ctx.field)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      SuperMonomial mono = SuperPolynomial::unit_monomial(ctx);
      mono.exponents[j] = 1;
      lin[i][j] = reduced[i].coefficient(mono);
    }
  }
  auto lin_inv = scalar_matrix_inverse(ctx.field, lin);
  if (!lin_inv) fail_internal("linear part singular despite constant Jacobian determinant");

  // u = Linv * reduced has identity linear part.
  std::vector<SuperPolynomial> u(m, SuperPolynomial::zero(ctx));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      u[i] += (*lin_inv)[i][j] * reduced[j];
    }
  }
  std::vector<SuperPolynomial> lin_inv_images(m, SuperPolynomial::zero(ctx));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      lin_inv_images[i] += (*lin_inv)[i][j] * SuperPolynomial::even_variable(ctx, j + 1);
    }
  }
  SuperEndomorphism lin_inv_endo = detail::classical_endo(ctx, lin_inv_images);

  unsigned cap = std::min(8u, degree_bound);
  for (;;) {
    std::vector<SuperPolynomial> h = lin_inv_images;
    std::vector<SuperPolynomial> residual;
    for (std::size_t i = 0; i < m; ++i) {
      residual.push_back(detail::truncate_even(u[i], cap + 1) -
                         SuperPolynomial::even_variable(ctx, i + 1));
    }
    detail::TruncatedSubstituter subst_u(ctx, u, cap + 1);
    ApplyEngine lin_engine(lin_inv_endo);
    for (unsigned d = 1; d < cap; ++d) {
      bool all_zero = true;
      for (const auto& r : residual) {
        if (!r.is_zero()) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) break;
      for (std::size_t i = 0; i < m; ++i) {
        SuperPolynomial rho = detail::homogeneous_component(residual[i], d + 1);
        if (rho.is_zero()) continue;
        h[i] -= lin_engine(rho);
        residual[i] -= subst_u(rho);
      }
    }
    bool settled = true;
    for (const auto& r : residual) {
      if (!r.is_zero()) {
        settled = false;
        break;
      }
    }
    if (settled) {
      // Exact verification against the shifted map, both sides.
      SuperEndomorphism f_endo = detail::classical_endo(ctx, reduced);
      SuperEndomorphism h_endo = detail::classical_endo(ctx, h);
      ApplyEngine f_engine(f_endo);
      ApplyEngine h_engine(h_endo);
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        if (f_engine(h[i]) != SuperPolynomial::even_variable(ctx, i + 1)) ok = false;
        if (ok && h_engine(reduced[i]) != SuperPolynomial::even_variable(ctx, i + 1)) ok = false;
      }
      if (ok) {
        std::vector<SuperPolynomial> shifted;
        for (std::size_t i = 0; i < m; ++i) {
          shifted.push_back(SuperPolynomial::even_variable(ctx, i + 1) -
                            SuperPolynomial::constant(ctx, shift[i]));
        }
        SuperEndomorphism shift_endo = detail::classical_endo(ctx, shifted);
        ApplyEngine shift_engine(shift_endo);
        ClassicalInverse out;
        for (std::size_t i = 0; i < m; ++i) {
          out.inverse.push_back(shift_engine(h[i]));
          out.degree = std::max(out.degree, out.inverse.back().even_degree());
        }
        return out;
      }
    }
    if (cap >= degree_bound) return ClassicalInconclusive{degree_bound};
    cap = std::min(cap * 2, degree_bound);
  }
}

// First-order factor of an endomorphism passing the determinant check, plus
// its explicit inverse. theta maps x to the classical even images and xi
// linearly with polynomial coefficients; its inverse composes the classical
// inverse with the adjugate-based inverse coefficient matrix.
struct ThetaDecomposition {
  SuperEndomorphism theta;
  SuperEndomorphism theta_inverse;
  SuperEndomorphism upsilon;  // theta_inverse composed with the original map
};

inline ThetaDecomposition build_theta(const SuperEndomorphism& phi,
                                      const std::vector<SuperPolynomial>& classical_inverse) {
  const RingContext& ctx = phi.context();
  std::size_t m = ctx.even_vars, n = ctx.odd_vars;
  if (classical_inverse.size() != m) fail_precondition("classical inverse length mismatch");
  LinearParts lp = linear_parts(phi);

  SuperPolynomial cdet_poly = det_even(ctx, lp.coeff_matrix);
  if (!cdet_poly.is_unit()) {
    fail_precondition("odd coefficient matrix determinant is not a nonzero constant");
  }
  Scalar cdet = cdet_poly.constant_term();

  std::vector<SuperPolynomial> theta_fxi;
  for (std::size_t k = 0; k < n; ++k) {
    SuperPolynomial img = SuperPolynomial::zero(ctx);
    for (std::size_t l = 0; l < n; ++l) {
      img += lp.coeff_matrix[k][l] * SuperPolynomial::odd_variable(ctx, l + 1);
    }
    theta_fxi.push_back(std::move(img));
  }
  SuperEndomorphism theta(ctx, lp.even_part, std::move(theta_fxi));

  PolyMatrix adj = classical_adjugate(ctx, lp.coeff_matrix);
  Scalar cdet_inv = cdet.inverse();
  SuperEndomorphism g_endo = detail::classical_endo(ctx, classical_inverse);
  ApplyEngine g_engine(g_endo);
  std::vector<SuperPolynomial> inv_fxi;
  for (std::size_t k = 0; k < n; ++k) {
    SuperPolynomial img = SuperPolynomial::zero(ctx);
    for (std::size_t l = 0; l < n; ++l) {
      if (adj[k][l].is_zero()) continue;
      img += (cdet_inv * g_engine(adj[k][l])) * SuperPolynomial::odd_variable(ctx, l + 1);
    }
    inv_fxi.push_back(std::move(img));
  }
  SuperEndomorphism theta_inverse(ctx, classical_inverse, std::move(inv_fxi));

  SuperEndomorphism upsilon = compose(theta_inverse, phi);
  for (std::size_t i = 1; i <= m; ++i) {
    SuperPolynomial diff = upsilon.even_image(i) - SuperPolynomial::even_variable(ctx, i);
    if (diff.j_degree() < 2) fail_internal("even remainder escapes the odd ideal square");
  }
  for (std::size_t k = 1; k <= n; ++k) {
    SuperPolynomial diff = upsilon.odd_image(k) - SuperPolynomial::odd_variable(ctx, k);
    if (diff.j_degree() < 3) fail_internal("odd remainder escapes the cubic odd layer");
  }
  return ThetaDecomposition{std::move(theta), std::move(theta_inverse), std::move(upsilon)};
}

struct UnipotentInverse {
  SuperEndomorphism inverse;
  unsigned iterations = 0;  // includes the confirming pass
};

inline bool is_unipotent_shape(const SuperEndomorphism& ups) {
  const RingContext& ctx = ups.context();
  for (std::size_t i = 1; i <= ctx.even_vars; ++i) {
    SuperPolynomial diff = ups.even_image(i) - SuperPolynomial::even_variable(ctx, i);
    Parity p = diff.parity();
    if (p == Parity::odd || p == Parity::mixed) return false;
    if (diff.j_degree() < 2) return false;
  }
  for (std::size_t k = 1; k <= ctx.odd_vars; ++k) {
    SuperPolynomial diff = ups.odd_image(k) - SuperPolynomial::odd_variable(ctx, k);
    Parity p = diff.parity();
    if (p == Parity::even || p == Parity::mixed) return false;
    if (diff.j_degree() < 3) return false;
  }
  return true;
}

// Fixed-point iteration psi <- (z - psi(w_z)); each pass pushes the defect one
// level deeper into the odd filtration, so it settles in at most n+1 passes.
inline UnipotentInverse unipotent_invert(const SuperEndomorphism& ups) {
  const RingContext& ctx = ups.context();
  if (!is_unipotent_shape(ups)) fail_precondition("map is not of unipotent shape");
  std::vector<SuperPolynomial> w_even, w_odd;
  for (std::size_t i = 1; i <= ctx.even_vars; ++i) {
    w_even.push_back(ups.even_image(i) - SuperPolynomial::even_variable(ctx, i));
  }
  for (std::size_t k = 1; k <= ctx.odd_vars; ++k) {
    w_odd.push_back(ups.odd_image(k) - SuperPolynomial::odd_variable(ctx, k));
  }
  SuperEndomorphism psi = SuperEndomorphism::identity(ctx);
  unsigned limit = static_cast<unsigned>(ctx.odd_vars) + 1;
  for (unsigned t = 1; t <= limit; ++t) {
    ApplyEngine engine(psi);
    std::vector<SuperPolynomial> fx, fxi;
    for (std::size_t i = 1; i <= ctx.even_vars; ++i) {
      fx.push_back(SuperPolynomial::even_variable(ctx, i) - engine(w_even[i - 1]));
    }
    for (std::size_t k = 1; k <= ctx.odd_vars; ++k) {
      fxi.push_back(SuperPolynomial::odd_variable(ctx, k) - engine(w_odd[k - 1]));
    }
    SuperEndomorphism next(ctx, std::move(fx), std::move(fxi));
    if (next == psi) {
      if (compose(psi, ups) != SuperEndomorphism::identity(ctx) ||
          compose(ups, psi) != SuperEndomorphism::identity(ctx)) {
        fail_internal("unipotent inverse failed verification");
      }
      return UnipotentInverse{std::move(psi), t};
    }
    psi = std::move(next);
  }
  fail_internal("unipotent iteration did not settle within the odd filtration length");
}

struct UpsilonPowerReport {
  bool holds = false;
  unsigned power = 0;
  std::uint64_t characteristic = 0;
};

// Checks whether the (n+1)-st compositional power of a unipotent map is the
// identity. True in small positive characteristic, false in general over Q.
inline UpsilonPowerReport probe_upsilon_power(const SuperEndomorphism& ups) {
  const RingContext& ctx = ups.context();
  if (!is_unipotent_shape(ups)) fail_precondition("map is not of unipotent shape");
  unsigned power = static_cast<unsigned>(ctx.odd_vars) + 1;
  SuperEndomorphism acc = SuperEndomorphism::identity(ctx);
  for (unsigned i = 0; i < power; ++i) acc = compose(acc, ups);
  return UpsilonPowerReport{acc == SuperEndomorphism::identity(ctx), power,
                            ctx.field.characteristic()};
}

struct AutomorphismCertificate {
  unsigned even_inverse_degree = 0;
  unsigned unipotent_iterations = 0;
  bool verified_both_sides = false;
};

struct Automorphism {
  SuperEndomorphism inverse;
  AutomorphismCertificate certificate;
};

enum class RejectionReason { sj_even_fail, sj_odd_fail, even_jacobian_not_constant, point_collision };

inline const char* rejection_reason_name(RejectionReason r) {
  switch (r) {
    case RejectionReason::sj_even_fail: return "sjEvenFail";
    case RejectionReason::sj_odd_fail: return "sjOddFail";
    case RejectionReason::even_jacobian_not_constant: return "evenJacobianNotConstant";
    case RejectionReason::point_collision: return "pointCollision";
  }
  fail_internal("bad rejection reason");
}

struct NotAutomorphism {
  RejectionReason reason;
  std::optional<PointCollision> witness;  // present for point_collision
};

struct Inconclusive {
  unsigned degree_bound_tried = 0;
};

using InversionResult = std::variant<Automorphism, NotAutomorphism, Inconclusive>;

struct InvertOptions {
  unsigned degree_bound = 0;        // 0 picks the default bound
  unsigned degree_ceiling = 512;    // clamp for the default bound
  unsigned prefilter_extension = 0; // 0 off, 1 base field, k >= 2 lifts to degree k
  std::uint64_t point_ceiling = 1000000;
};

inline InversionResult invert_full(const SuperEndomorphism& phi, const InvertOptions& options = {}) {
  const RingContext& ctx = phi.context();
  SJVerdict verdict = check_sj(phi);
  if (!verdict.even_ok) return NotAutomorphism{RejectionReason::sj_even_fail, std::nullopt};
  if (!verdict.odd_ok) return NotAutomorphism{RejectionReason::sj_odd_fail, std::nullopt};

  if (options.prefilter_extension >= 1) {
    if (!ctx.field.is_finite()) fail_precondition("point pre-filter needs a finite field");
    SuperEndomorphism probe = phi;
    if (options.prefilter_extension >= 2) {
      if (ctx.field.kind() != FieldSpec::Kind::prime) {
        fail_precondition("extension pre-filter needs a prime base field");
      }
      FieldSpec target = first_extension_field(ctx.field.characteristic(), options.prefilter_extension);
      probe = extend_scalars(phi, target);
    }
    ExhaustiveResult scan = exhaustive_bijectivity(probe, options.point_ceiling);
    if (const auto* collision = std::get_if<PointCollision>(&scan)) {
      return NotAutomorphism{RejectionReason::point_collision, *collision};
    }
  }

  LinearParts lp = linear_parts(phi);
  std::vector<SuperPolynomial> classical_inverse;
  unsigned inverse_degree = 0;
  if (ctx.even_vars > 0) {
    unsigned bound = options.degree_bound
                         ? options.degree_bound
                         : classical_degree_bound(lp.even_part, options.degree_ceiling);
    ClassicalResult cr = invert_classical(lp.even_part, bound);
    if (const auto* inc = std::get_if<ClassicalInconclusive>(&cr)) {
      return Inconclusive{inc->degree_bound_tried};
    }
    auto& inv = std::get<ClassicalInverse>(cr);
    classical_inverse = std::move(inv.inverse);
    inverse_degree = inv.degree;
  }

  ThetaDecomposition dec = build_theta(phi, classical_inverse);
  UnipotentInverse uni = unipotent_invert(dec.upsilon);
  SuperEndomorphism inverse = compose(uni.inverse, dec.theta_inverse);
  if (compose(inverse, phi) != SuperEndomorphism::identity(ctx) ||
      compose(phi, inverse) != SuperEndomorphism::identity(ctx)) {
    fail_internal("inverse failed the final two-sided verification");
  }
  AutomorphismCertificate cert{inverse_degree, uni.iterations, true};
  return Automorphism{std::move(inverse), cert};
}

}  // namespace superjac
