#pragma once

// Partial derivatives (left convention for the odd ones), Jacobian blocks and
// the determinant-based invertibility check on the first-order data.

#include "superjac/matrix.hpp"
#include "superjac/morphism.hpp"
#include "superjac/ring.hpp"

#include <bit>
#include <vector>

namespace superjac {

inline SuperPolynomial d_dx(const SuperPolynomial& p, std::size_t i) {
  const RingContext& ctx = p.context();
  if (i < 1 || i > ctx.even_vars) fail_precondition("even variable index out of range");
  std::vector<std::pair<SuperMonomial, Scalar>> terms;
  for (const auto& [m, c] : p.terms()) {
    std::uint32_t e = m.exponents[i - 1];
    if (e == 0) continue;
    SuperMonomial d = m;
    --d.exponents[i - 1];
    terms.emplace_back(std::move(d), c * Scalar::from_integer(ctx.field, e));
  }
  return SuperPolynomial::from_terms(ctx, terms);
}

// Left derivative: the sign counts the odd factors standing before xi_k.
inline SuperPolynomial d_dxi(const SuperPolynomial& p, std::size_t k) {
  const RingContext& ctx = p.context();
  if (k < 1 || k > ctx.odd_vars) fail_precondition("odd variable index out of range");
  OddSet bit = OddSet{1} << (k - 1);
  std::vector<std::pair<SuperMonomial, Scalar>> terms;
  for (const auto& [m, c] : p.terms()) {
    if (!(m.odd & bit)) continue;
    SuperMonomial d = m;
    d.odd &= ~bit;
    Scalar coeff = c;
    if (std::popcount(m.odd & (bit - 1)) & 1) coeff = -coeff;
    terms.emplace_back(std::move(d), coeff);
  }
  return SuperPolynomial::from_terms(ctx, terms);
}

struct JacobianPair {
  PolyMatrix even_block;  // d f_i / d x_j
  PolyMatrix odd_block;   // d q_k / d xi_l
};

inline JacobianPair jacobian_pair(const SuperEndomorphism& phi) {
  const RingContext& ctx = phi.context();
  JacobianPair jp;
  jp.even_block.assign(ctx.even_vars, std::vector<SuperPolynomial>(ctx.even_vars, SuperPolynomial::zero(ctx)));
  jp.odd_block.assign(ctx.odd_vars, std::vector<SuperPolynomial>(ctx.odd_vars, SuperPolynomial::zero(ctx)));
  for (std::size_t i = 0; i < ctx.even_vars; ++i) {
    for (std::size_t j = 0; j < ctx.even_vars; ++j) {
      jp.even_block[i][j] = d_dx(phi.even_images()[i], j + 1);
    }
  }
  for (std::size_t k = 0; k < ctx.odd_vars; ++k) {
    for (std::size_t l = 0; l < ctx.odd_vars; ++l) {
      jp.odd_block[k][l] = d_dxi(phi.odd_images()[k], l + 1);
    }
  }
  return jp;
}

struct SJVerdict {
  bool pass = false;
  bool even_ok = false;
  bool odd_ok = false;
  SuperPolynomial even_det;
  SuperPolynomial odd_det;
  SuperPolynomial even_det_mod_j;  // classical projections of the two determinants
  SuperPolynomial odd_det_mod_j;
};

// Both block determinants must be units, i.e. nonzero constants modulo the
// odd ideal. Entries of both blocks have even parity, so det_even applies.
inline SJVerdict check_sj(const SuperEndomorphism& phi) {
  const RingContext& ctx = phi.context();
  JacobianPair jp = jacobian_pair(phi);
  SJVerdict v;
  v.even_det = det_even(ctx, jp.even_block);
  v.odd_det = det_even(ctx, jp.odd_block);
  v.even_det_mod_j = v.even_det.reduce_mod_j();
  v.odd_det_mod_j = v.odd_det.reduce_mod_j();
  v.even_ok = v.even_det.is_unit();
  v.odd_ok = v.odd_det.is_unit();
  v.pass = v.even_ok && v.odd_ok;
  return v;
}

// Pointwise version: both reduced Jacobian blocks evaluated at the point must
// be invertible scalar matrices.
inline bool tangent_check(const SuperEndomorphism& phi, const std::vector<Scalar>& at) {
  const RingContext& ctx = phi.context();
  if (at.size() != ctx.even_vars) fail_precondition("point length does not match even variable count");
  JacobianPair jp = jacobian_pair(phi);
  auto eval_block = [&](const PolyMatrix& block) {
    ScalarMatrix s(block.size(), std::vector<Scalar>(block.size(), Scalar::zero(ctx.field)));
    for (std::size_t r = 0; r < block.size(); ++r) {
      for (std::size_t c = 0; c < block.size(); ++c) {
        s[r][c] = block[r][c].reduce_mod_j().evaluate_at_point(at).constant_term();
      }
    }
    return s;
  };
  if (scalar_det(ctx.field, eval_block(jp.even_block)).is_zero()) return false;
  if (scalar_det(ctx.field, eval_block(jp.odd_block)).is_zero()) return false;
  return true;
}

}  // namespace superjac
