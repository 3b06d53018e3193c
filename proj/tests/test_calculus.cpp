#include "superjac/calculus.hpp"
#include "superjac/rng.hpp"
#include "superjac/textio.hpp"

#include <gtest/gtest.h>

using namespace superjac;

namespace {

RingContext ctxQ(std::size_t m, std::size_t n) {
  return RingContext(m, n, FieldSpec::rationals());
}

SuperPolynomial xv(const RingContext& c, std::size_t i) { return SuperPolynomial::even_variable(c, i); }
SuperPolynomial xiv(const RingContext& c, std::size_t k) { return SuperPolynomial::odd_variable(c, k); }

// Independent determinant oracle: plain Laplace expansion along the first row.
// Valid for matrices with commuting (even parity) entries.
SuperPolynomial laplace_det(const RingContext& ctx, const PolyMatrix& mat) {
  std::size_t n = mat.size();
  if (n == 0) return SuperPolynomial::constant(ctx, 1);
  if (n == 1) return mat[0][0];
  SuperPolynomial acc = SuperPolynomial::zero(ctx);
  for (std::size_t j = 0; j < n; ++j) {
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<SuperPolynomial> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(mat[r][c]);
      }
      minor.push_back(std::move(row));
    }
    SuperPolynomial term = mat[0][j] * laplace_det(ctx, minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

TEST(Derivative, EvenBasics) {
  RingContext c = ctxQ(2, 0);
  SuperPolynomial p = xv(c, 1) * xv(c, 1) * xv(c, 2);
  EXPECT_EQ(print_poly(d_dx(p, 1)), "2*x1*x2");
  EXPECT_EQ(print_poly(d_dx(p, 2)), "x1^2");
  EXPECT_TRUE(d_dx(SuperPolynomial::constant(c, 5), 1).is_zero());
}

TEST(Derivative, CharacteristicKillsExponents) {
  RingContext c(1, 0, FieldSpec::prime(3));
  SuperPolynomial p = xv(c, 1) * xv(c, 1) * xv(c, 1);  // x^3
  EXPECT_TRUE(d_dx(p, 1).is_zero());
}

TEST(Derivative, OddLeftConvention) {
  RingContext c = ctxQ(0, 3);
  SuperPolynomial p = xiv(c, 1) * xiv(c, 2);
  EXPECT_EQ(d_dxi(p, 1), xiv(c, 2));
  EXPECT_EQ(d_dxi(p, 2), -xiv(c, 1));
  SuperPolynomial q = xiv(c, 1) * xiv(c, 2) * xiv(c, 3);
  EXPECT_EQ(d_dxi(q, 2), -(xiv(c, 1) * xiv(c, 3)));
  EXPECT_EQ(d_dxi(q, 3), xiv(c, 1) * xiv(c, 2));
  EXPECT_TRUE(d_dxi(xiv(c, 2), 1).is_zero());
}

TEST(Derivative, OddOperatorsAnticommute) {
  Rng rng(3);
  RingContext c = ctxQ(2, 4);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::pair<SuperMonomial, Scalar>> terms;
    for (int i = 0; i < 3; ++i) {
      SuperMonomial m = SuperPolynomial::unit_monomial(c);
      m.exponents[0] = static_cast<std::uint32_t>(rng.below(3));
      m.odd = rng.below(16);
      terms.emplace_back(std::move(m), Scalar::from_integer(c.field, rng.range(-3, 3)));
    }
    SuperPolynomial p = SuperPolynomial::from_terms(c, terms);
    std::size_t k = 1 + rng.below(4), l = 1 + rng.below(4);
    EXPECT_EQ(d_dxi(d_dxi(p, k), l), -d_dxi(d_dxi(p, l), k));
    EXPECT_TRUE(d_dxi(d_dxi(p, k), k).is_zero());
    EXPECT_EQ(d_dx(d_dxi(p, k), 1), d_dxi(d_dx(p, 1), k));
  }
}

TEST(Derivative, SuperLeibniz) {
  RingContext c = ctxQ(1, 3);
  // Odd factor: D(p q) = D(p) q - p D(q) for odd p.
  SuperPolynomial p = xiv(c, 1) + xv(c, 1) * xiv(c, 2);
  SuperPolynomial q = xv(c, 1) + xiv(c, 2) * xiv(c, 3);
  for (std::size_t k = 1; k <= 3; ++k) {
    EXPECT_EQ(d_dxi(p * q, k), d_dxi(p, k) * q - p * d_dxi(q, k));
  }
  // Even factor: no sign.
  SuperPolynomial e = xv(c, 1) + xiv(c, 1) * xiv(c, 2);
  for (std::size_t k = 1; k <= 3; ++k) {
    EXPECT_EQ(d_dxi(e * q, k), d_dxi(e, k) * q + e * d_dxi(q, k));
  }
}

TEST(DetEven, MatchesLaplaceOracle) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    RingContext c(2, 4, t % 2 == 0 ? FieldSpec::rationals() : FieldSpec::prime(5));
    std::size_t n = 2 + rng.below(3);
    PolyMatrix mat(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(c)));
    for (auto& row : mat) {
      for (auto& e : row) {
        std::vector<std::pair<SuperMonomial, Scalar>> terms;
        for (int i = 0; i < 2; ++i) {
          SuperMonomial m = SuperPolynomial::unit_monomial(c);
          m.exponents[rng.below(2)] = static_cast<std::uint32_t>(rng.below(2));
          // Even parity only: empty or a pair of odd generators.
          if (rng.chance(1, 3)) {
            OddSet mask = 0;
            while (std::popcount(mask) != 2) mask = rng.below(16);
            m.odd = mask;
          }
          terms.emplace_back(std::move(m), Scalar::from_integer(c.field, rng.range(-2, 2)));
        }
        e = SuperPolynomial::from_terms(c, terms);
      }
    }
    EXPECT_EQ(det_even(c, mat), laplace_det(c, mat));
  }
}

TEST(DetEven, RejectsOddEntries) {
  RingContext c = ctxQ(1, 2);
  PolyMatrix mat{{xiv(c, 1)}};
  EXPECT_THROW(det_even(c, mat), Error);
  PolyMatrix mixed{{xv(c, 1) + xiv(c, 1)}};
  EXPECT_THROW(det_even(c, mixed), Error);
}

TEST(DetEven, EmptyAndUnitCases) {
  RingContext c = ctxQ(1, 2);
  EXPECT_EQ(det_even(c, PolyMatrix{}), SuperPolynomial::constant(c, 1));
  PolyMatrix with_pair{{SuperPolynomial::constant(c, 1) + xiv(c, 1) * xiv(c, 2)}};
  EXPECT_EQ(det_even(c, with_pair), SuperPolynomial::constant(c, 1) + xiv(c, 1) * xiv(c, 2));
}

TEST(Adjugate, InvertsClassicalMatrices) {
  RingContext c = ctxQ(2, 0);
  PolyMatrix mat{{SuperPolynomial::constant(c, 1), xv(c, 1)},
                 {SuperPolynomial::zero(c), SuperPolynomial::constant(c, 1)}};
  PolyMatrix adj = classical_adjugate(c, mat);
  PolyMatrix prod = poly_matrix_mul(c, mat, adj);
  EXPECT_EQ(prod[0][0], SuperPolynomial::constant(c, 1));
  EXPECT_TRUE(prod[0][1].is_zero());
  EXPECT_TRUE(prod[1][0].is_zero());
  EXPECT_EQ(prod[1][1], SuperPolynomial::constant(c, 1));
}

TEST(Jacobian, FixtureBlocks) {
  // x1 -> x1 + x2^2, x2 -> x2, xi1 -> xi1 + x1*xi2, xi2 -> xi2.
  RingContext c = ctxQ(2, 2);
  SuperEndomorphism b(
      c,
      {xv(c, 1) + xv(c, 2) * xv(c, 2), xv(c, 2)},
      {xiv(c, 1) + xv(c, 1) * xiv(c, 2), xiv(c, 2)});
  JacobianPair jp = jacobian_pair(b);
  EXPECT_EQ(print_poly(jp.even_block[0][0]), "1");
  EXPECT_EQ(print_poly(jp.even_block[0][1]), "2*x2");
  EXPECT_EQ(print_poly(jp.even_block[1][0]), "0");
  EXPECT_EQ(print_poly(jp.even_block[1][1]), "1");
  EXPECT_EQ(print_poly(jp.odd_block[0][0]), "1");
  EXPECT_EQ(print_poly(jp.odd_block[0][1]), "x1");
  EXPECT_EQ(print_poly(jp.odd_block[1][0]), "0");
  EXPECT_EQ(print_poly(jp.odd_block[1][1]), "1");
}

TEST(CheckSJ, AcceptsFixtures) {
  RingContext ca = ctxQ(1, 2);
  SuperEndomorphism a(ca, {xv(ca, 1) + xiv(ca, 1) * xiv(ca, 2)}, {xiv(ca, 1), xiv(ca, 2)});
  SJVerdict va = check_sj(a);
  EXPECT_TRUE(va.pass);
  EXPECT_EQ(print_poly(va.even_det), "1");
  EXPECT_EQ(print_poly(va.odd_det), "1");

  RingContext cb = ctxQ(2, 2);
  SuperEndomorphism b(
      cb,
      {xv(cb, 1) + xv(cb, 2) * xv(cb, 2), xv(cb, 2)},
      {xiv(cb, 1) + xv(cb, 1) * xiv(cb, 2), xiv(cb, 2)});
  EXPECT_TRUE(check_sj(b).pass);
}

TEST(CheckSJ, RejectsSquaring) {
  RingContext c = ctxQ(1, 0);
  SuperEndomorphism sq(c, {xv(c, 1) * xv(c, 1)}, {});
  SJVerdict v = check_sj(sq);
  EXPECT_FALSE(v.pass);
  EXPECT_FALSE(v.even_ok);
  EXPECT_TRUE(v.odd_ok);  // empty odd block has determinant 1
  EXPECT_EQ(print_poly(v.even_det_mod_j), "2*x1");
}

TEST(CheckSJ, OddBlockFailure) {
  RingContext c = ctxQ(1, 1);
  SuperEndomorphism phi(c, {xv(c, 1)}, {xv(c, 1) * xiv(c, 1)});
  SJVerdict v = check_sj(phi);
  EXPECT_TRUE(v.even_ok);
  EXPECT_FALSE(v.odd_ok);
  EXPECT_EQ(print_poly(v.odd_det_mod_j), "x1");
}

TEST(CheckSJ, ReductionCommutesWithDeterminant) {
  // pi(det Jx) = det(pi(Jx)) on a map with nontrivial odd content.
  RingContext c = ctxQ(2, 2);
  SuperEndomorphism phi(
      c,
      {xv(c, 1) + xiv(c, 1) * xiv(c, 2), xv(c, 2) + xv(c, 1) * xiv(c, 1) * xiv(c, 2)},
      {xiv(c, 1), xv(c, 1) * xiv(c, 2)});
  JacobianPair jp = jacobian_pair(phi);
  PolyMatrix reduced = jp.even_block;
  for (auto& row : reduced) {
    for (auto& e : row) e = e.reduce_mod_j();
  }
  EXPECT_EQ(det_even(c, jp.even_block).reduce_mod_j(), det_even(c, reduced));
}

TEST(Tangent, PointwiseCheck) {
  RingContext c = ctxQ(1, 0);
  SuperEndomorphism sq(c, {xv(c, 1) * xv(c, 1)}, {});
  EXPECT_FALSE(tangent_check(sq, {Scalar::zero(c.field)}));
  EXPECT_TRUE(tangent_check(sq, {Scalar::one(c.field)}));
  EXPECT_THROW(tangent_check(sq, {}), Error);
}
