#include "superjac/morphism.hpp"
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

SuperEndomorphism fixture_a(const RingContext& c) {
  return SuperEndomorphism(c, {xv(c, 1) + xiv(c, 1) * xiv(c, 2)}, {xiv(c, 1), xiv(c, 2)});
}

// Random polynomial with small degrees; mixes parities freely.
SuperPolynomial random_poly(const RingContext& c, Rng& rng) {
  std::vector<std::pair<SuperMonomial, Scalar>> terms;
  std::size_t count = 1 + rng.below(4);
  for (std::size_t i = 0; i < count; ++i) {
    SuperMonomial m = SuperPolynomial::unit_monomial(c);
    for (auto& e : m.exponents) e = static_cast<std::uint32_t>(rng.below(3));
    m.odd = rng.below(std::uint64_t{1} << c.odd_vars);
    terms.emplace_back(std::move(m), Scalar::from_integer(c.field, rng.range(-4, 4)));
  }
  return SuperPolynomial::from_terms(c, terms);
}

}  // namespace

TEST(Endomorphism, ValidatesShape) {
  RingContext c = ctxQ(1, 2);
  // Wrong image counts.
  EXPECT_THROW(SuperEndomorphism(c, {}, {xiv(c, 1), xiv(c, 2)}), Error);
  EXPECT_THROW(SuperEndomorphism(c, {xv(c, 1)}, {xiv(c, 1)}), Error);
  // Parity violations.
  EXPECT_THROW(SuperEndomorphism(c, {xiv(c, 1)}, {xiv(c, 1), xiv(c, 2)}), Error);
  EXPECT_THROW(SuperEndomorphism(c, {xv(c, 1)}, {xv(c, 1), xiv(c, 2)}), Error);
  EXPECT_THROW(
      SuperEndomorphism(c, {xv(c, 1) + xiv(c, 1)}, {xiv(c, 1), xiv(c, 2)}), Error);
  // Even images may carry odd pairs, odd images odd triples.
  SuperEndomorphism ok(
      c, {xv(c, 1) + xiv(c, 1) * xiv(c, 2)}, {xiv(c, 1) * xiv(c, 2) * xiv(c, 1), xiv(c, 2)});
  EXPECT_TRUE(ok.odd_image(1).is_zero());
}

TEST(Endomorphism, ContextMismatchRejected) {
  RingContext c = ctxQ(1, 1);
  RingContext other = ctxQ(1, 1);
  RingContext wrong(1, 1, FieldSpec::prime(5));
  EXPECT_NO_THROW(SuperEndomorphism(c, {xv(other, 1)}, {xiv(other, 1)}));
  EXPECT_THROW(SuperEndomorphism(c, {xv(wrong, 1)}, {xiv(wrong, 1)}), Error);
}

TEST(Apply, FixtureValues) {
  RingContext c = ctxQ(1, 2);
  SuperEndomorphism a = fixture_a(c);
  EXPECT_EQ(print_poly(apply(a, xv(c, 1))), "x1 + xi1*xi2");
  SuperPolynomial sq = xv(c, 1) * xv(c, 1);
  EXPECT_EQ(print_poly(apply(a, sq)), "x1^2 + 2*x1*xi1*xi2");
  EXPECT_EQ(apply(a, xiv(c, 1)), xiv(c, 1));
  SuperPolynomial cst = SuperPolynomial::constant(c, 7);
  EXPECT_EQ(apply(a, cst), cst);
}

TEST(Apply, OddSwapUsesKoszulSign) {
  RingContext c = ctxQ(0, 2);
  SuperEndomorphism swap(c, {}, {xiv(c, 2), xiv(c, 1)});
  // xi1*xi2 |-> xi2*xi1 = -xi1*xi2
  EXPECT_EQ(print_poly(apply(swap, xiv(c, 1) * xiv(c, 2))), "-xi1*xi2");
}

TEST(Apply, IsRingHomomorphism) {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    RingContext c(1 + rng.below(2), 1 + rng.below(3),
                  t % 2 == 0 ? FieldSpec::rationals() : FieldSpec::prime(7));
    SuperEndomorphism phi = random_tame(c, 3, 2, 100 + t);
    SuperPolynomial p = random_poly(c, rng);
    SuperPolynomial q = random_poly(c, rng);
    ApplyEngine eng(phi);
    EXPECT_EQ(eng(p * q), eng(p) * eng(q));
    EXPECT_EQ(eng(p + q), eng(p) + eng(q));
  }
}

TEST(Compose, MatchesSequentialApplication) {
  Rng rng(23);
  for (int t = 0; t < 25; ++t) {
    RingContext c(1 + rng.below(2), rng.below(3),
                  t % 2 == 0 ? FieldSpec::rationals() : FieldSpec::prime(5));
    SuperEndomorphism phi = random_tame(c, 2, 2, 500 + t);
    SuperEndomorphism psi = random_tame(c, 2, 2, 900 + t);
    SuperEndomorphism chain = compose(phi, psi);
    SuperPolynomial p = random_poly(c, rng);
    EXPECT_EQ(apply(chain, p), apply(phi, apply(psi, p)));
  }
}

TEST(Compose, FixtureDoubling) {
  RingContext c = ctxQ(1, 2);
  SuperEndomorphism a = fixture_a(c);
  SuperEndomorphism aa = compose(a, a);
  EXPECT_EQ(print_poly(aa.even_image(1)), "x1 + 2*xi1*xi2");
  EXPECT_EQ(aa.odd_image(1), xiv(c, 1));
}

TEST(Compose, IdentityLaws) {
  RingContext c = ctxQ(2, 2);
  SuperEndomorphism id = SuperEndomorphism::identity(c);
  EXPECT_TRUE(id.is_identity());
  SuperEndomorphism phi = random_tame(c, 3, 2, 42);
  EXPECT_EQ(compose(id, phi), phi);
  EXPECT_EQ(compose(phi, id), phi);
}

TEST(LinearParts, FixtureDecomposition) {
  RingContext c = ctxQ(2, 2);
  SuperEndomorphism b(
      c,
      {xv(c, 1) + xv(c, 2) * xv(c, 2), xv(c, 2)},
      {xiv(c, 1) + xv(c, 1) * xiv(c, 2), xiv(c, 2)});
  LinearParts lp = linear_parts(b);
  EXPECT_EQ(print_poly(lp.even_part[0]), "x2^2 + x1");
  EXPECT_EQ(print_poly(lp.even_part[1]), "x2");
  EXPECT_EQ(print_poly(lp.coeff_matrix[0][0]), "1");
  EXPECT_EQ(print_poly(lp.coeff_matrix[0][1]), "x1");
  EXPECT_EQ(print_poly(lp.coeff_matrix[1][0]), "0");
  EXPECT_EQ(print_poly(lp.coeff_matrix[1][1]), "1");
}

TEST(ElementaryFactories, ValidateInputs) {
  RingContext c = ctxQ(2, 2);
  // Singular linear part rejected.
  ScalarMatrix singular{{Scalar::one(c.field), Scalar::one(c.field)},
                        {Scalar::one(c.field), Scalar::one(c.field)}};
  EXPECT_THROW(elementary_even_linear(c, singular), Error);
  // Triangular shift must not involve the target variable.
  EXPECT_THROW(elementary_even_triangular(c, 1, xv(c, 1)), Error);
  EXPECT_NO_THROW(elementary_even_triangular(c, 1, xv(c, 2) * xv(c, 2)));
  // J-shift must live in the square of the odd ideal.
  EXPECT_THROW(elementary_even_jshift(c, 1, xiv(c, 1)), Error);
  EXPECT_NO_THROW(elementary_even_jshift(c, 1, xiv(c, 1) * xiv(c, 2)));
  // Odd shift needs j-degree >= 3; impossible with n = 2.
  EXPECT_THROW(elementary_odd_shift(c, 1, xiv(c, 1) * xiv(c, 2)), Error);
  RingContext c3 = ctxQ(1, 3);
  EXPECT_NO_THROW(elementary_odd_shift(c3, 1, xiv(c3, 1) * xiv(c3, 2) * xiv(c3, 3)));
}

TEST(RandomTame, DeterministicPerSeed) {
  RingContext c = ctxQ(2, 2);
  SuperEndomorphism a = random_tame(c, 5, 3, 777);
  SuperEndomorphism b = random_tame(c, 5, 3, 777);
  EXPECT_EQ(a, b);
  SuperEndomorphism other = random_tame(c, 5, 3, 778);
  EXPECT_FALSE(a == other);
}

TEST(RandomTame, AlwaysSatisfiesJacobianCondition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RingContext c(1 + seed % 3, seed % 4, seed % 2 == 0 ? FieldSpec::rationals() : FieldSpec::prime(5));
    SuperEndomorphism phi = random_tame(c, 4, 3, seed);
    EXPECT_TRUE(check_sj(phi).pass) << "seed " << seed;
  }
}

TEST(RandomTame, RespectsDegreeGovernor) {
  RingContext c = ctxQ(3, 2);
  TameOptions opts;
  opts.even_degree_cap = 8;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SuperEndomorphism phi = random_tame(c, 6, 3, seed, opts);
    for (std::size_t i = 1; i <= 3; ++i) {
      EXPECT_LE(phi.even_image(i).even_degree(), 8) << "seed " << seed;
    }
  }
}

TEST(RandomTame, HandlesPurelyEvenAndPurelyOddRings) {
  RingContext even_only = ctxQ(2, 0);
  SuperEndomorphism pe = random_tame(even_only, 4, 3, 5);
  EXPECT_TRUE(check_sj(pe).pass);
  RingContext odd_only = ctxQ(0, 3);
  SuperEndomorphism po = random_tame(odd_only, 4, 3, 5);
  EXPECT_TRUE(check_sj(po).pass);
}
