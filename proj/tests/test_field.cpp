#include "superjac/field.hpp"

#include <gtest/gtest.h>

using namespace superjac;

TEST(FieldSpec, ValidatesCharacteristic) {
  EXPECT_NO_THROW(FieldSpec::prime(3));
  EXPECT_NO_THROW(FieldSpec::prime(5));
  EXPECT_NO_THROW(FieldSpec::prime(101));
  EXPECT_THROW(FieldSpec::prime(2), Error);
  EXPECT_THROW(FieldSpec::prime(4), Error);
  EXPECT_THROW(FieldSpec::prime(1), Error);
  EXPECT_THROW(FieldSpec::prime(91), Error);  // 7 * 13
}

TEST(FieldSpec, ValidatesModulus) {
  EXPECT_NO_THROW(FieldSpec::extension(3, {1, 0, 1}));  // t^2 + 1, irreducible mod 3
  EXPECT_THROW(FieldSpec::extension(3, {2, 0, 1}), Error);  // t^2 - 1 = (t-1)(t+1)
  EXPECT_THROW(FieldSpec::extension(3, {0, 0, 1}), Error);  // t^2
  EXPECT_THROW(FieldSpec::extension(3, {1, 1}), Error);     // degree 1
  EXPECT_THROW(FieldSpec::extension(2, {1, 1, 1}), Error);  // characteristic 2
  EXPECT_THROW(FieldSpec::extension(5, {1, 0, 2}), Error);  // not monic
  EXPECT_NO_THROW(FieldSpec::extension(5, {2, 0, 1}));      // t^2 + 2 irreducible mod 5
}

TEST(FieldSpec, TokensRoundTrip) {
  for (const auto& tok : {"Q", "Fp:5", "Fp:17", "Fq:3:1,0,1", "Fq:5:2,0,1"}) {
    FieldSpec fs = FieldSpec::from_token(tok);
    EXPECT_EQ(fs.token(), tok);
    EXPECT_EQ(FieldSpec::from_token(fs.token()), fs);
  }
  EXPECT_THROW(FieldSpec::from_token("F5"), Error);
  EXPECT_THROW(FieldSpec::from_token("Fp:"), Error);
  EXPECT_THROW(FieldSpec::from_token("Fq:3"), Error);
  EXPECT_THROW(FieldSpec::from_token(""), Error);
}

TEST(FieldSpec, Sizes) {
  EXPECT_FALSE(FieldSpec::rationals().is_finite());
  EXPECT_EQ(FieldSpec::prime(7).element_count(), 7u);
  EXPECT_EQ(FieldSpec::extension(3, {1, 0, 1}).element_count(), 9u);
  EXPECT_EQ(FieldSpec::extension(3, {1, 2, 0, 1}).element_count(), 27u);
  EXPECT_THROW(FieldSpec::rationals().element_count(), Error);
}

TEST(Scalar, RationalArithmetic) {
  FieldSpec q = FieldSpec::rationals();
  Scalar half = Scalar::from_fraction(q, 1, 2);
  Scalar third = Scalar::from_fraction(q, 1, 3);
  EXPECT_EQ(half + third, Scalar::from_fraction(q, 5, 6));
  EXPECT_EQ((half + third).str(), "5/6");
  EXPECT_EQ((-(half + third)).str(), "-5/6");
  EXPECT_EQ(half * third, Scalar::from_fraction(q, 1, 6));
  EXPECT_EQ(half - half, Scalar::zero(q));
  EXPECT_EQ(half / third, Scalar::from_fraction(q, 3, 2));
  EXPECT_EQ(Scalar::from_integer(q, 7).str(), "7");
  EXPECT_THROW(half / Scalar::zero(q), Error);
}

TEST(Scalar, PrimeArithmetic) {
  FieldSpec f5 = FieldSpec::prime(5);
  Scalar two = Scalar::from_integer(f5, 2);
  Scalar four = Scalar::from_integer(f5, 4);
  EXPECT_EQ(two * four, Scalar::from_integer(f5, 3));
  EXPECT_EQ(two + four, Scalar::from_integer(f5, 1));
  EXPECT_EQ((-two).residue(), 3u);
  EXPECT_EQ(Scalar::from_integer(f5, -7).residue(), 3u);
  EXPECT_EQ(two.inverse().residue(), 3u);
  EXPECT_EQ(Scalar::from_fraction(f5, 1, 2).residue(), 3u);
  EXPECT_THROW(Scalar::from_fraction(f5, 1, 5), Error);  // denominator = 0 mod 5
  EXPECT_EQ(two.pow(4).residue(), 1u);
}

TEST(Scalar, ExtensionArithmetic) {
  FieldSpec f9 = FieldSpec::extension(3, {1, 0, 1});
  Scalar t = Scalar::from_coefficients(f9, {0, 1});
  EXPECT_EQ(t * t, Scalar::from_integer(f9, 2));  // t^2 = -1 = 2
  EXPECT_EQ(t.str(), "t");
  Scalar u = Scalar::from_coefficients(f9, {2, 1});
  EXPECT_EQ(u.str(), "2+t");
  EXPECT_TRUE(u.needs_parens());
  EXPECT_FALSE(Scalar::from_integer(f9, 2).needs_parens());
  EXPECT_EQ(u * u.inverse(), Scalar::one(f9));
  // Frobenius check: a^9 = a for every element of F_9.
  for (std::uint64_t i = 0; i < 9; ++i) {
    Scalar a = Scalar::from_index(f9, i);
    EXPECT_EQ(a.pow(9), a);
    EXPECT_EQ(a.index(), i);
  }
}

TEST(Scalar, FieldLawsExhaustiveF5) {
  FieldSpec f5 = FieldSpec::prime(5);
  for (std::uint64_t i = 0; i < 5; ++i) {
    for (std::uint64_t j = 0; j < 5; ++j) {
      Scalar a = Scalar::from_index(f5, i), b = Scalar::from_index(f5, j);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      for (std::uint64_t k = 0; k < 5; ++k) {
        Scalar c = Scalar::from_index(f5, k);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
      if (!b.is_zero()) {
        EXPECT_EQ(a / b * b, a);
      }
    }
  }
}

TEST(Scalar, FieldLawsExhaustiveF9) {
  FieldSpec f9 = FieldSpec::extension(3, {1, 0, 1});
  for (std::uint64_t i = 0; i < 9; ++i) {
    for (std::uint64_t j = 0; j < 9; ++j) {
      Scalar a = Scalar::from_index(f9, i), b = Scalar::from_index(f9, j);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - b, -(b - a));
      if (!b.is_zero()) {
        EXPECT_EQ(a / b * b, a);
        EXPECT_EQ(b * b.inverse(), Scalar::one(f9));
      }
    }
  }
}

TEST(Scalar, MismatchedFieldsRejected) {
  Scalar a = Scalar::from_integer(FieldSpec::prime(5), 1);
  Scalar b = Scalar::from_integer(FieldSpec::prime(7), 1);
  EXPECT_THROW(a + b, Error);
  EXPECT_THROW(a * b, Error);
  EXPECT_NE(a, b);
}

TEST(Scalar, CompareIsTotalOrder) {
  FieldSpec q = FieldSpec::rationals();
  EXPECT_LT(Scalar::compare(Scalar::from_integer(q, -1), Scalar::from_integer(q, 1)), 0);
  EXPECT_EQ(Scalar::compare(Scalar::from_integer(q, 3), Scalar::from_integer(q, 3)), 0);
  FieldSpec f5 = FieldSpec::prime(5);
  EXPECT_LT(Scalar::compare(Scalar::from_index(f5, 1), Scalar::from_index(f5, 4)), 0);
}
