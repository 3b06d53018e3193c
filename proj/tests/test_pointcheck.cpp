#include "superjac/pointcheck.hpp"
#include "superjac/textio.hpp"

#include <gtest/gtest.h>

using namespace superjac;

namespace {

SuperPolynomial xv(const RingContext& c, std::size_t i) { return SuperPolynomial::even_variable(c, i); }
SuperPolynomial xiv(const RingContext& c, std::size_t k) { return SuperPolynomial::odd_variable(c, k); }

SuperEndomorphism cubic(const FieldSpec& f) {
  RingContext c(1, 0, f);
  SuperPolynomial x = xv(c, 1);
  return SuperEndomorphism(c, {x + x * x * x}, {});
}

}  // namespace

TEST(PointMap, EvaluatesReducedEvenPart) {
  RingContext c(2, 2, FieldSpec::rationals());
  SuperEndomorphism b(
      c,
      {xv(c, 1) + xv(c, 2) * xv(c, 2), xv(c, 2)},
      {xiv(c, 1) + xv(c, 1) * xiv(c, 2), xiv(c, 2)});
  PointTuple img = point_map(b, {Scalar::from_integer(c.field, 1), Scalar::from_integer(c.field, 2)});
  ASSERT_EQ(img.size(), 2u);
  EXPECT_EQ(img[0].str(), "5");
  EXPECT_EQ(img[1].str(), "2");
  // Odd content in the even images is dropped before evaluation.
  SuperEndomorphism mixed(
      c, {xv(c, 1) + xiv(c, 1) * xiv(c, 2), xv(c, 2)}, {xiv(c, 1), xiv(c, 2)});
  PointTuple img2 = point_map(mixed, {Scalar::from_integer(c.field, 3), Scalar::zero(c.field)});
  EXPECT_EQ(img2[0].str(), "3");
  EXPECT_THROW(point_map(b, {Scalar::one(c.field)}), Error);
}

TEST(PointIndex, EnumeratesFirstCoordinateMostSignificant) {
  FieldSpec f3 = FieldSpec::prime(3);
  PointTuple p0 = detail::point_from_index(f3, 3, 2, 0);
  EXPECT_EQ(p0[0].str(), "0");
  EXPECT_EQ(p0[1].str(), "0");
  PointTuple p1 = detail::point_from_index(f3, 3, 2, 1);
  EXPECT_EQ(p1[0].str(), "0");
  EXPECT_EQ(p1[1].str(), "1");
  PointTuple p3 = detail::point_from_index(f3, 3, 2, 3);
  EXPECT_EQ(p3[0].str(), "1");
  EXPECT_EQ(p3[1].str(), "0");
}

TEST(Exhaustive, CubicBijectiveOverF3) {
  SuperEndomorphism f = cubic(FieldSpec::prime(3));
  ExhaustiveResult r = exhaustive_bijectivity(f);
  EXPECT_NE(std::get_if<Bijective>(&r), nullptr);
  // Spot check the permutation: 0->0, 1->2, 2->1.
  FieldSpec f3 = FieldSpec::prime(3);
  EXPECT_EQ(point_map(f, {Scalar::from_integer(f3, 0)})[0].str(), "0");
  EXPECT_EQ(point_map(f, {Scalar::from_integer(f3, 1)})[0].str(), "2");
  EXPECT_EQ(point_map(f, {Scalar::from_integer(f3, 2)})[0].str(), "1");
}

TEST(Exhaustive, SquareCollisionOverF5) {
  RingContext c(1, 0, FieldSpec::prime(5));
  SuperEndomorphism sq(c, {xv(c, 1) * xv(c, 1)}, {});
  ExhaustiveResult r = exhaustive_bijectivity(sq);
  auto* col = std::get_if<PointCollision>(&r);
  ASSERT_NE(col, nullptr);
  // Scan order hits 0,1,2,3: 3^2 = 4 = 2^2 collides first.
  EXPECT_EQ(col->first[0].str(), "2");
  EXPECT_EQ(col->second[0].str(), "3");
}

TEST(Exhaustive, CubicCollapsesOverF9) {
  FieldSpec f9 = first_extension_field(3, 2);
  EXPECT_EQ(f9.token(), "Fq:3:1,0,1");
  SuperEndomorphism f = cubic(f9);
  ExhaustiveResult r = exhaustive_bijectivity(f);
  auto* col = std::get_if<PointCollision>(&r);
  ASSERT_NE(col, nullptr);
  EXPECT_EQ(col->first[0].str(), "0");
  EXPECT_EQ(col->second[0].str(), "t");
}

TEST(Exhaustive, TwoVariablePermutation) {
  RingContext c(2, 1, FieldSpec::prime(3));
  SuperEndomorphism phi(c, {xv(c, 1) + xv(c, 2) * xv(c, 2), xv(c, 2)}, {xiv(c, 1)});
  ExhaustiveResult r = exhaustive_bijectivity(phi);
  EXPECT_NE(std::get_if<Bijective>(&r), nullptr);
}

TEST(Exhaustive, GuardsDomainSize) {
  SuperEndomorphism f = cubic(FieldSpec::prime(101));
  EXPECT_THROW(exhaustive_bijectivity(f, 50), Error);
  RingContext cq(1, 0, FieldSpec::rationals());
  SuperEndomorphism fq(cq, {xv(cq, 1)}, {});
  EXPECT_THROW(exhaustive_bijectivity(fq), Error);
}

TEST(Sample, FindsSquareCollisionOverQ) {
  RingContext c(1, 0, FieldSpec::rationals());
  SuperEndomorphism sq(c, {xv(c, 1) * xv(c, 1)}, {});
  SampleResult r = sample_injectivity(sq, 200, 7);
  auto* col = std::get_if<PointCollision>(&r);
  ASSERT_NE(col, nullptr);
  EXPECT_EQ(point_map(sq, col->first)[0], point_map(sq, col->second)[0]);
  EXPECT_FALSE(col->first[0] == col->second[0]);
}

TEST(Sample, CleanMapReportsTrialCount) {
  RingContext c(1, 0, FieldSpec::rationals());
  SuperEndomorphism shift(c, {xv(c, 1) + SuperPolynomial::constant(c, 1)}, {});
  SampleResult r = sample_injectivity(shift, 50, 7);
  auto* none = std::get_if<NoCollisionFound>(&r);
  ASSERT_NE(none, nullptr);
  EXPECT_EQ(none->trials_run, 50u);
}

TEST(Sample, DeterministicPerSeed) {
  RingContext c(1, 0, FieldSpec::prime(7));
  SuperEndomorphism sq(c, {xv(c, 1) * xv(c, 1)}, {});
  SampleResult a = sample_injectivity(sq, 100, 3);
  SampleResult b = sample_injectivity(sq, 100, 3);
  auto* ca = std::get_if<PointCollision>(&a);
  auto* cb = std::get_if<PointCollision>(&b);
  ASSERT_NE(ca, nullptr);
  ASSERT_NE(cb, nullptr);
  EXPECT_EQ(ca->first[0], cb->first[0]);
  EXPECT_EQ(ca->second[0], cb->second[0]);
}

TEST(ExtendScalars, LiftsMapsBetweenFields) {
  FieldSpec f3 = FieldSpec::prime(3);
  FieldSpec f9 = first_extension_field(3, 2);
  SuperEndomorphism f = cubic(f3);
  SuperEndomorphism lifted = extend_scalars(f, f9);
  EXPECT_EQ(lifted.context().field, f9);
  // Same polynomial, evaluated over the larger field.
  Scalar two = Scalar::from_integer(f9, 2);
  EXPECT_EQ(point_map(lifted, {two})[0], Scalar::from_integer(f9, 1));
  EXPECT_THROW(extend_scalars(f, FieldSpec::prime(5)), Error);
}

TEST(FirstExtension, DeterministicModuli) {
  EXPECT_EQ(first_extension_field(3, 2).token(), "Fq:3:1,0,1");
  FieldSpec f53 = first_extension_field(5, 2);
  EXPECT_EQ(f53.characteristic(), 5u);
  EXPECT_EQ(f53.extension_degree(), 2u);
  FieldSpec f27 = first_extension_field(3, 3);
  EXPECT_EQ(f27.element_count(), 27u);
  EXPECT_THROW(first_extension_field(3, 1), Error);
  EXPECT_THROW(first_extension_field(2, 2), Error);
}
