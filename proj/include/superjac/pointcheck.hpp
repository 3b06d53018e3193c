#pragma once

// The point map induced on even coordinates, with an exhaustive bijectivity
// scan for small finite fields and a seeded sampling probe otherwise.

#include "superjac/morphism.hpp"
#include "superjac/ring.hpp"
#include "superjac/rng.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace superjac {

using PointTuple = std::vector<Scalar>;

// Evaluates the classical part of the even images at a point of F^m.
inline PointTuple point_map(const SuperEndomorphism& phi, const PointTuple& b) {
  PointTuple image;
  image.reserve(phi.context().even_vars);
  for (const auto& f : phi.even_images()) {
    image.push_back(f.reduce_mod_j().evaluate_at_point(b).constant_term());
  }
  return image;
}

struct Bijective {};
struct PointCollision {
  PointTuple first, second;  // distinct points with equal images
};
struct NotSurjective {
  PointTuple missing;
};
struct NoCollisionFound {
  std::uint64_t trials_run = 0;
};

using ExhaustiveResult = std::variant<Bijective, PointCollision, NotSurjective>;
using SampleResult = std::variant<NoCollisionFound, PointCollision>;

namespace detail {

inline PointTuple point_from_index(const FieldSpec& field, std::uint64_t q, std::size_t m,
                                   std::uint64_t idx) {
  PointTuple b(m, Scalar::zero(field));
  for (std::size_t i = m; i-- > 0;) {
    b[i] = Scalar::from_index(field, idx % q);
    idx /= q;
  }
  return b;
}

}  // namespace detail

// Full scan of F^m in lexicographic point order. A scan with no repeated image
// is a bijection by counting, so NotSurjective is never produced here; the
// variant keeps the case for callers that probe proper subsets.
inline ExhaustiveResult exhaustive_bijectivity(const SuperEndomorphism& phi,
                                               std::uint64_t ceiling = 1000000) {
  const RingContext& ctx = phi.context();
  if (!ctx.field.is_finite()) fail_precondition("exhaustive scan needs a finite field");
  if (ceiling > 100000000) ceiling = 100000000;
  std::uint64_t q = ctx.field.element_count();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < ctx.even_vars; ++i) {
    if (count > ceiling / q + 1) fail_precondition("point enumeration exceeds the ceiling");
    count *= q;
  }
  if (count > ceiling) fail_precondition("point enumeration exceeds the ceiling");
  if (count >= UINT32_MAX) fail_precondition("point enumeration exceeds the ceiling");
  std::vector<std::uint32_t> seen(count, UINT32_MAX);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PointTuple b = detail::point_from_index(ctx.field, q, ctx.even_vars, idx);
    PointTuple img = point_map(phi, b);
    std::uint64_t key = 0;
    for (const auto& c : img) key = key * q + c.index();
    if (seen[key] != UINT32_MAX) {
      return PointCollision{detail::point_from_index(ctx.field, q, ctx.even_vars, seen[key]), b};
    }
    seen[key] = static_cast<std::uint32_t>(idx);
  }
  return Bijective{};
}

// Seeded random pairs, including sign-flipped partners so parity-even maps do
// not hide their collisions.
inline SampleResult sample_injectivity(const SuperEndomorphism& phi, std::uint64_t trials,
                                       std::uint64_t seed) {
  const RingContext& ctx = phi.context();
  Rng rng(seed);
  auto random_point = [&]() {
    PointTuple b;
    b.reserve(ctx.even_vars);
    for (std::size_t i = 0; i < ctx.even_vars; ++i) {
      if (ctx.field.is_finite()) {
        b.push_back(Scalar::from_index(ctx.field, rng.below(ctx.field.element_count())));
      } else {
        BigInt num(rng.range(-10, 10));
        BigInt den(rng.range(1, 3));
        b.push_back(Scalar::from_fraction(ctx.field, num, den));
      }
    }
    return b;
  };
  auto negate = [](const PointTuple& b) {
    PointTuple r;
    r.reserve(b.size());
    for (const auto& c : b) r.push_back(-c);
    return r;
  };
  for (std::uint64_t t = 0; t < trials; ++t) {
    PointTuple a = random_point();
    PointTuple b = random_point();
    PointTuple img_a = point_map(phi, a);
    for (const PointTuple& other : {b, negate(a)}) {
      if (other == a) continue;
      if (point_map(phi, other) == img_a) return PointCollision{a, other};
    }
  }
  return NoCollisionFound{trials};
}

// Coefficient embedding of a whole endomorphism, used by the extension-field
// pre-filter before inversion.
inline SuperEndomorphism extend_scalars(const SuperEndomorphism& phi, const FieldSpec& target) {
  std::vector<SuperPolynomial> fx, fxi;
  for (const auto& f : phi.even_images()) fx.push_back(f.extend_scalars(target));
  for (const auto& q : phi.odd_images()) fxi.push_back(q.extend_scalars(target));
  RingContext ctx(phi.context().even_vars, phi.context().odd_vars, target);
  return SuperEndomorphism(ctx, std::move(fx), std::move(fxi));
}

// First irreducible monic modulus of the given degree in enumeration order
// (low coefficients as base-p digits of an increasing index).
inline FieldSpec first_extension_field(std::uint64_t p, unsigned degree) {
  if (degree < 2) fail_precondition("extension degree must be at least 2");
  std::uint64_t total = 1;
  for (unsigned i = 0; i < degree; ++i) {
    if (total > 4000000 / p) fail_precondition("extension search space too large");
    total *= p;
  }
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint64_t> modulus(degree + 1, 0);
    std::uint64_t v = idx;
    for (unsigned i = 0; i < degree; ++i) {
      modulus[i] = v % p;
      v /= p;
    }
    modulus[degree] = 1;
    if (detail::fp_is_irreducible(modulus, p)) {
      return FieldSpec::extension(p, std::move(modulus));
    }
  }
  fail_internal("no irreducible modulus found");
}

}  // namespace superjac
