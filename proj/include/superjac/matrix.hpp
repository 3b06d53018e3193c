#pragma once

// Square matrices over the superalgebra (even-parity entries) and over the
// ground field. Polynomial determinants are computed division-free by cofactor
// expansion with shared column-subset minors.

#include "superjac/ring.hpp"

#include <bit>
#include <optional>
#include <vector>

namespace superjac {

using PolyMatrix = std::vector<std::vector<SuperPolynomial>>;
using ScalarMatrix = std::vector<std::vector<Scalar>>;

inline void check_square(const RingContext& ctx, const PolyMatrix& mat) {
  for (const auto& row : mat) {
    if (row.size() != mat.size()) fail_precondition("matrix is not square");
    for (const auto& e : row) {
      if (e.context() != ctx) fail_precondition("matrix entry context mismatch");
    }
  }
}

inline PolyMatrix poly_matrix_identity(const RingContext& ctx, std::size_t n) {
  PolyMatrix id(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(ctx)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = SuperPolynomial::constant(ctx, 1);
  return id;
}

inline PolyMatrix poly_matrix_mul(const RingContext& ctx, const PolyMatrix& a, const PolyMatrix& b) {
  check_square(ctx, a);
  check_square(ctx, b);
  if (a.size() != b.size()) fail_precondition("matrix size mismatch");
  std::size_t n = a.size();
  PolyMatrix r(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(ctx)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        r[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return r;
}

// Determinant of a matrix whose entries all have even (or zero) parity, so the
// classical Leibniz formula needs no sign corrections. dp[S] holds the minor of
// the first popcount(S) rows against column set S.
inline SuperPolynomial det_even(const RingContext& ctx, const PolyMatrix& mat) {
  check_square(ctx, mat);
  for (const auto& row : mat) {
    for (const auto& e : row) {
      Parity p = e.parity();
      if (p == Parity::odd || p == Parity::mixed) {
        fail_precondition("determinant entry is not of even parity");
      }
    }
  }
  std::size_t n = mat.size();
  if (n == 0) return SuperPolynomial::constant(ctx, 1);
  if (n > 20) fail_precondition("determinant size beyond desk scale");
  std::vector<SuperPolynomial> dp(std::size_t{1} << n, SuperPolynomial::zero(ctx));
  dp[0] = SuperPolynomial::constant(ctx, 1);
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    std::size_t r = static_cast<std::size_t>(std::popcount(mask)) - 1;
    SuperPolynomial acc = SuperPolynomial::zero(ctx);
    int pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const SuperPolynomial& entry = mat[r][j];
      if (!entry.is_zero()) {
        SuperPolynomial term = entry * dp[mask ^ (std::size_t{1} << j)];
        if ((static_cast<int>(r) + pos) & 1) {
          acc -= term;
        } else {
          acc += term;
        }
      }
      ++pos;
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

// Adjugate of a matrix with classical entries, via cofactor determinants.
inline PolyMatrix classical_adjugate(const RingContext& ctx, const PolyMatrix& mat) {
  check_square(ctx, mat);
  std::size_t n = mat.size();
  for (const auto& row : mat) {
    for (const auto& e : row) {
      if (!e.is_classical()) fail_precondition("adjugate entry is not classical");
    }
  }
  PolyMatrix adj(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(ctx)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      minor.reserve(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<SuperPolynomial> row;
        row.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          row.push_back(mat[r][c]);
        }
        minor.push_back(std::move(row));
      }
      SuperPolynomial cof = det_even(ctx, minor);
      if ((i + j) & 1) cof = -cof;
      adj[j][i] = std::move(cof);
    }
  }
  return adj;
}

inline Scalar scalar_det(const FieldSpec& field, ScalarMatrix mat) {
  std::size_t n = mat.size();
  for (const auto& row : mat) {
    if (row.size() != n) fail_precondition("matrix is not square");
  }
  Scalar det = Scalar::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && mat[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Scalar::zero(field);
    if (pivot != col) {
      std::swap(mat[pivot], mat[col]);
      det = -det;
    }
    det *= mat[col][col];
    Scalar inv = mat[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (mat[r][col].is_zero()) continue;
      Scalar factor = mat[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) {
        mat[r][c] -= factor * mat[col][c];
      }
    }
  }
  return det;
}

inline std::optional<ScalarMatrix> scalar_matrix_inverse(const FieldSpec& field, ScalarMatrix mat) {
  std::size_t n = mat.size();
  for (const auto& row : mat) {
    if (row.size() != n) fail_precondition("matrix is not square");
  }
  ScalarMatrix inv(n, std::vector<Scalar>(n, Scalar::zero(field)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && mat[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(mat[pivot], mat[col]);
    std::swap(inv[pivot], inv[col]);
    Scalar scale = mat[col][col].inverse();
    for (std::size_t c = 0; c < n; ++c) {
      mat[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || mat[r][col].is_zero()) continue;
      Scalar factor = mat[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        mat[r][c] -= factor * mat[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace superjac
