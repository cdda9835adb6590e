#pragma once

#include <vector>

#include "cdc/ffield.hpp"

namespace cdc {

/// Entangled polynomial partition: A is m x p blocks, B is p x n blocks.
struct EPParams {
  int p = 1;
  int m = 1;
  int n = 1;

  int threshold() const { return p * m * n + p - 1; }
  void validate() const;
  /// Throws InvalidParams unless m | lambda, p | kappa, n | mu.
  void check_dims(Eigen::Index lambda, Eigen::Index kappa, Eigen::Index mu) const;
};

int ep_threshold(const EPParams& params);

/// grid[r][c] is block (r, c); all blocks equal size.
using BlockGrid = std::vector<std::vector<Matrix>>;

BlockGrid split_blocks(const Matrix& x, int row_blocks, int col_blocks);
Matrix join_blocks(const BlockGrid& grid);

Matrix ep_encode_a(const Matrix& a, const EPParams& params, const Fp& alpha);
Matrix ep_encode_b(const Matrix& b, const EPParams& params, const Fp& alpha);
Matrix ep_answer(const Matrix& coded_a, const Matrix& coded_b);

/// A server answer tagged with its evaluation point.
struct PointAnswer {
  Fp point;
  Matrix value;
};

/// Coefficients C^(1), ..., C^(k) of the answer polynomial, k = answers.size().
std::vector<Matrix> interpolate_coefficients(const std::vector<PointAnswer>& answers);
/// The product AB from the coefficient list (at least pmn entries).
Matrix ep_assemble(const std::vector<Matrix>& coeffs, const EPParams& params);
/// Uses the first R answers.
Matrix ep_decode(const std::vector<PointAnswer>& answers, const EPParams& params);

}  // namespace cdc
