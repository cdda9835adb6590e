#include "cdc/ep.hpp"

#include <string>

#include "cdc/structmat.hpp"

namespace cdc {

void EPParams::validate() const {
  require(p >= 1 && m >= 1 && n >= 1, ErrorKind::InvalidParams,
          "partition parameters p, m, n must be positive");
}

void EPParams::check_dims(Eigen::Index lambda, Eigen::Index kappa, Eigen::Index mu) const {
  validate();
  require(lambda % m == 0, ErrorKind::InvalidParams, "m must divide lambda");
  require(kappa % p == 0, ErrorKind::InvalidParams, "p must divide kappa");
  require(mu % n == 0, ErrorKind::InvalidParams, "n must divide mu");
}

int ep_threshold(const EPParams& params) { return params.threshold(); }

BlockGrid split_blocks(const Matrix& x, int row_blocks, int col_blocks) {
  require(x.rows() % row_blocks == 0 && x.cols() % col_blocks == 0,
          ErrorKind::InvalidParams, "matrix does not split evenly into blocks");
  const Eigen::Index br = x.rows() / row_blocks, bc = x.cols() / col_blocks;
  BlockGrid grid(row_blocks, std::vector<Matrix>(col_blocks));
  for (int r = 0; r < row_blocks; ++r)
    for (int c = 0; c < col_blocks; ++c) grid[r][c] = x.block(r * br, c * bc, br, bc);
  return grid;
}

Matrix join_blocks(const BlockGrid& grid) {
  require(!grid.empty() && !grid[0].empty(), ErrorKind::InvalidInput, "empty block grid");
  const Eigen::Index br = grid[0][0].rows(), bc = grid[0][0].cols();
  Matrix x(br * static_cast<Eigen::Index>(grid.size()),
           bc * static_cast<Eigen::Index>(grid[0].size()));
  for (std::size_t r = 0; r < grid.size(); ++r)
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      require(grid[r][c].rows() == br && grid[r][c].cols() == bc,
              ErrorKind::ShapeMismatch, "ragged block grid");
      x.block(static_cast<Eigen::Index>(r) * br, static_cast<Eigen::Index>(c) * bc, br, bc) =
          grid[r][c];
    }
  return x;
}

namespace {

std::vector<Fp> powers(const Fp& a, int count) {
  std::vector<Fp> pw(count);
  Fp x = a * Fp(0) + Fp(1);
  for (int i = 0; i < count; ++i) {
    pw[i] = x;
    x *= a;
  }
  return pw;
}

}  // namespace

// A^{m',p'} gets alpha^{p'-1 + p(m'-1)}
Matrix ep_encode_a(const Matrix& a, const EPParams& prm, const Fp& alpha) {
  prm.validate();
  require(a.rows() % prm.m == 0 && a.cols() % prm.p == 0, ErrorKind::InvalidParams,
          "A must split into m x p blocks");
  const auto pw = powers(alpha, prm.p * prm.m);
  const Eigen::Index br = a.rows() / prm.m, bc = a.cols() / prm.p;
  Matrix out = Matrix::Constant(br, bc, alpha * Fp(0));
  for (int mi = 0; mi < prm.m; ++mi)
    for (int pi = 0; pi < prm.p; ++pi)
      out += pw[pi + prm.p * mi] * a.block(mi * br, pi * bc, br, bc);
  return out;
}

// B^{p',n'} gets alpha^{p-p' + pm(n'-1)}
Matrix ep_encode_b(const Matrix& b, const EPParams& prm, const Fp& alpha) {
  prm.validate();
  require(b.rows() % prm.p == 0 && b.cols() % prm.n == 0, ErrorKind::InvalidParams,
          "B must split into p x n blocks");
  const auto pw = powers(alpha, prm.p * prm.m * prm.n);
  const Eigen::Index br = b.rows() / prm.p, bc = b.cols() / prm.n;
  Matrix out = Matrix::Constant(br, bc, alpha * Fp(0));
  for (int pi = 0; pi < prm.p; ++pi)
    for (int ni = 0; ni < prm.n; ++ni)
      out += pw[prm.p - 1 - pi + prm.p * prm.m * ni] * b.block(pi * br, ni * bc, br, bc);
  return out;
}

Matrix ep_answer(const Matrix& coded_a, const Matrix& coded_b) {
  require(coded_a.cols() == coded_b.rows(), ErrorKind::ShapeMismatch,
          "coded shares are not conformable");
  return coded_a * coded_b;
}

std::vector<Matrix> interpolate_coefficients(const std::vector<PointAnswer>& answers) {
  require(!answers.empty(), ErrorKind::InsufficientAnswers, "no answers");
  std::vector<Fp> pts;
  std::vector<const Matrix*> ys;
  for (const auto& a : answers) {
    pts.push_back(a.point);
    ys.push_back(&a.value);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      require(pts[i] != pts[j], ErrorKind::InvalidInput, "duplicate evaluation point");
  Matrix coef = solve_batch(vandermonde(pts, pts.size()), stack_flattened(ys));
  const Eigen::Index rows = answers[0].value.rows(), cols = answers[0].value.cols();
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < coef.rows(); ++i) out.push_back(unflatten_row(coef, i, rows, cols));
  return out;
}

// block (m',n') of AB is C^{p + p(m'-1) + pm(n'-1)}
Matrix ep_assemble(const std::vector<Matrix>& coeffs, const EPParams& prm) {
  prm.validate();
  require(coeffs.size() >= static_cast<std::size_t>(prm.p * prm.m * prm.n),
          ErrorKind::InsufficientAnswers, "too few coefficients for assembly");
  BlockGrid grid(prm.m, std::vector<Matrix>(prm.n));
  for (int mi = 0; mi < prm.m; ++mi)
    for (int ni = 0; ni < prm.n; ++ni)
      grid[mi][ni] = coeffs[prm.p - 1 + prm.p * mi + prm.p * prm.m * ni];
  return join_blocks(grid);
}

Matrix ep_decode(const std::vector<PointAnswer>& answers, const EPParams& prm) {
  prm.validate();
  const auto r = static_cast<std::size_t>(prm.threshold());
  require(answers.size() >= r, ErrorKind::InsufficientAnswers,
          "EP decode needs " + std::to_string(r) + " answers, got " +
              std::to_string(answers.size()));
  std::vector<PointAnswer> used(answers.begin(), answers.begin() + static_cast<long>(r));
  return ep_assemble(interpolate_coefficients(used), prm);
}

}  // namespace cdc
