#include "cdc/structmat.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace cdc {

namespace detail {
thread_local std::uint64_t solve_count = 0;
}  // namespace detail

namespace {

Fp zero_like(const Fp& x) { return x * Fp(0); }

}  // namespace

void CVSpec::validate() const {
  require(confluence >= 1, ErrorKind::InvalidInput, "confluence order must be positive");
  require(samples.size() >= confluence * poles.size(), ErrorKind::InvalidInput,
          "need R >= R'L samples");
  std::vector<Fp> all(poles);
  all.insert(all.end(), samples.begin(), samples.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      require(all[i] != all[j], ErrorKind::InvalidInput, "coincident evaluation points");
}

Matrix cv_matrix(const CVSpec& spec) {
  require(spec.confluence == 1, ErrorKind::InvalidInput,
          "cv_matrix needs confluence order 1");
  return confluent_cv_matrix(spec);
}

Matrix confluent_cv_matrix(const CVSpec& spec) {
  spec.validate();
  const auto r = static_cast<Eigen::Index>(spec.size());
  const std::size_t rp = spec.confluence;
  Matrix m(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Fp a = spec.samples[i];
    Eigen::Index col = 0;
    for (const Fp& f : spec.poles) {
      Fp base = inv(f - a);
      // columns 1/t^R', ..., 1/t
      Fp pw = base;
      for (std::size_t e = 0; e < rp; ++e) {
        m(i, col + static_cast<Eigen::Index>(rp - 1 - e)) = pw;
        pw *= base;
      }
      col += static_cast<Eigen::Index>(rp);
    }
    Fp pw = zero_like(a) + Fp(1);
    for (; col < r; ++col) {
      m(i, col) = pw;
      pw *= a;
    }
  }
  return m;
}

Matrix lt_toeplitz(const std::vector<Fp>& c, std::size_t n) {
  require(c.size() == n, ErrorKind::InvalidInput, "toeplitz needs n coefficients");
  const auto sn = static_cast<Eigen::Index>(n);
  Matrix t(sn, sn);
  if (n == 0) return t;
  Fp zero = zero_like(c[0]);
  for (Eigen::Index i = 0; i < sn; ++i)
    for (Eigen::Index j = 0; j < sn; ++j) t(i, j) = i >= j ? c[i - j] : zero;
  return t;
}

Matrix vandermonde(const std::vector<Fp>& samples, std::size_t cols) {
  const auto rows = static_cast<Eigen::Index>(samples.size());
  Matrix v(rows, static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < rows; ++i) {
    Fp pw = zero_like(samples[i]) + Fp(1);
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(cols); ++j) {
      v(i, j) = pw;
      pw *= samples[i];
    }
  }
  return v;
}

Matrix scaled_cv_system(const CVSpec& spec,
                        const std::vector<std::vector<Fp>>& residues) {
  require(residues.size() == spec.poles.size(), ErrorKind::InvalidInput,
          "one residue list per pole");
  Matrix v = confluent_cv_matrix(spec);
  const auto rp = static_cast<Eigen::Index>(spec.confluence);
  for (std::size_t j = 0; j < residues.size(); ++j) {
    const auto c0 = static_cast<Eigen::Index>(j) * rp;
    Matrix t = lt_toeplitz(residues[j], spec.confluence);
    Matrix block = v.middleCols(c0, rp) * t;
    v.middleCols(c0, rp) = block;
  }
  return v;
}

Matrix stack_flattened(const std::vector<const Matrix*>& items) {
  require(!items.empty(), ErrorKind::InvalidInput, "nothing to stack");
  const Eigen::Index len = items[0]->size();
  Matrix out(static_cast<Eigen::Index>(items.size()), len);
  for (std::size_t i = 0; i < items.size(); ++i) {
    require(items[i]->size() == len, ErrorKind::ShapeMismatch, "answer shapes differ");
    out.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::Matrix<Fp, 1, Eigen::Dynamic>>(items[i]->data(), len);
  }
  return out;
}

Matrix unflatten_row(const Matrix& stacked, Eigen::Index row, Eigen::Index rows,
                     Eigen::Index cols) {
  Eigen::Matrix<Fp, 1, Eigen::Dynamic> r = stacked.row(row);
  return Eigen::Map<const Matrix>(r.data(), rows, cols);
}

LuSolver::LuSolver(const Matrix& m) : lu_(m) {
  require(m.rows() == m.cols(), ErrorKind::ShapeMismatch, "solver needs a square matrix");
  ++detail::solve_count;
  const Eigen::Index n = lu_.rows();
  perm_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) perm_[i] = i;
  pivot_inv_.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && lu_(p, c).is_zero()) ++p;
    if (p == n)
      throw SingularMatrixError(static_cast<std::size_t>(c),
                                "singular matrix at pivot column " + std::to_string(c));
    if (p != c) {
      lu_.row(p).swap(lu_.row(c));
      std::swap(perm_[p], perm_[c]);
    }
    pivot_inv_[c] = inv(lu_(c, c));
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (lu_(i, c).is_zero()) continue;
      Fp f = lu_(i, c) * pivot_inv_[c];
      lu_(i, c) = f;
      for (Eigen::Index j = c + 1; j < n; ++j) lu_(i, j) -= f * lu_(c, j);
    }
  }
}

Matrix LuSolver::solve(const Matrix& rhs) const {
  const Eigen::Index n = lu_.rows();
  require(rhs.rows() == n, ErrorKind::ShapeMismatch, "rhs row count mismatch");
  Matrix x(n, rhs.cols());
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = rhs.row(perm_[i]);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (!lu_(i, j).is_zero()) x.row(i) -= lu_(i, j) * x.row(j);
  for (Eigen::Index i = n; i-- > 0;) {
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (!lu_(i, j).is_zero()) x.row(i) -= lu_(i, j) * x.row(j);
    x.row(i) *= pivot_inv_[i];
  }
  return x;
}

Matrix solve_batch(const Matrix& m, const Matrix& rhs) {
  return LuSolver(m).solve(rhs);
}

Fp determinant(Matrix m) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorKind::ShapeMismatch,
          "determinant needs a square matrix");
  const Eigen::Index n = m.rows();
  Fp det = zero_like(m(0, 0)) + Fp(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return zero_like(det);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    Fp pinv = inv(m(c, c));
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Fp f = m(i, c) * pinv;
      m.row(i).tail(n - c) -= f * m.row(c).tail(n - c);
    }
  }
  return det;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> rref(Matrix& m, Eigen::Index ncols) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < ncols && row < m.rows(); ++c) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    Fp pinv = inv(m(row, c));
    m.row(row) *= pinv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      Fp f = m(i, c);
      m.row(i) -= f * m.row(row);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) { return rref(m, m.cols()).size(); }

std::optional<Vector> solve_any(Matrix m, Vector b) {
  require(m.rows() == b.rows(), ErrorKind::ShapeMismatch, "rhs length mismatch");
  const Eigen::Index nc = m.cols();
  Matrix aug(m.rows(), nc + 1);
  aug.leftCols(nc) = m;
  aug.col(nc) = b;
  auto pivots = rref(aug, nc);
  for (Eigen::Index i = static_cast<Eigen::Index>(pivots.size()); i < aug.rows(); ++i)
    if (!aug(i, nc).is_zero()) return std::nullopt;
  Fp zero = aug.rows() > 0 ? zero_like(aug(0, nc)) : Fp(0);
  Vector x = Vector::Constant(nc, zero);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x(pivots[r]) = aug(static_cast<Eigen::Index>(r), nc);
  return x;
}

RsCorrection rs_error_correct(const std::vector<Fp>& samples,
                              const std::vector<Fp>& values,
                              std::size_t degree_bound, std::size_t max_errors) {
  const std::size_t r = samples.size();
  require(values.size() == r, ErrorKind::InvalidInput, "one value per sample");
  require(r >= degree_bound + 2 * max_errors, ErrorKind::InvalidInput,
          "need R >= d + 2B");
  require(r > 0, ErrorKind::InvalidInput, "no samples");

  // Q(a_i) = y_i E(a_i), deg Q < d + e, E monic of degree e
  const std::size_t e = max_errors;
  const std::size_t nq = degree_bound + e;
  const auto n = static_cast<Eigen::Index>(nq + e);
  Matrix m(static_cast<Eigen::Index>(r), n);
  Vector b(static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r; ++i) {
    const auto ri = static_cast<Eigen::Index>(i);
    Fp pw = zero_like(samples[i]) + Fp(1);
    for (std::size_t j = 0; j < std::max(nq, e); ++j) {
      if (j < nq) m(ri, static_cast<Eigen::Index>(j)) = pw;
      if (j < e) m(ri, static_cast<Eigen::Index>(nq + j)) = -(values[i] * pw);
      pw *= samples[i];
    }
    b(ri) = values[i] * pow(samples[i], e);
  }
  auto sol = solve_any(m, b);
  if (!sol)
    throw Error(ErrorKind::DecodingFailure, "too many errors to correct");

  std::vector<Fp> qc(nq), ec(e + 1);
  for (std::size_t j = 0; j < nq; ++j) qc[j] = (*sol)(static_cast<Eigen::Index>(j));
  for (std::size_t j = 0; j < e; ++j) ec[j] = (*sol)(static_cast<Eigen::Index>(nq + j));
  ec[e] = zero_like(samples[0]) + Fp(1);
  auto [p, rem] = poly_divmod(Polynomial(qc), Polynomial(ec));
  if (!rem.is_zero() || p.degree() >= static_cast<int>(degree_bound))
    throw Error(ErrorKind::DecodingFailure, "too many errors to correct");

  RsCorrection out;
  out.values.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    out.values[i] = poly_eval(p, samples[i]);
    if (out.values[i] != values[i]) out.error_positions.push_back(i);
  }
  if (out.error_positions.size() > e)
    throw Error(ErrorKind::DecodingFailure, "too many errors to correct");
  return out;
}

}  // namespace cdc
