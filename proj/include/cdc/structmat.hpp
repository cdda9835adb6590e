#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdc/ffield.hpp"

namespace cdc {

/// Points of a (confluent) Cauchy-Vandermonde matrix.
/// Rows follow `samples`; columns are the pole blocks then the power tail.
struct CVSpec {
  std::vector<Fp> poles;
  std::vector<Fp> samples;
  std::size_t confluence = 1;

  std::size_t size() const { return samples.size(); }
  std::size_t tail_width() const { return samples.size() - confluence * poles.size(); }
  /// Throws InvalidInput on coincident points or a negative tail.
  void validate() const;
};

/// (i,j) = 1/(f_j - a_i) for j < L, a_i^(j-L) after that.
Matrix cv_matrix(const CVSpec& spec);
/// Per pole the columns 1/(f-a)^R', ..., 1/(f-a), then the power tail.
Matrix confluent_cv_matrix(const CVSpec& spec);
/// (i,j) = c[i-j] for i >= j.
Matrix lt_toeplitz(const std::vector<Fp>& c, std::size_t n);
/// (i,j) = a_i^j, j < cols.
Matrix vandermonde(const std::vector<Fp>& samples, std::size_t cols);

/// confluent_cv_matrix(spec) * blockdiag(T(residues[0]), ..., T(residues[L-1]), I).
/// Each residues[j] holds spec.confluence Toeplitz entries for pole j.
Matrix scaled_cv_system(const CVSpec& spec,
                        const std::vector<std::vector<Fp>>& residues);

/// Row i is items[i] flattened column-major; the shared RHS layout of all
/// entry-wise decoders.
Matrix stack_flattened(const std::vector<const Matrix*>& items);
/// Inverse of one row of stack_flattened.
Matrix unflatten_row(const Matrix& stacked, Eigen::Index row, Eigen::Index rows,
                     Eigen::Index cols);

namespace detail {
extern thread_local std::uint64_t solve_count;
}  // namespace detail

/// Number of matrix factorizations done on this thread while alive.
class SolveCounter {
 public:
  SolveCounter() : start_(detail::solve_count) {}
  std::uint64_t count() const { return detail::solve_count - start_; }

 private:
  std::uint64_t start_;
};

/// PLU factorization with first-nonzero pivoting.
class LuSolver {
 public:
  /// Throws SingularMatrixError naming the failing column.
  explicit LuSolver(const Matrix& m);

  Eigen::Index size() const { return lu_.rows(); }
  /// Solves M x = rhs for every column of rhs.
  Matrix solve(const Matrix& rhs) const;

 private:
  Matrix lu_;
  std::vector<Eigen::Index> perm_;
  std::vector<Fp> pivot_inv_;
};

Matrix solve_batch(const Matrix& m, const Matrix& rhs);

Fp determinant(Matrix m);
std::size_t rank(Matrix m);
/// Some solution of a possibly rectangular, rank deficient system, or
/// nothing when inconsistent. Free variables are set to zero.
std::optional<Vector> solve_any(Matrix m, Vector b);

struct RsCorrection {
  std::vector<Fp> values;
  /// Indices into the caller's value list.
  std::vector<std::size_t> error_positions;
};

/// Berlekamp-Welch. Values are evaluations at `samples` of a polynomial of
/// degree < degree_bound with at most max_errors corrupted.
RsCorrection rs_error_correct(const std::vector<Fp>& samples,
                              const std::vector<Fp>& values,
                              std::size_t degree_bound, std::size_t max_errors);

}  // namespace cdc
