#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cdc/csa.hpp"

namespace cdc {

using VectorBatch = std::vector<Vector>;

/// A map of N vector arguments, linear in each one separately.
struct NLinearMap {
  std::string name;
  std::vector<Eigen::Index> input_dims;
  Eigen::Index output_dim = 0;
  std::function<Vector(const VectorBatch&)> eval;

  int arity() const { return static_cast<int>(input_dims.size()); }
  /// Checks argument count and sizes, then evaluates.
  Vector operator()(const VectorBatch& args) const;
};

/// vec(A) and vec(B) (column-major) to vec(AB).
NLinearMap matmul_map(Eigen::Index lambda, Eigen::Index kappa, Eigen::Index mu);
/// Product of N square d x d matrices.
NLinearMap matrix_chain_map(int n, Eigen::Index d);
/// Entry-wise product of N length-d vectors.
NLinearMap elementwise_product_map(int n, Eigen::Index d);
/// det of the n x n matrix whose columns are the arguments (Leibniz).
NLinearMap determinant_map(int n);

// ---- LCC ----

struct LCCParams {
  int n = 2;  // degree of the map
  std::vector<Fp> betas;
  std::vector<Fp> samples;

  int batch_size() const { return static_cast<int>(betas.size()); }
  int threshold() const { return n * (batch_size() - 1) + 1; }
  void validate() const;

  /// beta_l = l + 1, alpha_s = L + s + 1.
  static LCCParams standard(const PrimeField& field, int batch, int n, std::size_t servers);
};

int lcc_threshold(int n, int batch);
Vector lcc_encode(const VectorBatch& batch, const std::vector<Fp>& betas, const Fp& alpha);

struct PointVector {
  Fp point;
  Vector value;
};

/// Interpolates from the first N(L-1)+1 answers and evaluates at every beta.
VectorBatch lcc_decode(const std::vector<PointVector>& answers, const std::vector<Fp>& betas,
                       int n);

// ---- N-CSA ----

struct NCSAParams {
  CSAParams points;
  int n = 2;
  int x = 0;  // colluding servers tolerated
  int b = 0;  // Byzantine servers tolerated
  std::uint64_t noise_seed = 0;

  int threshold() const;
  void validate() const;

  static NCSAParams standard(const PrimeField& field, int n, int ell, int kc,
                             std::size_t servers, int x = 0, int b = 0,
                             std::uint64_t noise_seed = 0);
};

int ncsa_threshold(int n, int ell, int kc);
int xsb_threshold(int n, int ell, int kc, int x, int b);

/// c_{l,k} = prod_{k' != k} (f_{l,k'} - f_{l,k})^{N-1}
std::vector<Fp> ncsa_residues(const NCSAParams& params);

struct VectorShare {
  std::size_t server = 0;
  VectorBatch parts;
};

struct VectorAnswer {
  std::size_t server = 0;
  Vector value;
};

VectorShare ncsa_encode(const VectorBatch& batch, const NCSAParams& params, std::size_t s);
/// shares[n] is this server's share of variable n.
Vector ncsa_answer(const std::vector<VectorShare>& shares, const NLinearMap& map,
                   const NCSAParams& params, std::size_t s);
/// Needs B = 0. Uses the first R answers.
VectorBatch ncsa_decode(const std::vector<VectorAnswer>& answers, const NCSAParams& params);

// ---- polynomial batch evaluation ----

inline constexpr int kConstantSlot = -1;

/// weight * map(vars[slots[0]], ..., vars[slots[N-1]]); a kConstantSlot
/// argument is the all-ones vector.
struct PolynomialTerm {
  Fp weight;
  NLinearMap map;
  std::vector<int> slots;
};

struct PolynomialSpec {
  int degree = 0;
  std::vector<Eigen::Index> variable_dims;
  std::vector<PolynomialTerm> terms;

  Eigen::Index output_dim() const;
  void validate() const;
};

/// Direct evaluation, used as the reference.
Vector poly_spec_eval(const PolynomialSpec& spec, const VectorBatch& vars);

/// var_shares[v] is this server's share of variable v.
Vector poly_batch_eval_answer(const std::vector<VectorShare>& var_shares,
                              const PolynomialSpec& spec, const NCSAParams& params,
                              std::size_t s);

// ---- X-secure, B-Byzantine ----

/// Noise vectors z_{l,x} for one variable; the same realization is used at
/// every server.
struct NoiseTable {
  int ell = 0;
  int x = 0;
  VectorBatch z;  // index l * x + j

  const Vector& at(int l, int j) const { return z[static_cast<std::size_t>(l * x + j)]; }

  /// Uniform noise from a counter-based generator keyed by
  /// (seed, variable, l, j, coordinate).
  static NoiseTable sample(const PrimeField& field, std::uint64_t seed, int variable, int ell,
                           int x, Eigen::Index dim);
};

/// Uniform element of GF(q) determined by (seed, counter); rejection sampled.
Fp counter_uniform(const PrimeField& field, std::uint64_t seed, std::uint64_t counter);

VectorShare xs_encode(const VectorBatch& batch, const NCSAParams& params, std::size_t s,
                      const NoiseTable& noise);

struct XsbResult {
  VectorBatch evaluations;
  /// Server indices flagged as corrupted.
  std::vector<std::size_t> error_servers;
};

/// Scale to a Reed-Solomon codeword, locate errors, discard them and solve
/// on R - 2B clean answers. Uses the first R answers.
XsbResult xsb_decode(const std::vector<VectorAnswer>& answers, const NCSAParams& params);

// ---- systematic N-CSA ----

/// Servers 0..L-1 hold raw variables; servers L.. hold N-CSA shares at
/// code.points.samples[s - L]. Only defined for X = B = 0.
struct SystematicNCSAParams {
  NCSAParams code;

  std::size_t servers() const {
    return static_cast<std::size_t>(code.points.batch_size()) + code.points.samples.size();
  }
  int threshold() const { return code.threshold(); }
  void validate() const;

  static SystematicNCSAParams standard(const PrimeField& field, int n, int ell, int kc,
                                       std::size_t servers);
};

VectorShare systematic_ncsa_encode(const VectorBatch& batch, const SystematicNCSAParams& params,
                                   std::size_t s);
Vector systematic_ncsa_answer(const std::vector<VectorShare>& shares, const NLinearMap& map,
                              const SystematicNCSAParams& params, std::size_t s);
VectorBatch systematic_ncsa_decode(const std::vector<VectorAnswer>& answers,
                                   const SystematicNCSAParams& params);

}  // namespace cdc
