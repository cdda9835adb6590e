#pragma once

#include <cstddef>
#include <vector>

#include "cdc/ffield.hpp"

namespace cdc {

/// Batch grouping and evaluation points shared by CSA, GCSA and N-CSA.
/// Pole (l, k) is poles[l * kc + k]; server s evaluates at samples[s].
struct CSAParams {
  int ell = 1;
  int kc = 1;
  std::vector<Fp> poles;
  std::vector<Fp> samples;

  int batch_size() const { return ell * kc; }
  std::size_t servers() const { return samples.size(); }
  const Fp& pole(int l, int k) const { return poles[static_cast<std::size_t>(l * kc + k)]; }
  int threshold() const { return (ell + 1) * kc - 1; }

  /// Distinct points, matching sizes. Does not look at any threshold.
  void validate_points() const;
  /// validate_points() plus R <= S.
  void validate() const;

  /// f_{l,k} = kc*l + k + 1 and a_s = L + s + 1 (0-based l, k, s).
  static CSAParams standard(const PrimeField& field, int ell, int kc, std::size_t servers);
};

/// Throws InvalidParams naming the R <= S constraint.
void require_threshold(long r, std::size_t servers);

int csa_threshold(int ell, int kc);

/// Upload to one server: ell coded matrices (or one raw matrix).
struct CodedShare {
  std::size_t server = 0;
  MatrixBatch parts;
};

struct ServerAnswer {
  std::size_t server = 0;
  Matrix value;
};

/// c_{l,k} = prod_{k' != k} (f_{l,k'} - f_{l,k}), flattened like the poles.
std::vector<Fp> csa_residues(const CSAParams& params);

CodedShare csa_encode_a(const MatrixBatch& batch, const CSAParams& params, std::size_t s);
CodedShare csa_encode_b(const MatrixBatch& batch, const CSAParams& params, std::size_t s);
/// sum_l parts_a[l] * parts_b[l]
Matrix csa_answer(const CodedShare& share_a, const CodedShare& share_b);
/// Uses the first R answers; returns the L products in batch order.
MatrixBatch csa_decode(const std::vector<ServerAnswer>& answers, const CSAParams& params);

/// Systematic layout: servers 0..L-1 hold raw pairs, servers L.. hold CSA
/// shares evaluated at code.samples[s - L].
struct SystematicParams {
  CSAParams code;

  std::size_t servers() const {
    return static_cast<std::size_t>(code.batch_size()) + code.samples.size();
  }
  int threshold() const { return code.threshold(); }
  void validate() const;

  static SystematicParams standard(const PrimeField& field, int ell, int kc,
                                   std::size_t servers);
};

struct SharePair {
  CodedShare a;
  CodedShare b;
};

std::vector<SharePair> systematic_encode(const MatrixBatch& batch_a, const MatrixBatch& batch_b,
                                         const SystematicParams& params);
/// Raw answers pass through; coded answers have the known products removed
/// before the reduced system is solved. No solve when servers 0..L-1 all answer.
MatrixBatch systematic_decode(const std::vector<ServerAnswer>& answers,
                              const SystematicParams& params);

namespace detail {
void check_batch(const MatrixBatch& batch, int expected, const char* what);
}  // namespace detail

}  // namespace cdc
