#pragma once

#include <vector>

#include "cdc/csa.hpp"
#include "cdc/ep.hpp"

namespace cdc {

/// CSA batch structure with an EP partition inside every (l, k) slot.
struct GCSAParams {
  CSAParams points;
  EPParams part;

  /// R' = pmn
  int confluence() const { return part.p * part.m * part.n; }
  int threshold() const {
    return confluence() * ((points.ell + 1) * points.kc - 1) + part.p - 1;
  }
  void validate() const;

  static GCSAParams standard(const PrimeField& field, int ell, int kc, EPParams part,
                             std::size_t servers);
};

int gcsa_threshold(int ell, int kc, int p, int m, int n);
/// EP inside each of the S' pieces, CSA with K_c = K_c' S' on top.
long naive_combo_threshold(long ell, long kc, long inner_servers);
/// Worst-case responder count when an (N1, R1) partitioning code is nested
/// inside an (N2, R2) batch code: every outer task needs R2 of N2.
long nested_straggler_threshold(long n1, long r1, long n2, long r2);

/// Coefficients of prod_{k' != k} (x + f_{l,k'} - f_{l,k})^{R'}, ascending.
std::vector<Fp> psi_coeffs(const GCSAParams& params, int l, int k);

CodedShare gcsa_encode_a(const MatrixBatch& batch, const GCSAParams& params, std::size_t s);
CodedShare gcsa_encode_b(const MatrixBatch& batch, const GCSAParams& params, std::size_t s);
Matrix gcsa_answer(const CodedShare& share_a, const CodedShare& share_b);
/// Uses the first R answers; returns the L full products.
MatrixBatch gcsa_decode(const std::vector<ServerAnswer>& answers, const GCSAParams& params);

}  // namespace cdc
