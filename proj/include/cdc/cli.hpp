#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdc/harness.hpp"

namespace cdc::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // a verify suite failed, a product came out wrong, or an internal error
  kUsage = 2,
  kValidation = 3,
  kDecodeFailure = 4,
  kIo = 5,
};

int exit_code(ErrorKind kind);
/// "validation", "decode-failure" or "io".
const char* category(ErrorKind kind);

// ---- flat binary matrices ----
//
// "CDCMATRX", then q, rows, cols, count as u64 little-endian, then
// count * rows * cols residues (u64 LE), each matrix row-major.

void write_matrices(const std::string& path, const MatrixBatch& batch);
/// Throws Io on a bad header or length, InvalidInput if q or a residue is off.
MatrixBatch read_matrices(const std::string& path, const PrimeField& field);

// ---- experiment configs ----

struct ExperimentConfig {
  std::string scheme;  // EP, CSA, CSA-systematic, GCSA, LCC, N-CSA, N-CSA-systematic
  std::uint64_t modulus = kDefaultModulus;
  std::size_t servers = 0;
  int ell = 1;
  int kc = 1;
  EPParams part;
  int batch = 1;  // EP and LCC only

  Eigen::Index lambda = 2, kappa = 2, mu = 2;  // matrix products

  std::string map = "matmul";  // matmul, chain, elementwise, determinant
  int degree = 2;
  Eigen::Index dim = 2;
  int x = 0;
  int b = 0;

  std::uint64_t data_seed = 1;
  std::uint64_t noise_seed = 2;
  std::uint64_t straggler_seed = 3;
  std::uint64_t byzantine_seed = 4;

  std::optional<std::vector<std::size_t>> responsive;
  std::size_t responsive_count = 0;
  std::vector<std::size_t> corrupted;

  /// CDBMM: {A, B}; N-linear: one file per variable. Relative to base_dir.
  std::vector<std::string> inputs;
  std::string base_dir = ".";
  std::string output;
  unsigned threads = 1;

  bool nlinear() const;
};

/// Unknown keys and wrong types are InvalidInput errors.
ExperimentConfig parse_config(const json& doc);
ExperimentConfig load_config(const std::string& path);

/// Runs the experiment and returns the result document.
json run_experiment(const ExperimentConfig& config);

json to_json(const Rational& r);
json to_json(const CostReport& report);

/// 64-bit FNV-1a over the little-endian residues, batch order, row-major.
std::string digest(const MatrixBatch& batch);
std::string digest(const VectorBatch& batch);

// ---- verify suites ----

struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;
};

std::vector<std::string> suite_names();
/// Throws InvalidInput for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t modulus,
                                   std::uint64_t seed, unsigned threads);

/// Whole command line; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cdc::cli
