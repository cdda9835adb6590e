#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "cdc/csa.hpp"
#include "cdc/ep.hpp"
#include "cdc/gcsa.hpp"
#include "cdc/ncsa.hpp"

namespace cdc {

using Rational = boost::rational<std::int64_t>;

/// EP applied to each batch item separately, server s evaluating at samples[s].
struct EPSetup {
  EPParams part;
  std::vector<Fp> samples;
  int batch = 1;

  int threshold() const { return part.threshold(); }
  std::size_t servers() const { return samples.size(); }
  void validate() const;

  /// a_s = s + 1
  static EPSetup standard(const PrimeField& field, EPParams part, int batch, std::size_t servers);
};

using CDBMMParams = std::variant<EPSetup, CSAParams, SystematicParams, GCSAParams>;
using NLinearParams = std::variant<LCCParams, NCSAParams, SystematicNCSAParams>;

std::string scheme_name(const CDBMMParams& params);
std::string scheme_name(const NLinearParams& params);
std::size_t server_count(const CDBMMParams& params);
std::size_t server_count(const NLinearParams& params);
int batch_size(const CDBMMParams& params);
int batch_size(const NLinearParams& params);

/// Which servers respond. Default: all of them.
struct StragglerModel {
  std::optional<std::vector<std::size_t>> responsive;
  std::size_t count = 0;  // random mode when > 0
  std::uint64_t seed = 0;

  static StragglerModel all() { return {}; }
  static StragglerModel explicit_set(std::vector<std::size_t> servers) {
    return {std::move(servers), 0, 0};
  }
  static StragglerModel random(std::size_t count, std::uint64_t seed) {
    return {std::nullopt, count, seed};
  }

  /// Sorted responsive indices; throws InvalidParams on bad indices or counts.
  std::vector<std::size_t> select(std::size_t servers) const;
};

/// Servers in `corrupted` replace their answer with forge(server, honest answer).
struct ByzantineModel {
  std::vector<std::size_t> corrupted;
  std::function<Vector(std::size_t, const Vector&)> forge;

  bool empty() const { return corrupted.empty(); }
  /// Adds a seeded nonzero offset to every coordinate.
  static ByzantineModel additive(std::vector<std::size_t> corrupted, std::uint64_t seed);
};

struct CostReport {
  std::string scheme;
  long threshold = 0;
  std::vector<Rational> upload;  // one per input variable (A, B for matrix products)
  Rational download;

  // measured; empty in closed-form reports
  std::vector<std::uint64_t> upload_elements;
  std::uint64_t download_elements = 0;
  std::vector<std::uint64_t> server_mults;  // answer computation, per server
  Rational mults_per_item;                   // max over servers, divided by L
  std::vector<std::size_t> used_servers;
  std::vector<std::size_t> error_servers;
};

CostReport theoretical_costs(const CDBMMParams& params);
/// `variables` is the number of distinct uploaded variables.
CostReport theoretical_costs(const NLinearParams& params, std::size_t variables);

/// Both forms of the N-CSA download cost.
Rational ncsa_download(int n, int ell, int kc);
Rational ncsa_download_split(int n, int ell, int kc);

struct RunOptions {
  unsigned threads = 1;
};

struct CDBMMResult {
  MatrixBatch products;
  CostReport report;
};

struct NLinearResult {
  VectorBatch evaluations;
  CostReport report;
};

CDBMMResult run_cdbmm(const CDBMMParams& params, const MatrixBatch& batch_a,
                      const MatrixBatch& batch_b, const StragglerModel& straggler,
                      const RunOptions& options = {});

/// vars[v] is the batch of variable v.
NLinearResult run_nlinear(const NLinearParams& params, const PolynomialSpec& spec,
                          const std::vector<VectorBatch>& vars, const StragglerModel& straggler,
                          const ByzantineModel& byzantine = {}, const RunOptions& options = {});
NLinearResult run_nlinear(const NLinearParams& params, const NLinearMap& map,
                          const std::vector<VectorBatch>& vars, const StragglerModel& straggler,
                          const ByzantineModel& byzantine = {}, const RunOptions& options = {});

/// The single-term spec weight * map(v0, ..., v_{N-1}).
PolynomialSpec single_term(const NLinearMap& map, const Fp& weight);

}  // namespace cdc
