#include "cdc/cli.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "cdc/analysis.hpp"
#include "cdc/structmat.hpp"

namespace cdc::cli {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidParams:
    case ErrorKind::ShapeMismatch:
      return kValidation;
    case ErrorKind::DivisionByZero:
    case ErrorKind::SingularMatrix:
    case ErrorKind::InsufficientAnswers:
    case ErrorKind::DecodingFailure:
      return kDecodeFailure;
    case ErrorKind::Io:
      return kIo;
  }
  return kFailure;
}

const char* category(ErrorKind kind) {
  switch (exit_code(kind)) {
    case kValidation:
      return "validation";
    case kDecodeFailure:
      return "decode-failure";
    case kIo:
      return "io";
    default:
      return "internal";
  }
}

// ---- binary matrices ----

namespace {

constexpr std::array<char, 8> kMagic = {'C', 'D', 'C', 'M', 'A', 'T', 'R', 'X'};

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& is, const std::string& path) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  if (is.gcount() != 8) fail(ErrorKind::Io, path + ": truncated matrix file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

void write_matrices(const std::string& path, const MatrixBatch& batch) {
  require(!batch.empty(), ErrorKind::InvalidInput, "nothing to write");
  const Eigen::Index rows = batch[0].rows(), cols = batch[0].cols();
  std::uint64_t q = 0;
  for (const auto& m : batch) {
    require(m.rows() == rows && m.cols() == cols, ErrorKind::ShapeMismatch,
            "matrices in one file must share a shape");
    for (Eigen::Index i = 0; i < m.size(); ++i)
      if (m.data()[i].bound()) q = m.data()[i].modulus();
  }
  require(q != 0, ErrorKind::InvalidInput, "matrices carry no field modulus");
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  os.write(kMagic.data(), 8);
  put_u64(os, q);
  put_u64(os, static_cast<std::uint64_t>(rows));
  put_u64(os, static_cast<std::uint64_t>(cols));
  put_u64(os, batch.size());
  for (const auto& m : batch)
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) put_u64(os, m(i, j).residue(q));
  if (!os) fail(ErrorKind::Io, "write to " + path + " failed");
}

MatrixBatch read_matrices(const std::string& path, const PrimeField& field) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::Io, "cannot open " + path);
  std::array<char, 8> magic{};
  is.read(magic.data(), 8);
  if (is.gcount() != 8 || magic != kMagic) fail(ErrorKind::Io, path + ": not a CDCMATRX file");
  const std::uint64_t q = get_u64(is, path);
  const std::uint64_t rows = get_u64(is, path), cols = get_u64(is, path);
  const std::uint64_t count = get_u64(is, path);
  require(q == field.modulus(), ErrorKind::InvalidInput,
          path + ": file modulus " + std::to_string(q) + " does not match field modulus " +
              std::to_string(field.modulus()));
  require(rows >= 1 && cols >= 1 && rows < (1u << 20) && cols < (1u << 20) && count < (1u << 20),
          ErrorKind::Io, path + ": implausible header");
  MatrixBatch out;
  for (std::uint64_t k = 0; k < count; ++k) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const std::uint64_t v = get_u64(is, path);
        require(v < q, ErrorKind::InvalidInput, path + ": residue out of range");
        m(i, j) = field(static_cast<std::int64_t>(v));
      }
    out.push_back(std::move(m));
  }
  if (is.peek() != std::char_traits<char>::eof()) fail(ErrorKind::Io, path + ": trailing bytes");
  return out;
}

// ---- configs ----

namespace {

const std::vector<std::string> kSchemes = {"EP",  "CSA",   "CSA-systematic",  "GCSA",
                                           "LCC", "N-CSA", "N-CSA-systematic"};

template <typename T>
T take(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::InvalidInput, "config key '" + key + "' has the wrong type");
  }
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  require(obj.is_object(), ErrorKind::InvalidInput, "config '" + where + "' must be an object");
  for (const auto& [k, v] : obj.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
      fail(ErrorKind::InvalidInput, "unknown config key '" + where + k + "'");
}

}  // namespace

bool ExperimentConfig::nlinear() const {
  return scheme == "LCC" || scheme == "N-CSA" || scheme == "N-CSA-systematic";
}

ExperimentConfig parse_config(const json& doc) {
  only_keys(doc, "", {"scheme", "field_modulus", "servers", "ell", "kc", "partition", "batch",
                      "dims", "map", "x", "b", "seeds", "stragglers", "byzantine", "inputs",
                      "output", "threads"});
  ExperimentConfig c;
  require(doc.contains("scheme") && doc.contains("servers"), ErrorKind::InvalidInput,
          "config needs 'scheme' and 'servers'");
  c.scheme = take<std::string>(doc["scheme"], "scheme");
  require(std::find(kSchemes.begin(), kSchemes.end(), c.scheme) != kSchemes.end(),
          ErrorKind::InvalidInput, "unknown scheme '" + c.scheme + "'");
  c.servers = take<std::size_t>(doc["servers"], "servers");
  if (doc.contains("field_modulus")) c.modulus = take<std::uint64_t>(doc["field_modulus"], "field_modulus");
  if (doc.contains("ell")) c.ell = take<int>(doc["ell"], "ell");
  if (doc.contains("kc")) c.kc = take<int>(doc["kc"], "kc");
  if (doc.contains("batch")) c.batch = take<int>(doc["batch"], "batch");
  if (doc.contains("x")) c.x = take<int>(doc["x"], "x");
  if (doc.contains("b")) c.b = take<int>(doc["b"], "b");
  if (doc.contains("threads")) c.threads = take<unsigned>(doc["threads"], "threads");
  if (doc.contains("output")) c.output = take<std::string>(doc["output"], "output");
  if (doc.contains("partition")) {
    const auto& p = doc["partition"];
    only_keys(p, "partition.", {"p", "m", "n"});
    if (p.contains("p")) c.part.p = take<int>(p["p"], "partition.p");
    if (p.contains("m")) c.part.m = take<int>(p["m"], "partition.m");
    if (p.contains("n")) c.part.n = take<int>(p["n"], "partition.n");
  }
  if (doc.contains("dims")) {
    const auto& d = doc["dims"];
    only_keys(d, "dims.", {"lambda", "kappa", "mu"});
    if (d.contains("lambda")) c.lambda = take<Eigen::Index>(d["lambda"], "dims.lambda");
    if (d.contains("kappa")) c.kappa = take<Eigen::Index>(d["kappa"], "dims.kappa");
    if (d.contains("mu")) c.mu = take<Eigen::Index>(d["mu"], "dims.mu");
  }
  if (doc.contains("map")) {
    const auto& m = doc["map"];
    only_keys(m, "map.", {"kind", "n", "dim"});
    if (m.contains("kind")) c.map = take<std::string>(m["kind"], "map.kind");
    if (m.contains("n")) c.degree = take<int>(m["n"], "map.n");
    if (m.contains("dim")) c.dim = take<Eigen::Index>(m["dim"], "map.dim");
  }
  if (doc.contains("seeds")) {
    const auto& s = doc["seeds"];
    only_keys(s, "seeds.", {"data", "noise", "straggler", "byzantine"});
    if (s.contains("data")) c.data_seed = take<std::uint64_t>(s["data"], "seeds.data");
    if (s.contains("noise")) c.noise_seed = take<std::uint64_t>(s["noise"], "seeds.noise");
    if (s.contains("straggler"))
      c.straggler_seed = take<std::uint64_t>(s["straggler"], "seeds.straggler");
    if (s.contains("byzantine"))
      c.byzantine_seed = take<std::uint64_t>(s["byzantine"], "seeds.byzantine");
  }
  if (doc.contains("stragglers")) {
    const auto& s = doc["stragglers"];
    only_keys(s, "stragglers.", {"responsive", "count"});
    require(!(s.contains("responsive") && s.contains("count")), ErrorKind::InvalidInput,
            "stragglers: give 'responsive' or 'count', not both");
    if (s.contains("responsive"))
      c.responsive = take<std::vector<std::size_t>>(s["responsive"], "stragglers.responsive");
    if (s.contains("count")) c.responsive_count = take<std::size_t>(s["count"], "stragglers.count");
  }
  if (doc.contains("byzantine")) {
    const auto& z = doc["byzantine"];
    only_keys(z, "byzantine.", {"corrupted"});
    if (z.contains("corrupted"))
      c.corrupted = take<std::vector<std::size_t>>(z["corrupted"], "byzantine.corrupted");
  }
  if (doc.contains("inputs"))
    c.inputs = take<std::vector<std::string>>(doc["inputs"], "inputs");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  ExperimentConfig c = parse_config(doc);
  c.base_dir = fs::path(path).parent_path().string();
  if (c.base_dir.empty()) c.base_dir = ".";
  return c;
}

// ---- running ----

namespace {

CDBMMParams cdbmm_params(const ExperimentConfig& c, const PrimeField& f) {
  if (c.scheme == "EP") return EPSetup::standard(f, c.part, c.batch, c.servers);
  if (c.scheme == "CSA") return CSAParams::standard(f, c.ell, c.kc, c.servers);
  if (c.scheme == "CSA-systematic") return SystematicParams::standard(f, c.ell, c.kc, c.servers);
  return GCSAParams::standard(f, c.ell, c.kc, c.part, c.servers);
}

NLinearParams nlinear_params(const ExperimentConfig& c, int degree, const PrimeField& f) {
  if (c.scheme == "LCC") return LCCParams::standard(f, c.batch, degree, c.servers);
  if (c.scheme == "N-CSA")
    return NCSAParams::standard(f, degree, c.ell, c.kc, c.servers, c.x, c.b, c.noise_seed);
  return SystematicNCSAParams::standard(f, degree, c.ell, c.kc, c.servers);
}

NLinearMap make_map(const ExperimentConfig& c) {
  if (c.map == "matmul") return matmul_map(c.lambda, c.kappa, c.mu);
  if (c.map == "chain") return matrix_chain_map(c.degree, c.dim);
  if (c.map == "elementwise") return elementwise_product_map(c.degree, c.dim);
  if (c.map == "determinant") return determinant_map(c.degree);
  fail(ErrorKind::InvalidInput, "unknown map kind '" + c.map + "'");
}

StragglerModel straggler_model(const ExperimentConfig& c) {
  if (c.responsive) return StragglerModel::explicit_set(*c.responsive);
  if (c.responsive_count > 0) return StragglerModel::random(c.responsive_count, c.straggler_seed);
  return StragglerModel::all();
}

std::string resolve(const ExperimentConfig& c, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? p : (fs::path(c.base_dir) / path).string();
}

template <typename V>
void validate_variant(const V& params) {
  std::visit([](const auto& p) { p.validate(); }, params);
}

bool same_costs(const CostReport& a, const CostReport& b) {
  return a.threshold == b.threshold && a.upload == b.upload && a.download == b.download;
}

void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace

std::string digest(const MatrixBatch& batch) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& m : batch)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) fnv(h, m(i, j).value());
  return hex(h);
}

std::string digest(const VectorBatch& batch) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& v : batch)
    for (Eigen::Index i = 0; i < v.size(); ++i) fnv(h, v(i).value());
  return hex(h);
}

json to_json(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

json to_json(const CostReport& r) {
  json up = json::array();
  for (const auto& u : r.upload) up.push_back(to_json(u));
  json j = {{"scheme", r.scheme}, {"threshold", r.threshold}, {"upload", up},
            {"download", to_json(r.download)}};
  if (!r.used_servers.empty()) {
    j["upload_elements"] = r.upload_elements;
    j["download_elements"] = r.download_elements;
    j["server_mults"] = r.server_mults;
    j["mults_per_item"] = to_json(r.mults_per_item);
    j["used_servers"] = r.used_servers;
    j["error_servers"] = r.error_servers;
  }
  return j;
}

json run_experiment(const ExperimentConfig& c) {
  const PrimeField f(c.modulus);
  const RunOptions opts{std::max(1u, c.threads)};
  std::mt19937_64 rng(c.data_seed);
  json out = {{"status", "ok"}, {"scheme", c.scheme}, {"field_modulus", c.modulus},
              {"servers", c.servers}};

  if (!c.nlinear()) {
    require(c.x == 0 && c.b == 0 && c.corrupted.empty(), ErrorKind::InvalidParams,
            "x, b and byzantine settings apply to N-CSA only");
    const CDBMMParams params = cdbmm_params(c, f);
    validate_variant(params);
    const auto theory = theoretical_costs(params);
    const auto items = static_cast<std::size_t>(batch_size(params));
    MatrixBatch a, b;
    if (!c.inputs.empty()) {
      require(c.inputs.size() == 2, ErrorKind::InvalidInput, "inputs: need [A file, B file]");
      a = read_matrices(resolve(c, c.inputs[0]), f);
      b = read_matrices(resolve(c, c.inputs[1]), f);
      require(a.size() == items && b.size() == items, ErrorKind::InvalidInput,
              "inputs: each file must hold " + std::to_string(items) + " matrices");
    } else {
      for (std::size_t i = 0; i < items; ++i) a.push_back(f.random(c.lambda, c.kappa, rng));
      for (std::size_t i = 0; i < items; ++i) b.push_back(f.random(c.kappa, c.mu, rng));
    }
    const auto res = run_cdbmm(params, a, b, straggler_model(c), opts);
    bool ok = res.products.size() == items;
    for (std::size_t i = 0; ok && i < items; ++i) ok = res.products[i] == a[i] * b[i];
    out["threshold"] = theory.threshold;
    out["batch"] = items;
    out["digest"] = digest(res.products);
    out["verified"] = ok;
    out["costs"] = to_json(res.report);
    out["theoretical"] = to_json(theory);
    out["matches_theory"] = same_costs(res.report, theory);
    return out;
  }

  const NLinearMap map = make_map(c);
  const NLinearParams params = nlinear_params(c, map.arity(), f);
  validate_variant(params);
  if (c.scheme != "N-CSA")
    require(c.x == 0 && c.b == 0, ErrorKind::InvalidParams, "x and b apply to N-CSA only");
  const auto variables = static_cast<std::size_t>(map.arity());
  const auto theory = theoretical_costs(params, variables);
  const auto items = static_cast<std::size_t>(batch_size(params));
  std::vector<VectorBatch> vars(variables);
  if (!c.inputs.empty()) {
    require(c.inputs.size() == variables, ErrorKind::InvalidInput,
            "inputs: need one file per variable");
    for (std::size_t v = 0; v < variables; ++v) {
      for (const auto& m : read_matrices(resolve(c, c.inputs[v]), f)) {
        require(m.cols() == 1, ErrorKind::InvalidInput, "inputs: variables are column vectors");
        vars[v].push_back(m.col(0));
      }
      require(vars[v].size() == items, ErrorKind::InvalidInput,
              "inputs: each file must hold " + std::to_string(items) + " vectors");
    }
  } else {
    for (std::size_t v = 0; v < variables; ++v)
      for (std::size_t i = 0; i < items; ++i)
        vars[v].push_back(f.random(map.input_dims[v], 1, rng).col(0));
  }
  ByzantineModel byz;
  if (!c.corrupted.empty()) byz = ByzantineModel::additive(c.corrupted, c.byzantine_seed);
  const auto res = run_nlinear(params, map, vars, straggler_model(c), byz, opts);
  bool ok = res.evaluations.size() == items;
  for (std::size_t i = 0; ok && i < items; ++i) {
    VectorBatch args;
    for (std::size_t v = 0; v < variables; ++v) args.push_back(vars[v][i]);
    ok = res.evaluations[i] == map(args);
  }
  out["threshold"] = theory.threshold;
  out["batch"] = items;
  out["map"] = map.name;
  out["digest"] = digest(res.evaluations);
  out["verified"] = ok;
  out["costs"] = to_json(res.report);
  out["theoretical"] = to_json(theory);
  out["matches_theory"] = same_costs(res.report, theory);
  return out;
}

// ---- verify suites ----

namespace {

/// Calls fn on every k-subset of {0..n-1}, in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    fn(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

MatrixBatch randoms(const PrimeField& f, std::size_t count, Eigen::Index r, Eigen::Index c,
                    std::mt19937_64& rng) {
  MatrixBatch out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(f.random(r, c, rng));
  return out;
}

CheckResult cdbmm_subsets(const std::string& name, const CDBMMParams& params, Eigen::Index lam,
                          Eigen::Index kap, Eigen::Index mu, std::mt19937_64& rng,
                          const PrimeField& f, unsigned threads) {
  const auto items = static_cast<std::size_t>(batch_size(params));
  const auto a = randoms(f, items, lam, kap, rng), b = randoms(f, items, kap, mu, rng);
  const auto r = static_cast<std::size_t>(theoretical_costs(params).threshold);
  CheckResult res{name, true, 0, {}};
  for_each_subset(server_count(params), r, [&](const std::vector<std::size_t>& s) {
    const auto got = run_cdbmm(params, a, b, StragglerModel::explicit_set(s), {threads});
    for (std::size_t i = 0; i < items; ++i)
      if (!(got.products[i] == a[i] * b[i])) res.passed = false;
    ++res.cases;
  });
  if (!res.passed) res.detail = "some subset decoded to a wrong product";
  return res;
}

VectorBatch direct(const NLinearMap& map, const std::vector<VectorBatch>& vars) {
  VectorBatch out;
  for (std::size_t i = 0; i < vars[0].size(); ++i) {
    VectorBatch args;
    for (const auto& v : vars) args.push_back(v[i]);
    out.push_back(map(args));
  }
  return out;
}

std::vector<VectorBatch> random_vars(const NLinearMap& map, std::size_t items,
                                     const PrimeField& f, std::mt19937_64& rng) {
  std::vector<VectorBatch> vars(map.input_dims.size());
  for (std::size_t v = 0; v < vars.size(); ++v)
    for (std::size_t i = 0; i < items; ++i)
      vars[v].push_back(f.random(map.input_dims[v], 1, rng).col(0));
  return vars;
}

std::vector<CheckResult> csa_oracle(const PrimeField& f, std::mt19937_64& rng, unsigned t) {
  std::vector<CheckResult> out;
  for (auto [ell, kc] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}}) {
    const auto s = static_cast<std::size_t>(csa_threshold(ell, kc) + 2);
    out.push_back(cdbmm_subsets(
        "csa ell=" + std::to_string(ell) + " kc=" + std::to_string(kc) + " S=" + std::to_string(s),
        CSAParams::standard(f, ell, kc, s), 2, 3, 2, rng, f, t));
  }
  return out;
}

std::vector<CheckResult> ep_oracle(const PrimeField& f, std::mt19937_64& rng, unsigned t) {
  std::vector<CheckResult> out;
  for (EPParams p : {EPParams{1, 1, 1}, EPParams{2, 1, 1}, EPParams{1, 2, 1}, EPParams{1, 1, 2},
                     EPParams{2, 2, 2}}) {
    const auto s = static_cast<std::size_t>(p.threshold() + 2);
    out.push_back(cdbmm_subsets("ep p=" + std::to_string(p.p) + " m=" + std::to_string(p.m) +
                                    " n=" + std::to_string(p.n),
                                EPSetup::standard(f, p, 2, s), 2, 2, 2, rng, f, t));
  }
  return out;
}

std::vector<CheckResult> gcsa_oracle(const PrimeField& f, std::mt19937_64& rng, unsigned t) {
  std::vector<CheckResult> out;
  for (auto [ell, kc, p] : {std::tuple{1, 1, EPParams{2, 1, 1}}, std::tuple{1, 2, EPParams{1, 2, 1}},
                            std::tuple{2, 1, EPParams{1, 1, 2}}, std::tuple{1, 2, EPParams{2, 1, 1}}}) {
    const auto s = static_cast<std::size_t>(gcsa_threshold(ell, kc, p.p, p.m, p.n) + 2);
    out.push_back(cdbmm_subsets("gcsa ell=" + std::to_string(ell) + " kc=" + std::to_string(kc) +
                                    " pmn=" + std::to_string(p.p) + std::to_string(p.m) +
                                    std::to_string(p.n),
                                GCSAParams::standard(f, ell, kc, p, s), 2, 2, 2, rng, f, t));
  }
  return out;
}

std::vector<CheckResult> ncsa_oracle(const PrimeField& f, std::mt19937_64& rng, unsigned t) {
  std::vector<CheckResult> out;
  for (auto [map, ell, kc] :
       {std::tuple{matrix_chain_map(3, 2), 1, 2}, std::tuple{determinant_map(3), 2, 1},
        std::tuple{elementwise_product_map(2, 3), 2, 2}, std::tuple{matmul_map(2, 2, 2), 1, 3}}) {
    const int r = ncsa_threshold(map.arity(), ell, kc);
    const auto s = static_cast<std::size_t>(r + 2);
    const NLinearParams params = NCSAParams::standard(f, map.arity(), ell, kc, s);
    const auto vars = random_vars(map, static_cast<std::size_t>(ell * kc), f, rng);
    const auto want = direct(map, vars);
    CheckResult res{"n-csa " + map.name + " ell=" + std::to_string(ell) + " kc=" +
                        std::to_string(kc),
                    true, 0, {}};
    for_each_subset(s, static_cast<std::size_t>(r), [&](const std::vector<std::size_t>& sub) {
      const auto got = run_nlinear(params, map, vars, StragglerModel::explicit_set(sub), {}, {t});
      if (got.evaluations != want) res.passed = false;
      ++res.cases;
    });
    if (!res.passed) res.detail = "some subset decoded to a wrong value";
    out.push_back(res);
  }
  return out;
}

// Over q = 13 every noise value is tried, so share distributions are exact.
std::vector<CheckResult> security_exhaustive() {
  const PrimeField f(13);
  const auto params = NCSAParams::standard(f, 2, 1, 1, 4, 1, 0);
  CheckResult res{"x-security q=13 N=2 X=1 S=4", true, 0, {}};
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<int> reference;
    for (int data = 0; data < 13; ++data) {
      std::vector<int> hist(13, 0);
      for (int z = 0; z < 13; ++z) {
        NoiseTable noise{1, 1, {Vector::Constant(1, f(z))}};
        const auto share = xs_encode({Vector::Constant(1, f(data))}, params, s, noise);
        ++hist[share.parts[0](0).value()];
      }
      if (std::any_of(hist.begin(), hist.end(), [](int h) { return h != 1; })) {
        res.passed = false;
        res.detail = "share of server " + std::to_string(s) + " is not uniform";
      }
      if (data == 0) reference = hist;
      else if (hist != reference) res.passed = false;
      ++res.cases;
    }
  }
  return {res};
}

std::vector<CheckResult> byzantine_exhaustive(const PrimeField& f, std::mt19937_64& rng,
                                              unsigned t) {
  const auto map = elementwise_product_map(2, 2);
  const NLinearParams params = NCSAParams::standard(f, 2, 1, 1, 7, 1, 1, rng());
  const auto vars = random_vars(map, 1, f, rng);
  const auto want = direct(map, vars);
  const std::uint64_t q = f.modulus();
  const std::vector<std::int64_t> offsets = {1, 2, static_cast<std::int64_t>(q - 1),
                                             static_cast<std::int64_t>(1 + rng() % (q - 1))};
  CheckResult res{"byzantine (2,1,1,1,1) S=7 R=5", true, 0, {}};
  for_each_subset(7, 5, [&](const std::vector<std::size_t>& sub) {
    for (std::size_t bad : sub)
      for (std::int64_t off : offsets) {
        ByzantineModel byz{{bad}, [&](std::size_t, const Vector& v) {
                             return Vector(v + Vector::Constant(v.size(), f(off)));
                           }};
        const auto got = run_nlinear(params, map, vars, StragglerModel::explicit_set(sub), byz, {t});
        if (got.evaluations != want || got.report.error_servers != std::vector<std::size_t>{bad})
          res.passed = false;
        ++res.cases;
      }
  });
  if (!res.passed) res.detail = "a forged answer slipped through or was not located";
  return {res};
}

std::vector<CheckResult> systematic_parity(const PrimeField& f, std::mt19937_64& rng) {
  const auto sys = SystematicParams::standard(f, 1, 2, 5);
  const auto csa = CSAParams::standard(f, 1, 2, 5);
  const auto a = randoms(f, 2, 2, 3, rng), b = randoms(f, 2, 3, 2, rng);
  CheckResult parity{"systematic vs csa ell=1 kc=2 S=5", true, 0, {}};
  CheckResult free{"systematic raw-first subsets need no solve", true, 0, {}};
  for_each_subset(5, 3, [&](const std::vector<std::size_t>& sub) {
    const SolveCounter solves;
    const auto x = run_cdbmm(sys, a, b, StragglerModel::explicit_set(sub));
    const auto used = solves.count();
    const auto y = run_cdbmm(csa, a, b, StragglerModel::explicit_set(sub));
    if (x.products != y.products || !(x.products[0] == a[0] * b[0]) ||
        !(x.products[1] == a[1] * b[1]))
      parity.passed = false;
    ++parity.cases;
    if (sub[0] == 0 && sub[1] == 1) {
      if (used != 0) free.passed = false;
      ++free.cases;
    }
  });
  return {parity, free};
}

std::vector<CheckResult> cost_accounting(const PrimeField& f, std::mt19937_64& rng, unsigned t) {
  CheckResult res{"measured costs equal closed forms", true, 0, {}};
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int it = 0; it < 20; ++it) {
    const int ell = pick(1, 3), kc = pick(1, 3), extra = pick(0, 3);
    const EPParams part{pick(1, 2), pick(1, 2), pick(1, 2)};
    std::vector<CDBMMParams> all = {
        CSAParams::standard(f, ell, kc, static_cast<std::size_t>(csa_threshold(ell, kc) + extra)),
        SystematicParams::standard(f, ell, kc,
                                   static_cast<std::size_t>(csa_threshold(ell, kc) + extra + ell * kc)),
        GCSAParams::standard(f, ell, kc, part,
                             static_cast<std::size_t>(gcsa_threshold(ell, kc, part.p, part.m, part.n) + extra)),
        EPSetup::standard(f, part, ell, static_cast<std::size_t>(part.threshold() + extra))};
    for (const auto& p : all) {
      const auto items = static_cast<std::size_t>(batch_size(p));
      const auto a = randoms(f, items, 4, 4, rng), b = randoms(f, items, 4, 4, rng);
      const auto got = run_cdbmm(p, a, b, StragglerModel::all(), {t});
      if (!same_costs(got.report, theoretical_costs(p))) {
        res.passed = false;
        res.detail = scheme_name(p) + " report differs from its closed form";
      }
      ++res.cases;
    }
    const auto map = elementwise_product_map(2, 3);
    const NLinearParams np = NCSAParams::standard(
        f, 2, ell, kc, static_cast<std::size_t>(ncsa_threshold(2, ell, kc) + extra));
    const auto vars = random_vars(map, static_cast<std::size_t>(ell * kc), f, rng);
    if (!same_costs(run_nlinear(np, map, vars, StragglerModel::all(), {}, {t}).report,
                    theoretical_costs(np, 2))) {
      res.passed = false;
      res.detail = "N-CSA report differs from its closed form";
    }
    ++res.cases;
  }
  return {res};
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"csa-oracle",           "ep-oracle",         "gcsa-oracle",
          "ncsa-oracle",          "security-exhaustive", "byzantine-exhaustive",
          "systematic-parity",    "cost-accounting",   "all"};
}

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t modulus,
                                   std::uint64_t seed, unsigned threads) {
  const PrimeField f(modulus);
  std::mt19937_64 rng(seed);
  threads = std::max(1u, threads);
  if (name == "csa-oracle") return csa_oracle(f, rng, threads);
  if (name == "ep-oracle") return ep_oracle(f, rng, threads);
  if (name == "gcsa-oracle") return gcsa_oracle(f, rng, threads);
  if (name == "ncsa-oracle") return ncsa_oracle(f, rng, threads);
  if (name == "security-exhaustive") return security_exhaustive();
  if (name == "byzantine-exhaustive") return byzantine_exhaustive(f, rng, threads);
  if (name == "systematic-parity") return systematic_parity(f, rng);
  if (name == "cost-accounting") return cost_accounting(f, rng, threads);
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& n : suite_names())
      if (n != "all")
        for (auto& r : run_suite(n, modulus, seed, threads)) out.push_back(std::move(r));
    return out;
  }
  fail(ErrorKind::InvalidInput, "unknown suite '" + name + "'");
}

// ---- command line ----

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  os << text;
  if (!os) fail(ErrorKind::Io, "write to " + path + " failed");
}

std::string costs_csv(const ExperimentConfig& c) {
  const PrimeField f(c.modulus);
  CostReport r;
  std::size_t s = c.servers;
  if (!c.nlinear()) {
    if (s == 0) {
      s = static_cast<std::size_t>(c.scheme == "EP"    ? c.part.threshold()
                                   : c.scheme == "GCSA" ? gcsa_threshold(c.ell, c.kc, c.part.p, c.part.m, c.part.n)
                                                        : csa_threshold(c.ell, c.kc));
      if (c.scheme == "CSA-systematic") s += static_cast<std::size_t>(c.ell * c.kc);
    }
    ExperimentConfig d = c;
    d.servers = s;
    const auto params = cdbmm_params(d, f);
    validate_variant(params);
    r = theoretical_costs(params);
  } else {
    if (s == 0) {
      s = static_cast<std::size_t>(c.scheme == "LCC" ? lcc_threshold(c.degree, c.batch)
                                                     : xsb_threshold(c.degree, c.ell, c.kc, c.x, c.b));
      if (c.scheme == "N-CSA-systematic") s += static_cast<std::size_t>(c.ell * c.kc);
    }
    ExperimentConfig d = c;
    d.servers = s;
    const auto params = nlinear_params(d, c.degree, f);
    validate_variant(params);
    r = theoretical_costs(params, static_cast<std::size_t>(c.degree));
  }
  const Rational u = *std::max_element(r.upload.begin(), r.upload.end());
  std::ostringstream os;
  os << "scheme,S,R,U_num,U_den,D_num,D_den\n"
     << r.scheme << ',' << s << ',' << r.threshold << ',' << u.numerator() << ','
     << u.denominator() << ',' << r.download.numerator() << ',' << r.download.denominator()
     << '\n';
  return os.str();
}

void report_error(std::ostream& err, const std::string& cat, const std::string& kind,
                  const std::string& message) {
  err << json{{"status", "error"}, {"category", cat}, {"kind", kind}, {"message", message}}.dump()
      << '\n';
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coded distributed batch computation experiments", "cdc"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t modulus = kDefaultModulus;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output;
  auto* mod_opt = app.add_option("--field-modulus", modulus, "prime q of GF(q)");
  auto* seed_opt = app.add_option("--seed", seed, "data seed");
  auto* thr_opt = app.add_option("--threads", threads, "worker threads for server simulation");
  app.add_option("--output", output, "write the result here instead of stdout");

  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  std::string config_path;
  run->add_option("config", config_path, "config file")->required();

  auto* costs = app.add_subcommand("costs", "closed-form threshold and costs of one scheme");
  ExperimentConfig cc;
  costs->add_option("--scheme", cc.scheme)->required()->check(CLI::IsMember(kSchemes));
  costs->add_option("--servers", cc.servers, "S (default: smallest feasible)");
  costs->add_option("--ell", cc.ell);
  costs->add_option("--kc", cc.kc);
  costs->add_option("--p", cc.part.p);
  costs->add_option("--m", cc.part.m);
  costs->add_option("--n", cc.part.n);
  costs->add_option("--batch", cc.batch, "batch size (EP, LCC)");
  costs->add_option("--degree", cc.degree, "N for LCC and N-CSA");
  costs->add_option("--x", cc.x);
  costs->add_option("--b", cc.b);

  auto* hull = app.add_subcommand("hull", "lower convex hull of (U, D) over a code family");
  std::string family;
  long hull_s = 0, r_max = 0, pmn_bound = 0;
  hull->add_option("--family", family)->required()->check(CLI::IsMember({"EP", "CSA", "GCSA"}));
  hull->add_option("--servers", hull_s)->required();
  hull->add_option("--r-max", r_max)->required();
  auto* pmn_opt = hull->add_option("--pmn-bound", pmn_bound);

  auto* latency = app.add_subcommand("latency", "EP lower bound vs GCSA upper bound over K");
  long jobs = 100;
  double eta = 0.75, k_min = 0.5, k_max = 25;
  int steps = 50;
  latency->add_option("--jobs", jobs, "J")->capture_default_str();
  latency->add_option("--eta", eta)->capture_default_str();
  latency->add_option("--k-min", k_min)->capture_default_str();
  latency->add_option("--k-max", k_max)->capture_default_str();
  latency->add_option("--steps", steps)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  std::string suite;
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) {
      ExperimentConfig c = load_config(config_path);
      if (*mod_opt) c.modulus = modulus;
      if (*seed_opt) c.data_seed = seed;
      if (*thr_opt) c.threads = threads;
      if (!output.empty()) c.output = output;
      const json result = run_experiment(c);
      const std::string text = result.dump(2) + "\n";
      if (!c.output.empty()) emit(text, resolve(c, c.output), out);
      out << text;
      return result["verified"].get<bool>() ? kOk : kFailure;
    }
    if (costs->parsed()) {
      cc.modulus = modulus;
      emit(costs_csv(cc), output, out);
      return kOk;
    }
    if (hull->parsed()) {
      const Family fam = parse_family(family);
      std::optional<long> bound;
      if (*pmn_opt) bound = pmn_bound;
      emit(hull_csv(fam, pareto_hull(fam, hull_s, r_max, bound)), output, out);
      return kOk;
    }
    if (latency->parsed()) {
      emit(latency_csv(latency_curve(jobs, eta, k_min, k_max, steps)), output, out);
      return kOk;
    }
    if (verify->parsed()) {
      const auto results = run_suite(suite, modulus, seed, threads);
      std::ostringstream os;
      std::size_t passed = 0;
      for (const auto& r : results) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
        if (!r.detail.empty()) os << ": " << r.detail;
        os << '\n';
        passed += r.passed ? 1 : 0;
      }
      os << suite << ": " << passed << '/' << results.size() << " checks passed\n";
      emit(os.str(), output, out);
      return passed == results.size() ? kOk : kFailure;
    }
  } catch (const Error& e) {
    report_error(err, category(e.kind()), to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "internal", "exception", e.what());
    return kFailure;
  }
  return kUsage;
}

}  // namespace cdc::cli
