#include "cdc/csa.hpp"

#include <string>

#include "cdc/structmat.hpp"

namespace cdc {

namespace detail {

void check_batch(const MatrixBatch& batch, int expected, const char* what) {
  require(static_cast<int>(batch.size()) == expected, ErrorKind::ShapeMismatch,
          std::string(what) + " batch must hold " + std::to_string(expected) + " matrices");
  for (const auto& x : batch)
    require(x.rows() == batch[0].rows() && x.cols() == batch[0].cols(),
            ErrorKind::ShapeMismatch, std::string(what) + " batch shapes differ");
}

}  // namespace detail

void require_threshold(long r, std::size_t servers) {
  require(r <= static_cast<long>(servers), ErrorKind::InvalidParams,
          "R <= S violated: R=" + std::to_string(r) + ", S=" + std::to_string(servers));
}

void CSAParams::validate_points() const {
  require(ell >= 1 && kc >= 1, ErrorKind::InvalidParams, "ell and K_c must be positive");
  require(poles.size() == static_cast<std::size_t>(batch_size()), ErrorKind::InvalidParams,
          "need ell*K_c poles");
  std::vector<Fp> all(poles);
  all.insert(all.end(), samples.begin(), samples.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      require(all[i] != all[j], ErrorKind::InvalidParams,
              "evaluation points must be pairwise distinct");
}

void CSAParams::validate() const {
  validate_points();
  require_threshold(threshold(), servers());
}

CSAParams CSAParams::standard(const PrimeField& field, int ell, int kc, std::size_t servers) {
  require(ell >= 1 && kc >= 1, ErrorKind::InvalidParams, "ell and K_c must be positive");
  const std::size_t l = static_cast<std::size_t>(ell * kc);
  require(l + servers < field.modulus(), ErrorKind::InvalidParams,
          "field too small: need L + S < q");
  CSAParams p;
  p.ell = ell;
  p.kc = kc;
  for (std::size_t i = 0; i < l; ++i) p.poles.push_back(field(static_cast<std::int64_t>(i + 1)));
  for (std::size_t s = 0; s < servers; ++s)
    p.samples.push_back(field(static_cast<std::int64_t>(l + s + 1)));
  return p;
}

int csa_threshold(int ell, int kc) { return (ell + 1) * kc - 1; }

std::vector<Fp> csa_residues(const CSAParams& prm) {
  std::vector<Fp> c;
  for (int l = 0; l < prm.ell; ++l)
    for (int k = 0; k < prm.kc; ++k) {
      Fp acc = prm.pole(l, k) * Fp(0) + Fp(1);
      for (int k2 = 0; k2 < prm.kc; ++k2)
        if (k2 != k) acc *= prm.pole(l, k2) - prm.pole(l, k);
      c.push_back(acc);
    }
  return c;
}

namespace {

void check_server(const CSAParams& prm, std::size_t s) {
  require(s < prm.servers(), ErrorKind::InvalidInput, "server index out of range");
}

}  // namespace

// component l: sum_k prod_{k' != k}(f_{l,k'} - a) A_{l,k}
CodedShare csa_encode_a(const MatrixBatch& batch, const CSAParams& prm, std::size_t s) {
  prm.validate_points();
  check_server(prm, s);
  detail::check_batch(batch, prm.batch_size(), "A");
  const Fp a = prm.samples[s];
  CodedShare out{s, {}};
  for (int l = 0; l < prm.ell; ++l) {
    Matrix acc = Matrix::Constant(batch[0].rows(), batch[0].cols(), a * Fp(0));
    for (int k = 0; k < prm.kc; ++k) {
      Fp w = a * Fp(0) + Fp(1);
      for (int k2 = 0; k2 < prm.kc; ++k2)
        if (k2 != k) w *= prm.pole(l, k2) - a;
      acc += w * batch[static_cast<std::size_t>(l * prm.kc + k)];
    }
    out.parts.push_back(std::move(acc));
  }
  return out;
}

// component l: sum_k (f_{l,k} - a)^{-1} B_{l,k}
CodedShare csa_encode_b(const MatrixBatch& batch, const CSAParams& prm, std::size_t s) {
  prm.validate_points();
  check_server(prm, s);
  detail::check_batch(batch, prm.batch_size(), "B");
  const Fp a = prm.samples[s];
  CodedShare out{s, {}};
  for (int l = 0; l < prm.ell; ++l) {
    Matrix acc = Matrix::Constant(batch[0].rows(), batch[0].cols(), a * Fp(0));
    for (int k = 0; k < prm.kc; ++k)
      acc += inv(prm.pole(l, k) - a) * batch[static_cast<std::size_t>(l * prm.kc + k)];
    out.parts.push_back(std::move(acc));
  }
  return out;
}

Matrix csa_answer(const CodedShare& share_a, const CodedShare& share_b) {
  require(share_a.server == share_b.server, ErrorKind::InvalidInput,
          "shares come from different servers");
  require(share_a.parts.size() == share_b.parts.size() && !share_a.parts.empty(),
          ErrorKind::ShapeMismatch, "share component counts differ");
  Matrix y;
  for (std::size_t l = 0; l < share_a.parts.size(); ++l) {
    require(share_a.parts[l].cols() == share_b.parts[l].rows(), ErrorKind::ShapeMismatch,
            "coded shares are not conformable");
    if (l == 0)
      y = share_a.parts[0] * share_b.parts[0];
    else
      y += share_a.parts[l] * share_b.parts[l];
  }
  return y;
}

MatrixBatch csa_decode(const std::vector<ServerAnswer>& answers, const CSAParams& prm) {
  prm.validate_points();
  const auto r = static_cast<std::size_t>(prm.threshold());
  require(answers.size() >= r, ErrorKind::InsufficientAnswers,
          "CSA decode needs " + std::to_string(r) + " answers, got " +
              std::to_string(answers.size()));
  CVSpec spec{prm.poles, {}, 1};
  std::vector<const Matrix*> ys;
  for (std::size_t i = 0; i < r; ++i) {
    check_server(prm, answers[i].server);
    spec.samples.push_back(prm.samples[answers[i].server]);
    ys.push_back(&answers[i].value);
  }
  std::vector<std::vector<Fp>> res;
  for (const Fp& c : csa_residues(prm)) res.push_back({c});
  Matrix x = LuSolver(scaled_cv_system(spec, res)).solve(stack_flattened(ys));
  MatrixBatch out;
  const Eigen::Index rows = answers[0].value.rows(), cols = answers[0].value.cols();
  for (int j = 0; j < prm.batch_size(); ++j) out.push_back(unflatten_row(x, j, rows, cols));
  return out;
}

// ---- systematic ----

void SystematicParams::validate() const {
  code.validate_points();
  require_threshold(threshold(), servers());
}

SystematicParams SystematicParams::standard(const PrimeField& field, int ell, int kc,
                                            std::size_t servers) {
  require(ell >= 1 && kc >= 1, ErrorKind::InvalidParams, "ell and K_c must be positive");
  const auto l = static_cast<std::size_t>(ell * kc);
  require(servers >= l, ErrorKind::InvalidParams, "systematic layout needs S >= L");
  require(servers < field.modulus(), ErrorKind::InvalidParams, "field too small: need S < q");
  SystematicParams p;
  p.code.ell = ell;
  p.code.kc = kc;
  for (std::size_t i = 0; i < l; ++i)
    p.code.poles.push_back(field(static_cast<std::int64_t>(i + 1)));
  for (std::size_t s = l; s < servers; ++s)
    p.code.samples.push_back(field(static_cast<std::int64_t>(s + 1)));
  return p;
}

std::vector<SharePair> systematic_encode(const MatrixBatch& batch_a, const MatrixBatch& batch_b,
                                         const SystematicParams& prm) {
  prm.validate();
  const auto l = static_cast<std::size_t>(prm.code.batch_size());
  detail::check_batch(batch_a, prm.code.batch_size(), "A");
  detail::check_batch(batch_b, prm.code.batch_size(), "B");
  std::vector<SharePair> out;
  for (std::size_t s = 0; s < l; ++s)
    out.push_back({CodedShare{s, {batch_a[s]}}, CodedShare{s, {batch_b[s]}}});
  for (std::size_t s = l; s < prm.servers(); ++s) {
    SharePair sp{csa_encode_a(batch_a, prm.code, s - l), csa_encode_b(batch_b, prm.code, s - l)};
    sp.a.server = s;
    sp.b.server = s;
    out.push_back(std::move(sp));
  }
  return out;
}

MatrixBatch systematic_decode(const std::vector<ServerAnswer>& answers,
                              const SystematicParams& prm) {
  prm.validate();
  const CSAParams& code = prm.code;
  const auto l = static_cast<std::size_t>(code.batch_size());
  const auto r = static_cast<std::size_t>(prm.threshold());
  require(answers.size() >= r, ErrorKind::InsufficientAnswers,
          "systematic decode needs " + std::to_string(r) + " answers, got " +
              std::to_string(answers.size()));

  std::vector<const Matrix*> known(l, nullptr);
  std::vector<const ServerAnswer*> coded;
  for (std::size_t i = 0; i < r; ++i) {
    const auto& a = answers[i];
    require(a.server < prm.servers(), ErrorKind::InvalidInput, "server index out of range");
    if (a.server < l)
      known[a.server] = &a.value;
    else
      coded.push_back(&a);
  }
  std::vector<std::size_t> unknown;
  for (std::size_t j = 0; j < l; ++j)
    if (!known[j]) unknown.push_back(j);

  MatrixBatch out(l);
  for (std::size_t j = 0; j < l; ++j)
    if (known[j]) out[j] = *known[j];
  if (unknown.empty()) return out;

  // Y_s - sum_{known j} c_j/(f_j - a_s) C_j, then solve on the remaining poles
  const auto res = csa_residues(code);
  CVSpec spec;
  std::vector<std::vector<Fp>> spec_res;
  for (std::size_t j : unknown) {
    spec.poles.push_back(code.poles[j]);
    spec_res.push_back({res[j]});
  }
  std::vector<Matrix> reduced;
  for (const ServerAnswer* a : coded) {
    const Fp alpha = code.samples[a->server - l];
    spec.samples.push_back(alpha);
    Matrix y = a->value;
    for (std::size_t j = 0; j < l; ++j)
      if (known[j]) y -= (res[j] * inv(code.poles[j] - alpha)) * (*known[j]);
    reduced.push_back(std::move(y));
  }
  std::vector<const Matrix*> ys;
  for (const auto& y : reduced) ys.push_back(&y);
  Matrix x = LuSolver(scaled_cv_system(spec, spec_res)).solve(stack_flattened(ys));
  const Eigen::Index rows = answers[0].value.rows(), cols = answers[0].value.cols();
  for (std::size_t u = 0; u < unknown.size(); ++u)
    out[unknown[u]] = unflatten_row(x, static_cast<Eigen::Index>(u), rows, cols);
  return out;
}

}  // namespace cdc
