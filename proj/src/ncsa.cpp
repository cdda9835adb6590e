#include "cdc/ncsa.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "cdc/structmat.hpp"

namespace cdc {

namespace {

Fp one_like(const Fp& x) { return x * Fp(0) + Fp(1); }

Matrix stack_vectors(const std::vector<const Vector*>& vs) {
  require(!vs.empty(), ErrorKind::InvalidInput, "nothing to stack");
  Matrix m(static_cast<Eigen::Index>(vs.size()), vs[0]->size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    require(vs[i]->size() == vs[0]->size(), ErrorKind::ShapeMismatch, "answer sizes differ");
    m.row(static_cast<Eigen::Index>(i)) = vs[i]->transpose();
  }
  return m;
}

// Unknown rows for y_i = sum_j c_j/(f_j - a_i) D_j + (power tail in a_i).
Matrix solve_cauchy(const std::vector<Fp>& poles, const std::vector<Fp>& res,
                    const std::vector<Fp>& samples, const Matrix& rhs) {
  CVSpec spec{poles, samples, 1};
  std::vector<std::vector<Fp>> r;
  for (const Fp& c : res) r.push_back({c});
  return LuSolver(scaled_cv_system(spec, r)).solve(rhs);
}

void check_vector_batch(const VectorBatch& batch, int expected) {
  require(static_cast<int>(batch.size()) == expected, ErrorKind::ShapeMismatch,
          "variable batch must hold " + std::to_string(expected) + " vectors");
  for (const auto& v : batch)
    require(v.size() == batch[0].size(), ErrorKind::ShapeMismatch, "variable sizes differ");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

// ---- maps ----

Vector NLinearMap::operator()(const VectorBatch& args) const {
  require(static_cast<int>(args.size()) == arity(), ErrorKind::ShapeMismatch,
          name + ": wrong number of arguments");
  for (std::size_t i = 0; i < args.size(); ++i)
    require(args[i].size() == input_dims[i], ErrorKind::ShapeMismatch,
            name + ": argument " + std::to_string(i) + " has the wrong size");
  Vector out = eval(args);
  require(out.size() == output_dim, ErrorKind::ShapeMismatch, name + ": bad output size");
  return out;
}

NLinearMap matmul_map(Eigen::Index lambda, Eigen::Index kappa, Eigen::Index mu) {
  NLinearMap m;
  m.name = "matmul";
  m.input_dims = {lambda * kappa, kappa * mu};
  m.output_dim = lambda * mu;
  m.eval = [=](const VectorBatch& x) {
    Matrix c = Eigen::Map<const Matrix>(x[0].data(), lambda, kappa) *
               Eigen::Map<const Matrix>(x[1].data(), kappa, mu);
    return Vector(Eigen::Map<const Vector>(c.data(), c.size()));
  };
  return m;
}

NLinearMap matrix_chain_map(int n, Eigen::Index d) {
  require(n >= 1, ErrorKind::InvalidParams, "chain needs at least one factor");
  NLinearMap m;
  m.name = "matrix-chain";
  m.input_dims.assign(static_cast<std::size_t>(n), d * d);
  m.output_dim = d * d;
  m.eval = [=](const VectorBatch& x) {
    Matrix c = Eigen::Map<const Matrix>(x[0].data(), d, d);
    for (std::size_t i = 1; i < x.size(); ++i) c = c * Eigen::Map<const Matrix>(x[i].data(), d, d);
    return Vector(Eigen::Map<const Vector>(c.data(), c.size()));
  };
  return m;
}

NLinearMap elementwise_product_map(int n, Eigen::Index d) {
  require(n >= 1, ErrorKind::InvalidParams, "product needs at least one factor");
  NLinearMap m;
  m.name = "elementwise";
  m.input_dims.assign(static_cast<std::size_t>(n), d);
  m.output_dim = d;
  m.eval = [](const VectorBatch& x) {
    Vector v = x[0];
    for (std::size_t i = 1; i < x.size(); ++i) v = v.cwiseProduct(x[i]);
    return v;
  };
  return m;
}

NLinearMap determinant_map(int n) {
  require(n >= 1 && n <= 8, ErrorKind::InvalidParams, "determinant map supports 1 <= N <= 8");
  NLinearMap m;
  m.name = "determinant";
  m.input_dims.assign(static_cast<std::size_t>(n), n);
  m.output_dim = 1;
  m.eval = [n](const VectorBatch& cols) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Fp total = cols[0](0) * Fp(0);
    do {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (perm[i] > perm[j]) ++inversions;
      Fp t = one_like(total);
      for (int c = 0; c < n; ++c) t *= cols[static_cast<std::size_t>(c)](perm[c]);
      total += inversions % 2 ? -t : t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Vector v(1);
    v(0) = total;
    return v;
  };
  return m;
}

// ---- LCC ----

void LCCParams::validate() const {
  require(n >= 1 && batch_size() >= 1, ErrorKind::InvalidParams, "need N >= 1 and L >= 1");
  std::vector<Fp> all(betas);
  all.insert(all.end(), samples.begin(), samples.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      require(all[i] != all[j], ErrorKind::InvalidParams,
              "evaluation points must be pairwise distinct");
  require_threshold(threshold(), samples.size());
}

LCCParams LCCParams::standard(const PrimeField& field, int batch, int n, std::size_t servers) {
  require(batch >= 1, ErrorKind::InvalidParams, "batch must be positive");
  require(static_cast<std::size_t>(batch) + servers < field.modulus(), ErrorKind::InvalidParams,
          "field too small: need L + S < q");
  LCCParams p;
  p.n = n;
  for (int l = 0; l < batch; ++l) p.betas.push_back(field(l + 1));
  for (std::size_t s = 0; s < servers; ++s)
    p.samples.push_back(field(static_cast<std::int64_t>(static_cast<std::size_t>(batch) + s + 1)));
  return p;
}

int lcc_threshold(int n, int batch) { return n * (batch - 1) + 1; }

Vector lcc_encode(const VectorBatch& batch, const std::vector<Fp>& betas, const Fp& alpha) {
  check_vector_batch(batch, static_cast<int>(betas.size()));
  Vector out = Vector::Constant(batch[0].size(), alpha * Fp(0));
  for (std::size_t l = 0; l < betas.size(); ++l) {
    Fp w = one_like(alpha);
    for (std::size_t l2 = 0; l2 < betas.size(); ++l2) {
      if (l2 == l) continue;
      require(betas[l] != betas[l2], ErrorKind::InvalidInput, "duplicate beta point");
      w *= (alpha - betas[l2]) / (betas[l] - betas[l2]);
    }
    out += w * batch[l];
  }
  return out;
}

VectorBatch lcc_decode(const std::vector<PointVector>& answers, const std::vector<Fp>& betas,
                       int n) {
  const auto r = static_cast<std::size_t>(lcc_threshold(n, static_cast<int>(betas.size())));
  require(answers.size() >= r, ErrorKind::InsufficientAnswers,
          "LCC decode needs " + std::to_string(r) + " answers, got " +
              std::to_string(answers.size()));
  std::vector<Fp> pts;
  std::vector<const Vector*> ys;
  for (std::size_t i = 0; i < r; ++i) {
    for (const Fp& p : pts)
      require(p != answers[i].point, ErrorKind::InvalidInput, "duplicate evaluation point");
    pts.push_back(answers[i].point);
    ys.push_back(&answers[i].value);
  }
  Matrix coef = solve_batch(vandermonde(pts, r), stack_vectors(ys));
  Matrix at_beta = vandermonde(betas, r) * coef;
  VectorBatch out;
  for (Eigen::Index l = 0; l < at_beta.rows(); ++l) out.push_back(at_beta.row(l).transpose());
  return out;
}

// ---- N-CSA ----

int ncsa_threshold(int n, int ell, int kc) { return kc * (n + ell - 1) - n + 1; }

int xsb_threshold(int n, int ell, int kc, int x, int b) {
  return kc * (n + ell - 1) + n * (x - 1) + 2 * b + 1;
}

int NCSAParams::threshold() const {
  if (x == 0 && b == 0) return ncsa_threshold(n, points.ell, points.kc);
  return xsb_threshold(n, points.ell, points.kc, x, b);
}

void NCSAParams::validate() const {
  require(n >= 1, ErrorKind::InvalidParams, "N must be positive");
  require(x >= 0 && b >= 0, ErrorKind::InvalidParams, "X and B must be nonnegative");
  points.validate_points();
  require_threshold(threshold(), points.servers());
}

NCSAParams NCSAParams::standard(const PrimeField& field, int n, int ell, int kc,
                                std::size_t servers, int x, int b, std::uint64_t noise_seed) {
  return {CSAParams::standard(field, ell, kc, servers), n, x, b, noise_seed};
}

std::vector<Fp> ncsa_residues(const NCSAParams& prm) {
  auto c = csa_residues(prm.points);
  for (auto& v : c) v = pow(v, static_cast<std::uint64_t>(prm.n - 1));
  return c;
}

VectorShare ncsa_encode(const VectorBatch& batch, const NCSAParams& prm, std::size_t s) {
  const CSAParams& pt = prm.points;
  pt.validate_points();
  require(s < pt.servers(), ErrorKind::InvalidInput, "server index out of range");
  check_vector_batch(batch, pt.batch_size());
  const Fp a = pt.samples[s];
  VectorShare out{s, {}};
  for (int l = 0; l < pt.ell; ++l) {
    Vector acc = Vector::Constant(batch[0].size(), a * Fp(0));
    for (int k = 0; k < pt.kc; ++k) {
      Fp w = one_like(a);
      for (int k2 = 0; k2 < pt.kc; ++k2)
        if (k2 != k) w *= pt.pole(l, k2) - a;
      acc += w * batch[static_cast<std::size_t>(l * pt.kc + k)];
    }
    out.parts.push_back(std::move(acc));
  }
  return out;
}

Vector ncsa_answer(const std::vector<VectorShare>& shares, const NLinearMap& map,
                   const NCSAParams& prm, std::size_t s) {
  const CSAParams& pt = prm.points;
  require(static_cast<int>(shares.size()) == map.arity(), ErrorKind::ShapeMismatch,
          "one share per map argument");
  require(s < pt.servers(), ErrorKind::InvalidInput, "server index out of range");
  for (const auto& sh : shares) {
    require(sh.server == shares[0].server, ErrorKind::InvalidInput,
            "shares come from different servers");
    require(static_cast<int>(sh.parts.size()) == pt.ell, ErrorKind::ShapeMismatch,
            "share must have ell components");
  }
  const Fp a = pt.samples[s];
  Vector y = Vector::Constant(map.output_dim, a * Fp(0));
  for (int l = 0; l < pt.ell; ++l) {
    Fp delta = one_like(a);
    for (int k = 0; k < pt.kc; ++k) delta *= pt.pole(l, k) - a;
    VectorBatch args;
    for (const auto& sh : shares) args.push_back(sh.parts[static_cast<std::size_t>(l)]);
    y += inv(delta) * map(args);
  }
  return y;
}

namespace {

VectorBatch decode_clean(const std::vector<const VectorAnswer*>& answers, const NCSAParams& prm) {
  const CSAParams& pt = prm.points;
  std::vector<Fp> samples;
  std::vector<const Vector*> ys;
  for (const auto* a : answers) {
    require(a->server < pt.servers(), ErrorKind::InvalidInput, "server index out of range");
    samples.push_back(pt.samples[a->server]);
    ys.push_back(&a->value);
  }
  Matrix x = solve_cauchy(pt.poles, ncsa_residues(prm), samples, stack_vectors(ys));
  VectorBatch out;
  for (int j = 0; j < pt.batch_size(); ++j) out.push_back(x.row(j).transpose());
  return out;
}

}  // namespace

VectorBatch ncsa_decode(const std::vector<VectorAnswer>& answers, const NCSAParams& prm) {
  require(prm.b == 0, ErrorKind::InvalidParams, "Byzantine parameters need xsb_decode");
  return xsb_decode(answers, prm).evaluations;
}

// ---- polynomial specs ----

Eigen::Index PolynomialSpec::output_dim() const {
  return terms.empty() ? 0 : terms[0].map.output_dim;
}

void PolynomialSpec::validate() const {
  require(degree >= 1, ErrorKind::InvalidParams, "polynomial degree must be positive");
  require(!terms.empty(), ErrorKind::InvalidParams, "polynomial has no terms");
  for (const auto& t : terms) {
    require(t.map.arity() == degree, ErrorKind::InvalidParams,
            "every term must have arity equal to the degree");
    require(static_cast<int>(t.slots.size()) == degree, ErrorKind::InvalidParams,
            "one slot per map argument");
    require(t.map.output_dim == output_dim(), ErrorKind::InvalidParams,
            "terms disagree on output size");
    for (std::size_t i = 0; i < t.slots.size(); ++i) {
      const int v = t.slots[i];
      if (v == kConstantSlot) continue;
      require(v >= 0 && v < static_cast<int>(variable_dims.size()), ErrorKind::InvalidParams,
              "slot names an unknown variable");
      require(variable_dims[static_cast<std::size_t>(v)] == t.map.input_dims[i],
              ErrorKind::InvalidParams, "slot size does not match the variable");
    }
  }
}

Vector poly_spec_eval(const PolynomialSpec& spec, const VectorBatch& vars) {
  spec.validate();
  require(vars.size() == spec.variable_dims.size(), ErrorKind::ShapeMismatch,
          "one value per variable");
  Vector y;
  for (const auto& t : spec.terms) {
    VectorBatch args;
    for (std::size_t i = 0; i < t.slots.size(); ++i)
      args.push_back(t.slots[i] == kConstantSlot
                         ? Vector::Constant(t.map.input_dims[i], one_like(t.weight))
                         : vars[static_cast<std::size_t>(t.slots[i])]);
    Vector v = t.weight * t.map(args);
    if (y.size() == 0)
      y = v;
    else
      y += v;
  }
  return y;
}

Vector poly_batch_eval_answer(const std::vector<VectorShare>& var_shares,
                              const PolynomialSpec& spec, const NCSAParams& prm,
                              std::size_t s) {
  spec.validate();
  require(spec.degree == prm.n, ErrorKind::InvalidParams, "spec degree must equal N");
  require(var_shares.size() == spec.variable_dims.size(), ErrorKind::ShapeMismatch,
          "one share per variable");
  const int l_total = prm.points.batch_size();
  Vector y;
  for (const auto& t : spec.terms) {
    std::vector<VectorShare> args;
    for (std::size_t i = 0; i < t.slots.size(); ++i) {
      if (t.slots[i] == kConstantSlot) {
        // the constant batch is public, so the server encodes it itself
        VectorBatch ones(static_cast<std::size_t>(l_total),
                         Vector::Constant(t.map.input_dims[i], one_like(t.weight)));
        VectorShare sh = ncsa_encode(ones, prm, s);
        sh.server = var_shares.empty() ? s : var_shares[0].server;
        args.push_back(std::move(sh));
      } else {
        args.push_back(var_shares[static_cast<std::size_t>(t.slots[i])]);
      }
    }
    Vector v = t.weight * ncsa_answer(args, t.map, prm, s);
    if (y.size() == 0)
      y = v;
    else
      y += v;
  }
  return y;
}

// ---- X-secure, B-Byzantine ----

Fp counter_uniform(const PrimeField& field, std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t q = field.modulus();
  // accept r >= 2^64 mod q so that r mod q is exactly uniform
  const std::uint64_t floor = (std::numeric_limits<std::uint64_t>::max() % q + 1) % q;
  std::uint64_t key = splitmix64(seed ^ splitmix64(counter));
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::uint64_t r = splitmix64(key + attempt);
    if (r >= floor) return field(static_cast<std::int64_t>(r % q));
  }
}

NoiseTable NoiseTable::sample(const PrimeField& field, std::uint64_t seed, int variable, int ell,
                              int x, Eigen::Index dim) {
  NoiseTable t;
  t.ell = ell;
  t.x = x;
  for (int l = 0; l < ell; ++l)
    for (int j = 0; j < x; ++j) {
      Vector z(dim);
      for (Eigen::Index c = 0; c < dim; ++c) {
        std::uint64_t ctr = splitmix64(static_cast<std::uint64_t>(variable));
        ctr = splitmix64(ctr ^ static_cast<std::uint64_t>(l));
        ctr = splitmix64(ctr ^ static_cast<std::uint64_t>(j));
        ctr = splitmix64(ctr ^ static_cast<std::uint64_t>(c));
        z(c) = counter_uniform(field, seed, ctr);
      }
      t.z.push_back(std::move(z));
    }
  return t;
}

// Delta_l (sum_k x_{l,k}/t_k + sum_j a^j z_{l,j})
VectorShare xs_encode(const VectorBatch& batch, const NCSAParams& prm, std::size_t s,
                      const NoiseTable& noise) {
  if (prm.x == 0) return ncsa_encode(batch, prm, s);
  const CSAParams& pt = prm.points;
  require(noise.ell == pt.ell && noise.x == prm.x, ErrorKind::InvalidInput,
          "noise table does not match (ell, X)");
  VectorShare out = ncsa_encode(batch, prm, s);
  const Fp a = pt.samples[s];
  for (int l = 0; l < pt.ell; ++l) {
    Fp delta = one_like(a);
    for (int k = 0; k < pt.kc; ++k) delta *= pt.pole(l, k) - a;
    Fp pw = one_like(a);
    for (int j = 0; j < prm.x; ++j) {
      require(noise.at(l, j).size() == batch[0].size(), ErrorKind::ShapeMismatch,
              "noise size does not match the variable");
      out.parts[static_cast<std::size_t>(l)] += (delta * pw) * noise.at(l, j);
      pw *= a;
    }
  }
  return out;
}

XsbResult xsb_decode(const std::vector<VectorAnswer>& answers, const NCSAParams& prm) {
  prm.points.validate_points();
  const CSAParams& pt = prm.points;
  const auto r = static_cast<std::size_t>(prm.threshold());
  require(answers.size() >= r, ErrorKind::InsufficientAnswers,
          "decode needs " + std::to_string(r) + " answers, got " + std::to_string(answers.size()));
  const auto b = static_cast<std::size_t>(prm.b);
  const std::size_t d = r - 2 * b;

  std::vector<const VectorAnswer*> used;
  for (std::size_t i = 0; i < r; ++i) {
    require(answers[i].server < pt.servers(), ErrorKind::InvalidInput, "server index out of range");
    used.push_back(&answers[i]);
  }

  XsbResult out;
  std::vector<const VectorAnswer*> clean = used;
  if (b > 0) {
    // w_i Y_i is a polynomial of degree < R - 2B in a_i
    std::vector<Fp> samples, w;
    for (const auto* a : used) {
      const Fp al = pt.samples[a->server];
      samples.push_back(al);
      Fp wi = one_like(al);
      for (const Fp& f : pt.poles) wi *= f - al;
      w.push_back(wi);
    }
    std::set<std::size_t> flagged;
    const Eigen::Index dim = used[0]->value.size();
    for (Eigen::Index c = 0; c < dim; ++c) {
      std::vector<Fp> vals;
      for (std::size_t i = 0; i < used.size(); ++i) {
        require(used[i]->value.size() == dim, ErrorKind::ShapeMismatch, "answer sizes differ");
        vals.push_back(w[i] * used[i]->value(c));
      }
      auto fix = rs_error_correct(samples, vals, d, b);
      flagged.insert(fix.error_positions.begin(), fix.error_positions.end());
    }
    if (flagged.size() > b)
      throw Error(ErrorKind::DecodingFailure, "more corrupted answers than the Byzantine budget");
    clean.clear();
    for (std::size_t i = 0; i < used.size() && clean.size() < d; ++i) {
      if (flagged.count(i))
        out.error_servers.push_back(used[i]->server);
      else
        clean.push_back(used[i]);
    }
    for (std::size_t i : flagged)
      if (std::find(out.error_servers.begin(), out.error_servers.end(), used[i]->server) ==
          out.error_servers.end())
        out.error_servers.push_back(used[i]->server);
    std::sort(out.error_servers.begin(), out.error_servers.end());
  }
  out.evaluations = decode_clean(clean, prm);
  return out;
}

// ---- systematic N-CSA ----

void SystematicNCSAParams::validate() const {
  require(code.x == 0, ErrorKind::InvalidParams,
          "systematic layout cannot be combined with X-security");
  require(code.b == 0, ErrorKind::InvalidParams, "systematic layout is defined for B = 0 only");
  require(code.n >= 1, ErrorKind::InvalidParams, "N must be positive");
  code.points.validate_points();
  require_threshold(threshold(), servers());
}

SystematicNCSAParams SystematicNCSAParams::standard(const PrimeField& field, int n, int ell,
                                                    int kc, std::size_t servers) {
  auto sp = SystematicParams::standard(field, ell, kc, servers);
  return {NCSAParams{sp.code, n, 0, 0, 0}};
}

VectorShare systematic_ncsa_encode(const VectorBatch& batch, const SystematicNCSAParams& prm,
                                   std::size_t s) {
  prm.validate();
  const auto l = static_cast<std::size_t>(prm.code.points.batch_size());
  check_vector_batch(batch, static_cast<int>(l));
  require(s < prm.servers(), ErrorKind::InvalidInput, "server index out of range");
  if (s < l) return {s, {batch[s]}};
  VectorShare sh = ncsa_encode(batch, prm.code, s - l);
  sh.server = s;
  return sh;
}

Vector systematic_ncsa_answer(const std::vector<VectorShare>& shares, const NLinearMap& map,
                              const SystematicNCSAParams& prm, std::size_t s) {
  const auto l = static_cast<std::size_t>(prm.code.points.batch_size());
  if (s >= l) return ncsa_answer(shares, map, prm.code, s - l);
  VectorBatch args;
  for (const auto& sh : shares) {
    require(sh.parts.size() == 1, ErrorKind::ShapeMismatch, "raw share has one component");
    args.push_back(sh.parts[0]);
  }
  return map(args);
}

VectorBatch systematic_ncsa_decode(const std::vector<VectorAnswer>& answers,
                                   const SystematicNCSAParams& prm) {
  prm.validate();
  const CSAParams& pt = prm.code.points;
  const auto l = static_cast<std::size_t>(pt.batch_size());
  const auto r = static_cast<std::size_t>(prm.threshold());
  require(answers.size() >= r, ErrorKind::InsufficientAnswers,
          "decode needs " + std::to_string(r) + " answers, got " + std::to_string(answers.size()));

  std::vector<const Vector*> known(l, nullptr);
  std::vector<const VectorAnswer*> coded;
  for (std::size_t i = 0; i < r; ++i) {
    require(answers[i].server < prm.servers(), ErrorKind::InvalidInput,
            "server index out of range");
    if (answers[i].server < l)
      known[answers[i].server] = &answers[i].value;
    else
      coded.push_back(&answers[i]);
  }
  VectorBatch out(l);
  std::vector<Fp> poles, res_u;
  std::vector<std::size_t> unknown;
  const auto res = ncsa_residues(prm.code);
  for (std::size_t j = 0; j < l; ++j) {
    if (known[j]) {
      out[j] = *known[j];
    } else {
      unknown.push_back(j);
      poles.push_back(pt.poles[j]);
      res_u.push_back(res[j]);
    }
  }
  if (unknown.empty()) return out;

  std::vector<Fp> samples;
  std::vector<Vector> reduced;
  for (const auto* a : coded) {
    const Fp al = pt.samples[a->server - l];
    samples.push_back(al);
    Vector y = a->value;
    for (std::size_t j = 0; j < l; ++j)
      if (known[j]) y -= (res[j] * inv(pt.poles[j] - al)) * (*known[j]);
    reduced.push_back(std::move(y));
  }
  std::vector<const Vector*> ys;
  for (const auto& y : reduced) ys.push_back(&y);
  Matrix x = solve_cauchy(poles, res_u, samples, stack_vectors(ys));
  for (std::size_t u = 0; u < unknown.size(); ++u)
    out[unknown[u]] = x.row(static_cast<Eigen::Index>(u)).transpose();
  return out;
}

}  // namespace cdc
