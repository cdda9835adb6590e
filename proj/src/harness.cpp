#include "cdc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <exception>
#include <thread>

#include "cdc/structmat.hpp"

namespace cdc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t elements(const Matrix& m) { return static_cast<std::uint64_t>(m.size()); }
std::uint64_t elements(const Vector& v) { return static_cast<std::uint64_t>(v.size()); }
template <class T>
std::uint64_t elements(const std::vector<T>& xs) {
  std::uint64_t n = 0;
  for (const auto& x : xs) n += elements(x);
  return n;
}

// Runs answer_of(s) for every responsive s, counting multiplications per server.
template <class F>
auto compute_answers(const std::vector<std::size_t>& responsive, std::size_t servers,
                     F answer_of, unsigned threads, std::vector<std::uint64_t>& mults) {
  using Answer = decltype(answer_of(std::size_t{}));
  std::vector<Answer> out(responsive.size());
  mults.assign(servers, 0);
  auto work = [&](std::size_t i) {
    MulCounter mc;
    out[i] = answer_of(responsive[i]);
    mults[responsive[i]] = mc.count();
  };
  const std::size_t n_threads = std::min<std::size_t>(std::max(1u, threads), responsive.size());
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < responsive.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < responsive.size();) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }

void finish_measured(CostReport& r, const std::vector<std::uint64_t>& upload_elems,
                     const std::vector<std::uint64_t>& raw_sizes, std::uint64_t download_elems,
                     std::uint64_t output_size, int batch) {
  r.upload_elements = upload_elems;
  r.upload.clear();
  for (std::size_t v = 0; v < upload_elems.size(); ++v)
    r.upload.push_back(ratio(static_cast<std::int64_t>(upload_elems[v]),
                             static_cast<std::int64_t>(raw_sizes[v]) * batch));
  r.download_elements = download_elems;
  r.download = ratio(static_cast<std::int64_t>(download_elems),
                     static_cast<std::int64_t>(output_size) * batch);
  const std::uint64_t peak =
      r.server_mults.empty() ? 0 : *std::max_element(r.server_mults.begin(), r.server_mults.end());
  r.mults_per_item = ratio(static_cast<std::int64_t>(peak), batch);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

// ---- parameters ----

void EPSetup::validate() const {
  part.validate();
  require(batch >= 1, ErrorKind::InvalidParams, "batch must be positive");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      require(samples[i] != samples[j], ErrorKind::InvalidParams,
              "evaluation points must be pairwise distinct");
  require_threshold(threshold(), servers());
}

EPSetup EPSetup::standard(const PrimeField& field, EPParams part, int batch, std::size_t servers) {
  require(servers < field.modulus(), ErrorKind::InvalidParams, "field too small: need S < q");
  EPSetup e{part, {}, batch};
  for (std::size_t s = 0; s < servers; ++s)
    e.samples.push_back(field(static_cast<std::int64_t>(s + 1)));
  return e;
}

std::string scheme_name(const CDBMMParams& p) {
  return std::visit(overloaded{[](const EPSetup&) { return std::string("EP"); },
                               [](const CSAParams&) { return std::string("CSA"); },
                               [](const SystematicParams&) { return std::string("CSA-systematic"); },
                               [](const GCSAParams&) { return std::string("GCSA"); }},
                    p);
}

std::string scheme_name(const NLinearParams& p) {
  return std::visit(
      overloaded{[](const LCCParams&) { return std::string("LCC"); },
                 [](const NCSAParams&) { return std::string("N-CSA"); },
                 [](const SystematicNCSAParams&) { return std::string("N-CSA-systematic"); }},
      p);
}

std::size_t server_count(const CDBMMParams& p) {
  return std::visit(overloaded{[](const EPSetup& e) { return e.servers(); },
                               [](const CSAParams& c) { return c.servers(); },
                               [](const SystematicParams& c) { return c.servers(); },
                               [](const GCSAParams& g) { return g.points.servers(); }},
                    p);
}

std::size_t server_count(const NLinearParams& p) {
  return std::visit(overloaded{[](const LCCParams& c) { return c.samples.size(); },
                               [](const NCSAParams& c) { return c.points.servers(); },
                               [](const SystematicNCSAParams& c) { return c.servers(); }},
                    p);
}

int batch_size(const CDBMMParams& p) {
  return std::visit(overloaded{[](const EPSetup& e) { return e.batch; },
                               [](const CSAParams& c) { return c.batch_size(); },
                               [](const SystematicParams& c) { return c.code.batch_size(); },
                               [](const GCSAParams& g) { return g.points.batch_size(); }},
                    p);
}

int batch_size(const NLinearParams& p) {
  return std::visit(
      overloaded{[](const LCCParams& c) { return c.batch_size(); },
                 [](const NCSAParams& c) { return c.points.batch_size(); },
                 [](const SystematicNCSAParams& c) { return c.code.points.batch_size(); }},
      p);
}

std::vector<std::size_t> StragglerModel::select(std::size_t servers) const {
  std::vector<std::size_t> out;
  if (responsive) {
    out = *responsive;
    std::sort(out.begin(), out.end());
    require(std::adjacent_find(out.begin(), out.end()) == out.end(), ErrorKind::InvalidParams,
            "responsive set lists a server twice");
    for (auto s : out)
      require(s < servers, ErrorKind::InvalidParams,
              "responsive server " + std::to_string(s) + " out of range");
    return out;
  }
  out.resize(servers);
  for (std::size_t s = 0; s < servers; ++s) out[s] = s;
  if (count == 0) return out;
  require(count <= servers, ErrorKind::InvalidParams, "more responsive servers than servers");
  std::mt19937_64 rng(seed);
  for (std::size_t i = servers; i > 1; --i) std::swap(out[i - 1], out[rng() % i]);
  out.resize(count);
  std::sort(out.begin(), out.end());
  return out;
}

ByzantineModel ByzantineModel::additive(std::vector<std::size_t> corrupted, std::uint64_t seed) {
  ByzantineModel b;
  b.corrupted = std::move(corrupted);
  b.forge = [seed](std::size_t server, const Vector& honest) {
    Vector v = honest;
    for (Eigen::Index c = 0; c < v.size(); ++c) {
      const std::uint64_t q = v(c).modulus();
      const std::uint64_t h = splitmix64(splitmix64(seed ^ server) ^ static_cast<std::uint64_t>(c));
      v(c) += Fp(static_cast<std::int64_t>(1 + h % (q - 1)), q);
    }
    return v;
  };
  return b;
}

// ---- closed forms ----

Rational ncsa_download(int n, int ell, int kc) {
  return ratio(ncsa_threshold(n, ell, kc), static_cast<std::int64_t>(ell) * kc);
}

Rational ncsa_download_split(int n, int ell, int kc) {
  return Rational(1) + ratio(n - 1, ell) * ratio(kc - 1, kc);
}

CostReport theoretical_costs(const CDBMMParams& params) {
  CostReport r;
  r.scheme = scheme_name(params);
  const auto s = static_cast<std::int64_t>(server_count(params));
  std::visit(
      overloaded{
          [&](const EPSetup& e) {
            const auto& pt = e.part;
            r.threshold = pt.threshold();
            r.upload = {ratio(s, pt.p * pt.m), ratio(s, pt.p * pt.n)};
            r.download = ratio(r.threshold, pt.m * pt.n);
          },
          [&](const CSAParams& c) {
            r.threshold = c.threshold();
            r.upload = {ratio(s, c.kc), ratio(s, c.kc)};
            r.download = ratio(r.threshold, c.batch_size());
          },
          [&](const SystematicParams& c) {
            const std::int64_t l = c.code.batch_size();
            r.threshold = c.threshold();
            const Rational u = ratio(l + (s - l) * c.code.ell, l);
            r.upload = {u, u};
            r.download = ratio(r.threshold, l);
          },
          [&](const GCSAParams& g) {
            const auto& pt = g.part;
            r.threshold = g.threshold();
            r.upload = {ratio(s, static_cast<std::int64_t>(g.points.kc) * pt.p * pt.m),
                        ratio(s, static_cast<std::int64_t>(g.points.kc) * pt.p * pt.n)};
            r.download =
                ratio(r.threshold, static_cast<std::int64_t>(pt.m) * pt.n * g.points.batch_size());
          }},
      params);
  return r;
}

CostReport theoretical_costs(const NLinearParams& params, std::size_t variables) {
  CostReport r;
  r.scheme = scheme_name(params);
  const auto s = static_cast<std::int64_t>(server_count(params));
  Rational u;
  std::visit(overloaded{[&](const LCCParams& c) {
                          r.threshold = c.threshold();
                          u = ratio(s, c.batch_size());
                          r.download = ratio(r.threshold, c.batch_size());
                        },
                        [&](const NCSAParams& c) {
                          r.threshold = c.threshold();
                          u = ratio(s, c.points.kc);
                          r.download = ratio(r.threshold, c.points.batch_size());
                        },
                        [&](const SystematicNCSAParams& c) {
                          const std::int64_t l = c.code.points.batch_size();
                          r.threshold = c.threshold();
                          u = ratio(l + (s - l) * c.code.points.ell, l);
                          r.download = ratio(r.threshold, l);
                        }},
             params);
  r.upload.assign(variables, u);
  return r;
}

// ---- matrix products ----

namespace {

void validate(const CDBMMParams& params) {
  std::visit([](const auto& p) { p.validate(); }, params);
}

}  // namespace

CDBMMResult run_cdbmm(const CDBMMParams& params, const MatrixBatch& a, const MatrixBatch& b,
                      const StragglerModel& straggler, const RunOptions& options) {
  validate(params);
  const int l_total = batch_size(params);
  detail::check_batch(a, l_total, "A");
  detail::check_batch(b, l_total, "B");
  require(a[0].cols() == b[0].rows(), ErrorKind::ShapeMismatch, "A and B are not conformable");
  const std::size_t servers = server_count(params);
  const auto responsive = straggler.select(servers);
  const auto r = static_cast<std::size_t>(theoretical_costs(params).threshold);

  CDBMMResult res;
  res.report = theoretical_costs(params);
  std::uint64_t up_a = 0, up_b = 0, down = 0;
  const std::size_t used = std::min(r, responsive.size());
  res.report.used_servers.assign(responsive.begin(), responsive.begin() + static_cast<long>(used));

  std::visit(
      overloaded{
          [&](const EPSetup& e) {
            e.part.check_dims(a[0].rows(), a[0].cols(), b[0].cols());
            std::vector<MatrixBatch> sa(servers), sb(servers);
            for (std::size_t s = 0; s < servers; ++s)
              for (int l = 0; l < l_total; ++l) {
                sa[s].push_back(ep_encode_a(a[l], e.part, e.samples[s]));
                sb[s].push_back(ep_encode_b(b[l], e.part, e.samples[s]));
              }
            for (std::size_t s = 0; s < servers; ++s) {
              up_a += elements(sa[s]);
              up_b += elements(sb[s]);
            }
            auto ans = compute_answers(
                responsive, servers,
                [&](std::size_t s) {
                  MatrixBatch y;
                  for (int l = 0; l < l_total; ++l) y.push_back(ep_answer(sa[s][l], sb[s][l]));
                  return y;
                },
                options.threads, res.report.server_mults);
            for (std::size_t i = 0; i < used; ++i) down += elements(ans[i]);
            for (int l = 0; l < l_total; ++l) {
              std::vector<PointAnswer> pa;
              for (std::size_t i = 0; i < ans.size(); ++i)
                pa.push_back({e.samples[responsive[i]], ans[i][l]});
              res.products.push_back(ep_decode(pa, e.part));
            }
          },
          [&](const CSAParams& c) {
            std::vector<CodedShare> sa, sb;
            for (std::size_t s = 0; s < servers; ++s) {
              sa.push_back(csa_encode_a(a, c, s));
              sb.push_back(csa_encode_b(b, c, s));
              up_a += elements(sa.back().parts);
              up_b += elements(sb.back().parts);
            }
            auto ans = compute_answers(
                responsive, servers, [&](std::size_t s) { return csa_answer(sa[s], sb[s]); },
                options.threads, res.report.server_mults);
            std::vector<ServerAnswer> sv;
            for (std::size_t i = 0; i < ans.size(); ++i) sv.push_back({responsive[i], ans[i]});
            for (std::size_t i = 0; i < used; ++i) down += elements(ans[i]);
            res.products = csa_decode(sv, c);
          },
          [&](const SystematicParams& c) {
            auto shares = systematic_encode(a, b, c);
            for (const auto& sp : shares) {
              up_a += elements(sp.a.parts);
              up_b += elements(sp.b.parts);
            }
            auto ans = compute_answers(
                responsive, servers,
                [&](std::size_t s) { return csa_answer(shares[s].a, shares[s].b); },
                options.threads, res.report.server_mults);
            std::vector<ServerAnswer> sv;
            for (std::size_t i = 0; i < ans.size(); ++i) sv.push_back({responsive[i], ans[i]});
            for (std::size_t i = 0; i < used; ++i) down += elements(ans[i]);
            res.products = systematic_decode(sv, c);
          },
          [&](const GCSAParams& g) {
            g.part.check_dims(a[0].rows(), a[0].cols(), b[0].cols());
            std::vector<CodedShare> sa, sb;
            for (std::size_t s = 0; s < servers; ++s) {
              sa.push_back(gcsa_encode_a(a, g, s));
              sb.push_back(gcsa_encode_b(b, g, s));
              up_a += elements(sa.back().parts);
              up_b += elements(sb.back().parts);
            }
            auto ans = compute_answers(
                responsive, servers, [&](std::size_t s) { return gcsa_answer(sa[s], sb[s]); },
                options.threads, res.report.server_mults);
            std::vector<ServerAnswer> sv;
            for (std::size_t i = 0; i < ans.size(); ++i) sv.push_back({responsive[i], ans[i]});
            for (std::size_t i = 0; i < used; ++i) down += elements(ans[i]);
            res.products = gcsa_decode(sv, g);
          }},
      params);

  finish_measured(res.report, {up_a, up_b}, {elements(a[0]), elements(b[0])}, down,
                  static_cast<std::uint64_t>(a[0].rows() * b[0].cols()), l_total);
  return res;
}

// ---- N-linear ----

PolynomialSpec single_term(const NLinearMap& map, const Fp& weight) {
  PolynomialSpec spec;
  spec.degree = map.arity();
  spec.variable_dims = map.input_dims;
  std::vector<int> slots(static_cast<std::size_t>(map.arity()));
  for (int i = 0; i < map.arity(); ++i) slots[static_cast<std::size_t>(i)] = i;
  spec.terms.push_back({weight, map, slots});
  return spec;
}

NLinearResult run_nlinear(const NLinearParams& params, const NLinearMap& map,
                          const std::vector<VectorBatch>& vars, const StragglerModel& straggler,
                          const ByzantineModel& byzantine, const RunOptions& options) {
  require(!vars.empty() && !vars[0].empty(), ErrorKind::InvalidInput, "no variables");
  return run_nlinear(params, single_term(map, vars[0][0](0) * Fp(0) + Fp(1)), vars, straggler,
                     byzantine, options);
}

NLinearResult run_nlinear(const NLinearParams& params, const PolynomialSpec& spec,
                          const std::vector<VectorBatch>& vars, const StragglerModel& straggler,
                          const ByzantineModel& byzantine, const RunOptions& options) {
  std::visit([](const auto& p) { p.validate(); }, params);
  spec.validate();
  const int l_total = batch_size(params);
  require(vars.size() == spec.variable_dims.size(), ErrorKind::ShapeMismatch,
          "one batch per variable");
  std::vector<std::uint64_t> raw_sizes;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    require(static_cast<int>(vars[v].size()) == l_total, ErrorKind::ShapeMismatch,
            "variable batch must hold " + std::to_string(l_total) + " vectors");
    for (const auto& x : vars[v])
      require(x.size() == spec.variable_dims[v], ErrorKind::ShapeMismatch,
              "variable " + std::to_string(v) + " has the wrong size");
    raw_sizes.push_back(static_cast<std::uint64_t>(spec.variable_dims[v]));
  }
  const std::size_t servers = server_count(params);
  const auto responsive = straggler.select(servers);

  const bool has_budget =
      std::holds_alternative<NCSAParams>(params) && std::get<NCSAParams>(params).b > 0;
  if (!byzantine.empty()) {
    require(has_budget, ErrorKind::InvalidParams, "Byzantine servers need an N-CSA code with B >= 1");
    require(static_cast<bool>(byzantine.forge), ErrorKind::InvalidParams, "no forgery function");
    for (auto s : byzantine.corrupted)
      require(std::binary_search(responsive.begin(), responsive.end(), s),
              ErrorKind::InvalidParams, "corrupted servers must be responsive");
  }

  NLinearResult res;
  res.report = theoretical_costs(params, vars.size());
  const auto r = static_cast<std::size_t>(res.report.threshold);
  const std::size_t used = std::min(r, responsive.size());
  res.report.used_servers.assign(responsive.begin(), responsive.begin() + static_cast<long>(used));
  std::vector<std::uint64_t> up(vars.size(), 0);

  // shares[s][v]
  std::vector<std::vector<VectorShare>> shares(servers);
  std::function<Vector(std::size_t)> answer_of;
  std::function<XsbResult(const std::vector<VectorAnswer>&)> decode;

  std::visit(
      overloaded{
          [&](const LCCParams& c) {
            require(spec.degree == c.n, ErrorKind::InvalidParams, "spec degree must equal N");
            for (std::size_t s = 0; s < servers; ++s)
              for (const auto& v : vars)
                shares[s].push_back({s, {lcc_encode(v, c.betas, c.samples[s])}});
            answer_of = [&](std::size_t s) {
              VectorBatch x;
              for (const auto& sh : shares[s]) x.push_back(sh.parts[0]);
              return poly_spec_eval(spec, x);
            };
            decode = [&](const std::vector<VectorAnswer>& ans) {
              std::vector<PointVector> pv;
              for (const auto& a : ans) pv.push_back({c.samples[a.server], a.value});
              return XsbResult{lcc_decode(pv, c.betas, c.n), {}};
            };
          },
          [&](const NCSAParams& c) {
            const PrimeField field(c.points.poles.at(0).modulus());
            for (std::size_t v = 0; v < vars.size(); ++v) {
              NoiseTable noise;
              if (c.x > 0)
                noise = NoiseTable::sample(field, c.noise_seed, static_cast<int>(v), c.points.ell,
                                           c.x, spec.variable_dims[v]);
              for (std::size_t s = 0; s < servers; ++s)
                shares[s].push_back(xs_encode(vars[v], c, s, noise));
            }
            answer_of = [&](std::size_t s) { return poly_batch_eval_answer(shares[s], spec, c, s); };
            decode = [&](const std::vector<VectorAnswer>& ans) { return xsb_decode(ans, c); };
          },
          [&](const SystematicNCSAParams& c) {
            require(spec.degree == c.code.n, ErrorKind::InvalidParams, "spec degree must equal N");
            for (std::size_t s = 0; s < servers; ++s)
              for (const auto& v : vars) shares[s].push_back(systematic_ncsa_encode(v, c, s));
            const auto l = static_cast<std::size_t>(l_total);
            answer_of = [&, l](std::size_t s) {
              if (s >= l) return poly_batch_eval_answer(shares[s], spec, c.code, s - l);
              VectorBatch x;
              for (const auto& sh : shares[s]) x.push_back(sh.parts[0]);
              return poly_spec_eval(spec, x);
            };
            decode = [&](const std::vector<VectorAnswer>& ans) {
              return XsbResult{systematic_ncsa_decode(ans, c), {}};
            };
          }},
      params);

  for (std::size_t s = 0; s < servers; ++s)
    for (std::size_t v = 0; v < vars.size(); ++v) up[v] += elements(shares[s][v].parts);

  auto ans = compute_answers(responsive, servers, answer_of, options.threads,
                             res.report.server_mults);
  std::vector<VectorAnswer> va;
  for (std::size_t i = 0; i < ans.size(); ++i) va.push_back({responsive[i], ans[i]});
  for (auto s : byzantine.corrupted) {
    auto it = std::lower_bound(responsive.begin(), responsive.end(), s);
    auto& slot = va[static_cast<std::size_t>(it - responsive.begin())];
    slot.value = byzantine.forge(s, slot.value);
  }
  std::uint64_t down = 0;
  for (std::size_t i = 0; i < used; ++i) down += elements(va[i].value);

  auto x = decode(va);
  res.evaluations = std::move(x.evaluations);
  res.report.error_servers = std::move(x.error_servers);
  finish_measured(res.report, up, raw_sizes, down, static_cast<std::uint64_t>(spec.output_dim()),
                  l_total);
  return res;
}

}  // namespace cdc
