#include "cdc/gcsa.hpp"

#include <string>

#include "cdc/structmat.hpp"

namespace cdc {

void GCSAParams::validate() const {
  part.validate();
  points.validate_points();
  require_threshold(threshold(), points.servers());
}

GCSAParams GCSAParams::standard(const PrimeField& field, int ell, int kc, EPParams part,
                                std::size_t servers) {
  return {CSAParams::standard(field, ell, kc, servers), part};
}

int gcsa_threshold(int ell, int kc, int p, int m, int n) {
  return p * m * n * ((ell + 1) * kc - 1) + p - 1;
}

long naive_combo_threshold(long ell, long kc, long inner_servers) {
  return ell * kc * inner_servers + kc * inner_servers - 1;
}

long nested_straggler_threshold(long n1, long r1, long n2, long r2) {
  return (r1 - 1) * n2 + (n1 - r1 + 1) * (r2 - 1) + 1;
}

std::vector<Fp> psi_coeffs(const GCSAParams& prm, int l, int k) {
  const CSAParams& pt = prm.points;
  const auto rp = static_cast<std::size_t>(prm.confluence());
  Polynomial psi({pt.pole(l, k) * Fp(0) + Fp(1)});
  for (int k2 = 0; k2 < pt.kc; ++k2) {
    if (k2 == k) continue;
    Polynomial lin({pt.pole(l, k2) - pt.pole(l, k), pt.pole(l, k) * Fp(0) + Fp(1)});
    for (std::size_t i = 0; i < rp; ++i) psi = psi * lin;
  }
  return psi.coeffs();
}

// component l: sum_k prod_{k' != k} t_{k'}^R' P_{l,k}(t_k), t = f - a
CodedShare gcsa_encode_a(const MatrixBatch& batch, const GCSAParams& prm, std::size_t s) {
  const CSAParams& pt = prm.points;
  prm.part.validate();
  pt.validate_points();
  require(s < pt.servers(), ErrorKind::InvalidInput, "server index out of range");
  detail::check_batch(batch, pt.batch_size(), "A");
  const auto rp = static_cast<std::uint64_t>(prm.confluence());
  const Fp a = pt.samples[s];
  CodedShare out{s, {}};
  for (int l = 0; l < pt.ell; ++l) {
    Matrix acc;
    for (int k = 0; k < pt.kc; ++k) {
      Fp w = a * Fp(0) + Fp(1);
      for (int k2 = 0; k2 < pt.kc; ++k2)
        if (k2 != k) w *= pow(pt.pole(l, k2) - a, rp);
      Matrix term = w * ep_encode_a(batch[static_cast<std::size_t>(l * pt.kc + k)], prm.part,
                                    pt.pole(l, k) - a);
      if (k == 0)
        acc = std::move(term);
      else
        acc += term;
    }
    out.parts.push_back(std::move(acc));
  }
  return out;
}

// component l: sum_k t_k^{-R'} Q_{l,k}(t_k)
CodedShare gcsa_encode_b(const MatrixBatch& batch, const GCSAParams& prm, std::size_t s) {
  const CSAParams& pt = prm.points;
  prm.part.validate();
  pt.validate_points();
  require(s < pt.servers(), ErrorKind::InvalidInput, "server index out of range");
  detail::check_batch(batch, pt.batch_size(), "B");
  const auto rp = static_cast<std::uint64_t>(prm.confluence());
  const Fp a = pt.samples[s];
  CodedShare out{s, {}};
  for (int l = 0; l < pt.ell; ++l) {
    Matrix acc;
    for (int k = 0; k < pt.kc; ++k) {
      const Fp t = pt.pole(l, k) - a;
      Matrix term = pow(inv(t), rp) *
                    ep_encode_b(batch[static_cast<std::size_t>(l * pt.kc + k)], prm.part, t);
      if (k == 0)
        acc = std::move(term);
      else
        acc += term;
    }
    out.parts.push_back(std::move(acc));
  }
  return out;
}

Matrix gcsa_answer(const CodedShare& share_a, const CodedShare& share_b) {
  return csa_answer(share_a, share_b);
}

MatrixBatch gcsa_decode(const std::vector<ServerAnswer>& answers, const GCSAParams& prm) {
  prm.part.validate();
  const CSAParams& pt = prm.points;
  pt.validate_points();
  const auto r = static_cast<std::size_t>(prm.threshold());
  require(answers.size() >= r, ErrorKind::InsufficientAnswers,
          "GCSA decode needs " + std::to_string(r) + " answers, got " +
              std::to_string(answers.size()));
  const auto rp = static_cast<std::size_t>(prm.confluence());

  CVSpec spec{pt.poles, {}, rp};
  std::vector<const Matrix*> ys;
  for (std::size_t i = 0; i < r; ++i) {
    require(answers[i].server < pt.servers(), ErrorKind::InvalidInput,
            "server index out of range");
    spec.samples.push_back(pt.samples[answers[i].server]);
    ys.push_back(&answers[i].value);
  }
  // Toeplitz blocks take c_{l,k,0..R'-1}
  std::vector<std::vector<Fp>> res;
  for (int l = 0; l < pt.ell; ++l)
    for (int k = 0; k < pt.kc; ++k) {
      auto c = psi_coeffs(prm, l, k);
      c.resize(rp, c[0] * Fp(0));
      res.push_back(std::move(c));
    }
  Matrix x = LuSolver(scaled_cv_system(spec, res)).solve(stack_flattened(ys));

  const Eigen::Index rows = answers[0].value.rows(), cols = answers[0].value.cols();
  MatrixBatch out;
  for (int j = 0; j < pt.batch_size(); ++j) {
    std::vector<Matrix> coeffs;
    for (std::size_t i = 0; i < rp; ++i)
      coeffs.push_back(
          unflatten_row(x, static_cast<Eigen::Index>(static_cast<std::size_t>(j) * rp + i),
                        rows, cols));
    out.push_back(ep_assemble(coeffs, prm.part));
  }
  return out;
}

}  // namespace cdc
