#include "doctest.h"

#include <random>

#include "cdc/ep.hpp"
#include "support.hpp"

using namespace cdc;
using testing::for_each_subset;

namespace {

// Only block (r, c) set to ones.
Matrix block_marker(const PrimeField& f, Eigen::Index rows, Eigen::Index cols, int rb, int cb,
                    int r, int c) {
  Matrix x = f.zeros(rows, cols);
  const Eigen::Index br = rows / rb, bc = cols / cb;
  x.block(r * br, c * bc, br, bc).setConstant(f.one());
  return x;
}

// Exponent of alpha carried by a marker block after encoding.
int exponent_of(const Matrix& coded, const Fp& alpha, int max_exp) {
  for (int e = 0; e <= max_exp; ++e)
    if (coded(0, 0) == pow(alpha, static_cast<std::uint64_t>(e))) return e;
  return -1;
}

// Symbolic expansion of A~(x) B~(x): coefficient list by direct block sums.
std::vector<Matrix> expand(const Matrix& a, const Matrix& b, const EPParams& p,
                           const PrimeField& f) {
  auto ga = split_blocks(a, p.m, p.p);
  auto gb = split_blocks(b, p.p, p.n);
  std::vector<Matrix> c(p.threshold(), f.zeros(a.rows() / p.m, b.cols() / p.n));
  for (int m1 = 0; m1 < p.m; ++m1)
    for (int p1 = 0; p1 < p.p; ++p1)
      for (int p2 = 0; p2 < p.p; ++p2)
        for (int n1 = 0; n1 < p.n; ++n1) {
          int e = p1 + p.p * m1 + (p.p - 1 - p2) + p.p * p.m * n1;
          c[e] += ga[m1][p1] * gb[p2][n1];
        }
  return c;
}

}  // namespace

TEST_CASE("ep thresholds") {
  CHECK(ep_threshold({2, 2, 2}) == 9);
  CHECK(ep_threshold({1, 1, 1}) == 1);
  CHECK(ep_threshold({1, 3, 4}) == 12);
  CHECK(ep_threshold({5, 1, 1}) == 9);
}

TEST_CASE("single block encodes to itself") {
  PrimeField f;
  std::mt19937_64 rng(21);
  Matrix a = f.random(3, 4, rng), b = f.random(4, 2, rng);
  EPParams p{1, 1, 1};
  CHECK(ep_encode_a(a, p, f(7)) == a);
  CHECK(ep_encode_b(b, p, f(9)) == b);
}

TEST_CASE("2x2x2 exponent layout") {
  PrimeField f;
  EPParams p{2, 2, 2};
  Fp alpha = f(3);
  int ea[2][2], eb[2][2];
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      ea[r][c] = exponent_of(ep_encode_a(block_marker(f, 4, 4, 2, 2, r, c), p, alpha), alpha, 8);
      eb[r][c] = exponent_of(ep_encode_b(block_marker(f, 4, 4, 2, 2, r, c), p, alpha), alpha, 8);
    }
  CHECK(ea[0][0] == 0);
  CHECK(ea[0][1] == 1);
  CHECK(ea[1][0] == 2);
  CHECK(ea[1][1] == 3);
  CHECK(eb[0][0] == 1);
  CHECK(eb[0][1] == 5);
  CHECK(eb[1][0] == 0);
  CHECK(eb[1][1] == 4);
}

TEST_CASE("encoders match term by term evaluation") {
  PrimeField f;
  std::mt19937_64 rng(22);
  for (EPParams p : {EPParams{2, 2, 2}, EPParams{1, 2, 3}, EPParams{3, 1, 2}}) {
    Matrix a = f.random(2 * p.m, 2 * p.p, rng), b = f.random(2 * p.p, 2 * p.n, rng);
    Fp x = f.random(rng);
    auto ga = split_blocks(a, p.m, p.p);
    auto gb = split_blocks(b, p.p, p.n);
    Matrix na = f.zeros(2, 2), nb = f.zeros(2, 2);
    for (int m1 = 0; m1 < p.m; ++m1)
      for (int p1 = 0; p1 < p.p; ++p1) na += pow(x, p1 + p.p * m1) * ga[m1][p1];
    for (int p1 = 0; p1 < p.p; ++p1)
      for (int n1 = 0; n1 < p.n; ++n1) nb += pow(x, p.p - 1 - p1 + p.p * p.m * n1) * gb[p1][n1];
    CHECK(ep_encode_a(a, p, x) == na);
    CHECK(ep_encode_b(b, p, x) == nb);
  }
}

TEST_CASE("answer equals the coefficient expansion") {
  PrimeField f;
  std::mt19937_64 rng(23);
  EPParams p{2, 2, 2};
  Matrix a = f.random(4, 4, rng), b = f.random(4, 4, rng);
  auto coeffs = expand(a, b, p, f);
  CHECK(coeffs.size() == 9u);
  for (int s = 0; s < 5; ++s) {
    Fp x = f.random(rng);
    Matrix y = ep_answer(ep_encode_a(a, p, x), ep_encode_b(b, p, x));
    Matrix direct = f.zeros(2, 2);
    for (int i = 0; i < 9; ++i) direct += pow(x, i) * coeffs[i];
    CHECK(y == direct);
  }
  // identity-coded inputs: single block product
  CHECK(ep_answer(a, b) == a * b);
  CHECK_THROWS_AS(ep_answer(a, f.zeros(3, 2)), Error);
}

TEST_CASE("desired blocks sit at C2 C4 C6 C8") {
  PrimeField f;
  std::mt19937_64 rng(24);
  EPParams p{2, 2, 2};
  Matrix a = f.random(4, 4, rng), b = f.random(4, 4, rng);
  auto coeffs = expand(a, b, p, f);
  auto gc = split_blocks(a * b, 2, 2);
  CHECK(coeffs[1] == gc[0][0]);
  CHECK(coeffs[3] == gc[1][0]);
  CHECK(coeffs[5] == gc[0][1]);
  CHECK(coeffs[7] == gc[1][1]);
  CHECK(ep_assemble(coeffs, p) == a * b);
}

TEST_CASE("top coefficient only sees A column p and B row 1") {
  PrimeField f;
  std::mt19937_64 rng(25);
  EPParams p{2, 2, 2};
  Matrix a = f.random(4, 4, rng), b = f.random(4, 4, rng);
  Matrix a0 = a;
  a0.rightCols(2).setConstant(f.zero());
  CHECK(expand(a0, b, p, f)[8] == f.zeros(2, 2));
  Matrix b0 = b;
  b0.topRows(2).setConstant(f.zero());
  CHECK(expand(a, b0, p, f)[8] == f.zeros(2, 2));
  CHECK(expand(a, b, p, f)[8] != f.zeros(2, 2));
}

TEST_CASE("single answer decodes verbatim") {
  PrimeField f;
  std::mt19937_64 rng(26);
  Matrix y = f.random(3, 3, rng);
  CHECK(ep_decode({{f(5), y}}, {1, 1, 1}) == y);
}

TEST_CASE("decode every 9-subset of 12 servers") {
  PrimeField f;
  std::mt19937_64 rng(27);
  EPParams p{2, 2, 2};
  Matrix a = f.random(4, 4, rng), b = f.random(4, 4, rng);
  std::vector<PointAnswer> all;
  for (int s = 0; s < 12; ++s) {
    Fp x = f(s + 1);
    all.push_back({x, ep_answer(ep_encode_a(a, p, x), ep_encode_b(b, p, x))});
  }
  int n = 0;
  for_each_subset(12, 9, [&](const std::vector<std::size_t>& sub) {
    std::vector<PointAnswer> pick;
    for (auto i : sub) pick.push_back(all[i]);
    CHECK(ep_decode(pick, p) == a * b);
    ++n;
  });
  CHECK(n == 220);
}

TEST_CASE("decode all small triples over every subset") {
  PrimeField f;
  std::mt19937_64 rng(28);
  for (int pp = 1; pp <= 9; ++pp)
    for (int m = 1; m <= 9; ++m)
      for (int n = 1; n <= 9; ++n) {
        EPParams p{pp, m, n};
        if (p.threshold() > 9) continue;
        const int s_count = p.threshold() + 3;
        Matrix a = f.random(m, pp, rng), b = f.random(pp, n, rng);
        std::vector<PointAnswer> all;
        for (int s = 0; s < s_count; ++s) {
          Fp x = f(100 + s);
          all.push_back({x, ep_answer(ep_encode_a(a, p, x), ep_encode_b(b, p, x))});
        }
        bool ok = true;
        for_each_subset(all.size(), p.threshold(), [&](const std::vector<std::size_t>& sub) {
          std::vector<PointAnswer> pick;
          for (auto i : sub) pick.push_back(all[i]);
          ok = ok && ep_decode(pick, p) == a * b;
        });
        CHECK_MESSAGE(ok, "p=", pp, " m=", m, " n=", n);
      }
}

TEST_CASE("decode errors") {
  PrimeField f;
  EPParams p{2, 2, 2};
  std::vector<PointAnswer> few(8, PointAnswer{f(1), f.zeros(1, 1)});
  for (int i = 0; i < 8; ++i) few[i].point = f(i + 1);
  CHECK_THROWS_AS(ep_decode(few, p), Error);
  auto dup = few;
  dup.push_back({f(1), f.zeros(1, 1)});
  CHECK_THROWS_AS(ep_decode(dup, p), Error);
  CHECK_THROWS_AS(ep_encode_a(f.zeros(3, 4), p, f(1)), Error);
}
