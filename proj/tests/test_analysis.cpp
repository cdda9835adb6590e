#include "doctest.h"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "cdc/analysis.hpp"
#include "support.hpp"

using namespace cdc;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CDC_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

Rational worst(const HullPoint& h) { return std::max(h.upload, h.download); }

// closed forms written out independently of the harness
Rational csa_u(long s, int kc) { return Rational(s, kc); }
Rational csa_d(int ell, int kc) { return Rational((ell + 1) * kc - 1, ell * kc); }

bool hull_is_valid(const std::vector<HullPoint>& hull, const std::vector<HullPoint>& all) {
  for (std::size_t i = 1; i < hull.size(); ++i)
    if (!(hull[i - 1].upload < hull[i].upload && hull[i - 1].download > hull[i].download))
      return false;
  for (std::size_t i = 2; i < hull.size(); ++i) {
    const auto &a = hull[i - 2], &b = hull[i - 1], &c = hull[i];
    if ((b.upload - a.upload) * (c.download - a.download) -
            (b.download - a.download) * (c.upload - a.upload) <=
        Rational(0))
      return false;
  }
  // nothing lies strictly below the envelope
  for (const auto& p : all) {
    if (p.upload < hull.front().upload) return false;
    if (p.upload >= hull.back().upload) {
      if (p.download < hull.back().download) return false;
      continue;
    }
    for (std::size_t i = 1; i < hull.size(); ++i)
      if (p.upload < hull[i].upload) {
        const auto &a = hull[i - 1], &b = hull[i];
        const Rational env =
            a.download + (b.download - a.download) * (p.upload - a.upload) / (b.upload - a.upload);
        if (p.download < env) return false;
        break;
      }
  }
  return true;
}

}  // namespace

TEST_CASE("tuple costs match the closed forms") {
  for (int ell = 1; ell <= 4; ++ell)
    for (int kc = 1; kc <= 4; ++kc) {
      auto h = tuple_costs(Family::CSA, {1, 1, 1, ell, kc}, 40);
      CHECK(h.upload == csa_u(40, kc));
      CHECK(h.download == csa_d(ell, kc));
    }
  auto e = tuple_costs(Family::EP, {2, 3, 1, 1, 1}, 30);
  CHECK(e.upload == std::max(Rational(30, 6), Rational(30, 2)));
  CHECK(e.download == Rational(2 * 3 + 1, 3));
  auto g = tuple_costs(Family::GCSA, {2, 1, 2, 2, 3}, 100);
  CHECK(g.upload == Rational(100, 3 * 2 * 1));
  CHECK(g.download == Rational(4 * (3 * 3 - 1) + 1, 2 * 2 * 3));
}

TEST_CASE("enumeration respects the threshold bound") {
  for (auto fam : {Family::EP, Family::CSA, Family::GCSA}) {
    auto all = enumerate_tuples(fam, 40, 20);
    CHECK(!all.empty());
    for (const auto& h : all) {
      const auto& t = h.witness;
      CHECK(gcsa_threshold(t.ell, t.kc, t.p, t.m, t.n) <= 20);
      if (fam == Family::CSA) CHECK(t.p * t.m * t.n == 1);
      if (fam == Family::EP) CHECK(t.ell * t.kc == 1);
    }
  }
  // brute-force count of CSA pairs with (ell+1)kc - 1 <= 20
  int count = 0;
  for (int ell = 1; ell <= 20; ++ell)
    for (int kc = 1; kc <= 20; ++kc)
      if ((ell + 1) * kc - 1 <= 20) ++count;
  CHECK(enumerate_tuples(Family::CSA, 40, 20).size() == static_cast<std::size_t>(count));
  CHECK_THROWS_AS(enumerate_tuples(Family::CSA, 20, 20), Error);
}

TEST_CASE("hulls are convex lower envelopes") {
  for (auto [fam, s, r] : {std::tuple{Family::EP, 30L, 25L}, std::tuple{Family::CSA, 30L, 25L},
                           std::tuple{Family::GCSA, 30L, 25L}, std::tuple{Family::CSA, 300L, 250L},
                           std::tuple{Family::EP, 300L, 250L}}) {
    auto all = enumerate_tuples(fam, s, r);
    auto hull = pareto_hull(fam, s, r);
    CHECK(hull_is_valid(hull, all));
    for (const auto& h : hull) {
      auto again = tuple_costs(fam, h.witness, s);
      CHECK(again.upload == h.upload);
      CHECK(again.download == h.download);
    }
  }
}

TEST_CASE("csa hull at S=30, R<=25") {
  auto hull = pareto_hull(Family::CSA, 30, 25);
  bool found = false;
  for (const auto& h : enumerate_tuples(Family::CSA, 30, 25))
    if (h.witness.ell == 1 && h.witness.kc == 13)
      found = h.upload == Rational(30, 13) && h.download == Rational(25, 13);
  CHECK(found);
  CHECK(hull.front().upload == Rational(30, 13));
}

TEST_CASE("gcsa with pmn = 1 is csa") {
  for (auto [s, r] : {std::pair{30L, 25L}, std::pair{300L, 250L}}) {
    auto g = pareto_hull(Family::GCSA, s, r, 1);
    auto c = pareto_hull(Family::CSA, s, r);
    REQUIRE(g.size() == c.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g[i].upload == c[i].upload);
      CHECK(g[i].download == c[i].download);
      CHECK(g[i].witness == c[i].witness);
    }
  }
}

TEST_CASE("csa beats ep on max(U, D)") {
  for (auto [s, r] : {std::pair{30L, 25L}, std::pair{300L, 250L}}) {
    auto e = min_max_cost(Family::EP, s, r);
    auto c = min_max_cost(Family::CSA, s, r);
    REQUIRE(e);
    REQUIRE(c);
    CHECK(worst(*c) < worst(*e));
    for (const auto& h : pareto_hull(Family::EP, s, r)) CHECK(worst(*c) <= worst(h));
  }
}

TEST_CASE("hull CSVs match the snapshots") {
  CHECK(hull_csv(Family::EP, pareto_hull(Family::EP, 30, 25)) == slurp("hull_ep_30_25.csv"));
  CHECK(hull_csv(Family::CSA, pareto_hull(Family::CSA, 30, 25)) == slurp("hull_csa_30_25.csv"));
  CHECK(hull_csv(Family::GCSA, pareto_hull(Family::GCSA, 300, 250, 27)) ==
        slurp("hull_gcsa_300_250_pmn27.csv"));
}

TEST_CASE("lower hull of a hand-made set") {
  auto pt = [](int u, int d) { return HullPoint{Rational(u), Rational(d), {}}; };
  auto h = lower_hull({pt(1, 10), pt(2, 6), pt(3, 5), pt(4, 2), pt(5, 2), pt(6, 1), pt(2, 9)});
  // (3,5) sits above the chord from (2,6) to (4,2); (5,2) is dominated
  REQUIRE(h.size() == 4);
  CHECK(h[0].upload == Rational(1));
  CHECK(h[1].upload == Rational(2));
  CHECK(h[2].upload == Rational(4));
  CHECK(h[3].upload == Rational(6));
}

TEST_CASE("ep latency bound matches its closed expression") {
  for (long j : {100L, 1000L})
    for (double k = 0.5; k <= 25; k += 0.5) {
      const double x = k * j * 0.75 / 2;
      const double fig = j *
                         (std::pow(x, 2.0 / 3) * 2 * std::pow(x, 1.0 / 3) / 0.75 +
                          2 * std::pow(x, 1.0 / 3) / 0.75 - 1) /
                         std::pow(x, 2.0 / 3);
      CHECK(std::abs(ep_latency_lower(j, 0.75, k) - fig) <= 1e-9 * fig);
    }
}

TEST_CASE("gcsa latency search never exceeds the ceiling expression") {
  for (long j : {100L, 1000L})
    for (double k = 1.5; k <= 25; k += 0.5) {
      const double m = std::ceil(std::cbrt(k * 0.75 / 2));
      const double p = std::ceil(2 * m / 0.75);
      const double fig = (m * m * p * (2.0 * j - 1) + p - 1) / m / m;
      auto pt = gcsa_latency_point(j, 0.75, k);
      CHECK(pt.gcsa_upper <= fig + 1e-9 * fig);
      REQUIRE(pt.witness);
      CHECK(pt.witness->p * pt.witness->m * pt.witness->n >= k);
    }
  CHECK(gcsa_latency_point(100, 0.75, 0.5).gcsa_upper == 2 * std::ceil(199 / 0.75));
  CHECK(!gcsa_latency_point(100, 0.75, 0.5).witness);
}

TEST_CASE("gcsa beats the ep bound for J = 100") {
  for (int k = 2; k <= 25; ++k) {
    auto pt = latency_point(100, 0.75, k);
    CHECK(pt.gcsa_upper < pt.ep_lower);
  }
  auto a = latency_point(100, 0.75, 10), b = latency_point(1000, 0.75, 10);
  CHECK(b.ep_lower / b.gcsa_upper > a.ep_lower / a.gcsa_upper);
}

TEST_CASE("J = 1 keeps ep and gcsa within a constant factor") {
  for (double k = 2; k <= 2000; k *= 1.5) {
    auto pt = latency_point(1, 0.75, k);
    const double r = pt.gcsa_upper / pt.ep_lower;
    CHECK(r > 0.5);
    CHECK(r < 4);
  }
}

TEST_CASE("latency witness runs in the harness") {
  PrimeField f;
  std::mt19937_64 rng(3);
  const long jobs = 3;
  const double eta = 0.75;
  for (double k : {2.0, 5.0}) {
    auto pt = gcsa_latency_point(jobs, eta, k);
    REQUIRE(pt.witness);
    const auto& w = *pt.witness;
    const int r = gcsa_threshold(w.ell, w.kc, w.p, w.m, w.n);
    const auto servers = static_cast<std::size_t>(std::ceil(r / eta));
    CDBMMParams p = GCSAParams::standard(f, w.ell, w.kc, {w.p, w.m, w.n}, servers);
    const Eigen::Index lam = w.p * w.m;  // divisible by m, p and n (= m)
    auto a = testing::random_batch(f, static_cast<int>(jobs), lam, lam, rng);
    auto b = testing::random_batch(f, static_cast<int>(jobs), lam, lam, rng);
    auto res = run_cdbmm(p, a, b, StragglerModel::random(static_cast<std::size_t>(r), 1));
    CHECK(testing::same(res.products, testing::direct_products(a, b)));
    // total download per lambda^2 is D * J
    const double total_down =
        boost::rational_cast<double>(res.report.download) * static_cast<double>(jobs);
    CHECK(std::abs(total_down - pt.gcsa_upper) <= 1e-9 * pt.gcsa_upper);
    const double total_up =
        boost::rational_cast<double>(res.report.upload[0] + res.report.upload[1]) *
        static_cast<double>(jobs);
    // the integer server count rounds R / eta up by less than one server
    CHECK(total_up <= pt.gcsa_upper + 2.0 / (w.p * w.m) + 1e-9);
  }
}

TEST_CASE("latency CSVs match the snapshots") {
  for (long j : {100L, 1000L}) {
    auto want = csv_rows(slurp("latency_j" + std::to_string(j) + ".csv"));
    auto got = latency_curve(j, 0.75, 0.5, 25, 50);
    REQUIRE(want.size() == got.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::abs(std::stod(want[i][0]) - got[i].k) < 1e-9);
      CHECK(std::abs(std::stod(want[i][1]) - got[i].ep_lower) <= 1e-9 * got[i].ep_lower);
      CHECK(std::abs(std::stod(want[i][2]) - got[i].gcsa_upper) <= 1e-9 * got[i].gcsa_upper);
      CHECK(want[i][3].empty() == !got[i].witness);
    }
    CHECK(!got.front().witness);  // K < 1 plateau row
  }
}
