#include "cdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cdc {

Family parse_family(const std::string& name) {
  if (name == "EP" || name == "ep") return Family::EP;
  if (name == "CSA" || name == "csa") return Family::CSA;
  if (name == "GCSA" || name == "gcsa") return Family::GCSA;
  throw Error(ErrorKind::InvalidInput, "unknown code family '" + name + "'");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::EP:
      return "EP";
    case Family::CSA:
      return "CSA";
    case Family::GCSA:
      return "GCSA";
  }
  return "?";
}

// Points are placeholders: only the threshold and the counts enter the closed forms.
HullPoint tuple_costs(Family family, const CodeTuple& t, long servers) {
  static const PrimeField field;
  const auto s = static_cast<std::size_t>(servers);
  CDBMMParams params;
  switch (family) {
    case Family::EP:
      params = EPSetup::standard(field, {t.p, t.m, t.n}, 1, s);
      break;
    case Family::CSA:
      params = CSAParams::standard(field, t.ell, t.kc, s);
      break;
    case Family::GCSA:
      params = GCSAParams::standard(field, t.ell, t.kc, {t.p, t.m, t.n}, s);
      break;
  }
  const CostReport r = theoretical_costs(params);
  return {std::max(r.upload[0], r.upload[1]), r.download, t};
}

std::vector<HullPoint> enumerate_tuples(Family family, long servers, long r_max,
                                        std::optional<long> pmn_bound) {
  require(r_max >= 1 && servers > r_max, ErrorKind::InvalidParams, "need S > R_max >= 1");
  std::vector<HullPoint> out;
  auto add_batch = [&](int p, int m, int n) {
    const long pmn = static_cast<long>(p) * m * n;
    for (int kc = 1; pmn * (2L * kc - 1) + p - 1 <= r_max; ++kc)
      for (int ell = 1; pmn * ((ell + 1L) * kc - 1) + p - 1 <= r_max; ++ell)
        out.push_back(tuple_costs(family, {p, m, n, ell, kc}, servers));
  };
  switch (family) {
    case Family::EP:
      for (int p = 1; p <= r_max; ++p)
        for (int m = 1; static_cast<long>(p) * m <= r_max; ++m)
          for (int n = 1; static_cast<long>(p) * m * n + p - 1 <= r_max; ++n)
            out.push_back(tuple_costs(family, {p, m, n, 1, 1}, servers));
      break;
    case Family::CSA:
      add_batch(1, 1, 1);
      break;
    case Family::GCSA:
      for (int p = 1; p <= r_max; ++p)
        for (int m = 1; static_cast<long>(p) * m <= r_max; ++m)
          for (int n = 1; static_cast<long>(p) * m * n + p - 1 <= r_max; ++n) {
            if (pmn_bound && static_cast<long>(p) * m * n > *pmn_bound) break;
            add_batch(p, m, n);
          }
      break;
  }
  return out;
}

namespace {

// > 0 when a -> b -> c turns left (counter-clockwise)
Rational cross(const HullPoint& a, const HullPoint& b, const HullPoint& c) {
  return (b.upload - a.upload) * (c.download - a.download) -
         (b.download - a.download) * (c.upload - a.upload);
}

}  // namespace

std::vector<HullPoint> lower_hull(std::vector<HullPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const HullPoint& a, const HullPoint& b) {
    if (a.upload != b.upload) return a.upload < b.upload;
    if (a.download != b.download) return a.download < b.download;
    return a.witness < b.witness;
  });
  std::vector<HullPoint> stair;
  for (const auto& p : pts)
    if (stair.empty() || p.download < stair.back().download) stair.push_back(p);
  std::vector<HullPoint> hull;
  for (const auto& p : stair) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= Rational(0))
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

std::vector<HullPoint> pareto_hull(Family family, long servers, long r_max,
                                   std::optional<long> pmn_bound) {
  return lower_hull(enumerate_tuples(family, servers, r_max, pmn_bound));
}

std::optional<HullPoint> min_max_cost(Family family, long servers, long r_max,
                                      std::optional<long> pmn_bound) {
  std::optional<HullPoint> best;
  auto worst = [](const HullPoint& h) { return std::max(h.upload, h.download); };
  for (const auto& h : enumerate_tuples(family, servers, r_max, pmn_bound))
    if (!best || worst(h) < worst(*best) ||
        (worst(h) == worst(*best) && h.witness < best->witness))
      best = h;
  return best;
}

std::string hull_csv(Family family, const std::vector<HullPoint>& points) {
  std::ostringstream os;
  os << "family,U_num,U_den,D_num,D_den,p,m,n,ell,kc\n";
  for (const auto& h : points)
    os << to_string(family) << ',' << h.upload.numerator() << ',' << h.upload.denominator() << ','
       << h.download.numerator() << ',' << h.download.denominator() << ',' << h.witness.p << ','
       << h.witness.m << ',' << h.witness.n << ',' << h.witness.ell << ',' << h.witness.kc << '\n';
  return os.str();
}

// ---- latency ----

double ep_latency_lower(long jobs, double eta, double k) {
  require(jobs >= 1 && eta > 0 && eta < 1 && k > 0, ErrorKind::InvalidParams,
          "need J >= 1, 0 < eta < 1, K > 0");
  const double j = static_cast<double>(jobs);
  const double m = std::cbrt(eta * j * k / 2);
  return j * (2 * m * m * m / eta + 2 * m / eta - 1) / (m * m);
}

LatencyPoint gcsa_latency_point(long jobs, double eta, double k) {
  require(jobs >= 1 && eta > 0 && eta < 1, ErrorKind::InvalidParams, "need J >= 1, 0 < eta < 1");
  LatencyPoint pt;
  pt.k = k;
  const double two_j = 2.0 * static_cast<double>(jobs) - 1;
  if (k < 1) {
    pt.gcsa_upper = 2 * std::ceil(two_j / eta);
    return pt;
  }
  // ceil() makes the objective bumpy in m, so look at a few feasible m past the first
  double best = 0;
  const long first = std::max(1L, static_cast<long>(std::floor(std::cbrt(eta * k / 2))));
  for (long m = first, found = 0; found < 8; ++m) {
    const double md = static_cast<double>(m);
    const long p = static_cast<long>(std::ceil(2 * md / eta - 1e-12));
    if (static_cast<double>(p) * md * md < k) continue;
    ++found;
    const double r = two_j * static_cast<double>(p) * md * md + static_cast<double>(p) - 1;
    const double upload = 2 * (r / eta) / (static_cast<double>(p) * md);
    const double val = std::max(r / (md * md), upload);
    if (!pt.witness || val < best) {
      best = val;
      pt.witness = CodeTuple{static_cast<int>(p), static_cast<int>(m), static_cast<int>(m), 1,
                             static_cast<int>(jobs)};
    }
  }
  pt.gcsa_upper = best;
  return pt;
}

LatencyPoint latency_point(long jobs, double eta, double k) {
  LatencyPoint pt = gcsa_latency_point(jobs, eta, k);
  pt.ep_lower = ep_latency_lower(jobs, eta, k);
  return pt;
}

std::vector<LatencyPoint> latency_curve(long jobs, double eta, double k_min, double k_max,
                                        int steps) {
  require(steps >= 1 && k_min > 0 && k_max >= k_min, ErrorKind::InvalidParams,
          "need steps >= 1 and 0 < K_min <= K_max");
  std::vector<LatencyPoint> out;
  for (int i = 0; i < steps; ++i) {
    const double k = steps == 1 ? k_min : k_min + (k_max - k_min) * i / (steps - 1);
    out.push_back(latency_point(jobs, eta, k));
  }
  return out;
}

std::string latency_csv(const std::vector<LatencyPoint>& points) {
  std::ostringstream os;
  os.precision(12);
  os << "K,ep_lower,gcsa_upper,p,m,n,ell,kc\n";
  for (const auto& pt : points) {
    os << pt.k << ',' << pt.ep_lower << ',' << pt.gcsa_upper;
    if (pt.witness)
      os << ',' << pt.witness->p << ',' << pt.witness->m << ',' << pt.witness->n << ','
         << pt.witness->ell << ',' << pt.witness->kc;
    else
      os << ",,,,,";
    os << '\n';
  }
  return os.str();
}

}  // namespace cdc
