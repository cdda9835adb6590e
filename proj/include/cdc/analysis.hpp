#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdc/harness.hpp"

namespace cdc {

enum class Family { EP, CSA, GCSA };

Family parse_family(const std::string& name);
std::string to_string(Family family);

/// EP tuples use ell = kc = 1; CSA tuples use p = m = n = 1.
struct CodeTuple {
  int p = 1, m = 1, n = 1, ell = 1, kc = 1;

  auto operator<=>(const CodeTuple&) const = default;
};

struct HullPoint {
  Rational upload;  // max(U_A, U_B)
  Rational download;
  CodeTuple witness;
};

/// Closed-form (balanced upload, download) of a tuple on S servers.
HullPoint tuple_costs(Family family, const CodeTuple& t, long servers);

/// Every tuple of the family with threshold <= r_max (and pmn <= pmn_bound).
std::vector<HullPoint> enumerate_tuples(Family family, long servers, long r_max,
                                        std::optional<long> pmn_bound = std::nullopt);

/// Pareto staircase of the enumeration, then its lower convex hull; sorted by U.
std::vector<HullPoint> pareto_hull(Family family, long servers, long r_max,
                                   std::optional<long> pmn_bound = std::nullopt);

/// Lower convex hull of arbitrary points (same staircase + monotone chain).
std::vector<HullPoint> lower_hull(std::vector<HullPoint> points);

/// Smallest max(U, D) over the family; nullopt if nothing is feasible.
std::optional<HullPoint> min_max_cost(Family family, long servers, long r_max,
                                      std::optional<long> pmn_bound = std::nullopt);

std::string hull_csv(Family family, const std::vector<HullPoint>& points);

struct LatencyPoint {
  double k = 0;
  double ep_lower = 0;
  double gcsa_upper = 0;
  /// GCSA tuple reaching gcsa_upper (ell = 1, kc = J); nullopt on the K < 1 plateau.
  std::optional<CodeTuple> witness;
};

/// EP balanced time bound at continuous m = (eta J K / 2)^(1/3), in units of lambda^2 T_c.
double ep_latency_lower(long jobs, double eta, double k);

/// Best GCSA point with m = n, p = ceil(2m/eta), ell = 1, K_c = J and pmn >= K.
LatencyPoint gcsa_latency_point(long jobs, double eta, double k);

LatencyPoint latency_point(long jobs, double eta, double k);

/// `steps` evenly spaced K values from k_min to k_max inclusive.
std::vector<LatencyPoint> latency_curve(long jobs, double eta, double k_min, double k_max,
                                        int steps);

std::string latency_csv(const std::vector<LatencyPoint>& points);

}  // namespace cdc
