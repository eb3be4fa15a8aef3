#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "paging.hpp"
#include "routing.hpp"
#include "scheduling.hpp"

namespace auglab::lab {

// Cost as a function of the resource level: page faults vs cache size,
// flow cost vs traffic rate, total flow time vs machine speed.
struct Curve {
  std::string engine;
  std::string instance;  // optional caller-supplied label
  std::vector<double> axis;
  std::vector<double> values;
};

Curve paging_curve(const paging::Trace& trace, paging::Policy policy,
                   const std::vector<int>& cache_sizes, int threads = 1);

enum class RoutingObjective { Equilibrium, Optimal };

Curve routing_curve(const routing::Network& net, RoutingObjective objective,
                    const std::vector<double>& rates,
                    routing::SolveOptions opts = {}, int threads = 1);

Curve sched_curve(const sched::JobSet& jobs, sched::Discipline discipline,
                  const std::vector<sched::Rat>& speeds, int threads = 1);

std::string curve_to_csv(const Curve& curve);
nlohmann::json curve_to_json(const Curve& curve);

// One bound check: pass iff left <= right + slack, all fields stored so
// the verdict can be recomputed from the record alone.
struct Report {
  std::string claim;
  double left = 0.0;
  double right = 0.0;
  double slack = 0.0;
  bool pass = false;
  nlohmann::json context;
};

nlohmann::json report_to_json(const Report& report);

// Cache-size augmentation check for an online policy against the offline
// optimum with h <= k slots, in the finite form with additive slack k.
Report verify_paging_ra(const paging::Trace& trace, int k, int h,
                        paging::Policy protagonist = paging::Policy::Lru);

// Rate augmentation: equilibrium cost at the base rates vs 1/delta times
// the optimal cost at rates scaled by 1+delta.
Report verify_routing_rt(const routing::Network& net, double delta,
                         double slack = 1e-5, routing::SolveOptions opts = {});

// Capacity augmentation: equilibrium cost under the half-load-half-cost
// transform vs the optimal cost in the original network.
Report verify_routing_bicrit(const routing::Network& net, double slack = 1e-5,
                             routing::SolveOptions opts = {});

// Idle-time augmentation: max idle of SETF at speed 1+eps vs 1/eps times
// the optimal offline max idle at unit speed. Exact rational comparison.
Report verify_sched_idle(const sched::JobSet& jobs, const sched::Rat& eps);

enum class LooseCategory { Competitive, LowFaultRate, Exempt };

std::string loose_category_name(LooseCategory c);

struct LooseEntry {
  int k = 0;
  LooseCategory category = LooseCategory::Competitive;
  std::uint64_t online_faults = 0;   // protagonist with cache k
  std::uint64_t offline_faults = 0;  // offline optimum with cache k
  double left = 0.0;
  double right = 0.0;
  double slack = 0.0;
  bool pass = true;
  bool slack_material = false;  // additive term not negligible vs faults
};

struct LooseClassification {
  int n = 0;
  double eps = 0.0;
  double delta = 0.0;
  int b = 0;  // cache-size step derived from eps and delta
  std::size_t exempt_count = 0;
  std::size_t exempt_cap = 0;  // ceil(delta * n)
  std::vector<LooseEntry> entries;
};

// For every cache size k in 1..n, either the policy is within the
// augmented competitive ratio of the offline optimum, or its fault rate
// is at most eps, except for at most ceil(delta*n) exempt sizes.
LooseClassification loose_classify(const paging::Trace& trace, int n,
                                   double eps, double delta,
                                   paging::Policy protagonist =
                                       paging::Policy::Lru);

nlohmann::json loose_to_json(const LooseClassification& c);

struct RoutingLooseReport {
  double pi = 0.0;          // eq cost at r over eq cost at r/2
  bool pi_defined = false;
  double beta = 0.0;
  double threshold = 0.0;   // beta * ln(pi)
  std::vector<std::pair<double, double>> samples;  // (rate, poa)
  double alpha_hat = 0.0;   // fraction of samples with poa <= threshold
};

// Sweeps rates over [r/2, r] and reports how often the price of anarchy
// stays below beta * ln(pi).
RoutingLooseReport routing_loose_curve(const routing::Network& net, double r,
                                       int samples, double beta,
                                       routing::SolveOptions opts = {});

nlohmann::json routing_loose_to_json(const RoutingLooseReport& rep);

}  // namespace auglab::lab
