#include "lab.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

namespace auglab::lab {

namespace {

// Index-parallel map with deterministic aggregation by position.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(threads, static_cast<int>(count));
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

void check_curve(const Curve& curve) {
  if (curve.axis.size() != curve.values.size())
    throw Error("curve axis/value length mismatch");
  for (std::size_t i = 0; i + 1 < curve.axis.size(); ++i)
    if (!(curve.axis[i] < curve.axis[i + 1]))
      throw InvalidInput("resource levels must be strictly increasing");
  for (double v : curve.values)
    if (v < 0.0) throw Error("negative cost in curve");
}

Report make_report(std::string claim, double left, double right, double slack,
                   bool pass, nlohmann::json context) {
  Report r;
  r.claim = std::move(claim);
  r.left = left;
  r.right = right;
  r.slack = slack;
  r.pass = pass;
  r.context = std::move(context);
  return r;
}

}  // namespace

Curve paging_curve(const paging::Trace& trace, paging::Policy policy,
                   const std::vector<int>& cache_sizes, int threads) {
  Curve curve;
  curve.engine = "paging/" + paging::policy_name(policy);
  curve.axis.assign(cache_sizes.begin(), cache_sizes.end());
  curve.values.assign(cache_sizes.size(), 0.0);
  parallel_for(cache_sizes.size(), threads, [&](std::size_t i) {
    curve.values[i] = static_cast<double>(
        paging::simulate(policy, cache_sizes[i], trace).faults);
  });
  check_curve(curve);
  return curve;
}

Curve routing_curve(const routing::Network& net, RoutingObjective objective,
                    const std::vector<double>& rates,
                    routing::SolveOptions opts, int threads) {
  double base = 0.0;
  for (const auto& c : net.commodities) base += c.rate;
  if (base <= 0.0) throw InvalidInput("network has no traffic to scale");
  Curve curve;
  curve.engine = objective == RoutingObjective::Equilibrium
                     ? "routing/equilibrium"
                     : "routing/optimal";
  curve.axis = rates;
  curve.values.assign(rates.size(), 0.0);
  parallel_for(rates.size(), threads, [&](std::size_t i) {
    routing::Network scaled = routing::scale_rates(net, rates[i] / base);
    auto rep = objective == RoutingObjective::Equilibrium
                   ? routing::solve_equilibrium(scaled, opts)
                   : routing::solve_optimal(scaled, opts);
    curve.values[i] = rep.cost;
  });
  check_curve(curve);
  return curve;
}

Curve sched_curve(const sched::JobSet& jobs, sched::Discipline discipline,
                  const std::vector<sched::Rat>& speeds, int threads) {
  Curve curve;
  curve.engine = "scheduling/" + sched::discipline_name(discipline);
  curve.axis.reserve(speeds.size());
  for (const auto& s : speeds) curve.axis.push_back(sched::to_double(s));
  curve.values.assign(speeds.size(), 0.0);
  parallel_for(speeds.size(), threads, [&](std::size_t i) {
    auto metrics =
        sched::flow_metrics(sched::simulate(discipline, jobs, speeds[i]));
    curve.values[i] = sched::to_double(metrics.total_flow);
  });
  check_curve(curve);
  return curve;
}

std::string curve_to_csv(const Curve& curve) {
  std::ostringstream out;
  out << "resource,value\n";
  for (std::size_t i = 0; i < curve.axis.size(); ++i)
    out << format_double(curve.axis[i]) << ','
        << format_double(curve.values[i]) << '\n';
  return out.str();
}

nlohmann::json curve_to_json(const Curve& curve) {
  nlohmann::json j;
  j["engine"] = curve.engine;
  if (!curve.instance.empty()) j["instance"] = curve.instance;
  j["resource"] = curve.axis;
  j["value"] = curve.values;
  return j;
}

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json j;
  j["claim"] = report.claim;
  j["left"] = report.left;
  j["right"] = report.right;
  j["slack"] = report.slack;
  j["pass"] = report.pass;
  j["context"] = report.context;
  return j;
}

Report verify_paging_ra(const paging::Trace& trace, int k, int h,
                        paging::Policy protagonist) {
  if (h < 1 || k < h)
    throw InvalidInput("need 1 <= h <= k");
  if (protagonist == paging::Policy::Fif)
    throw InvalidInput("the protagonist must be an online policy");
  const std::uint64_t online = paging::simulate(protagonist, k, trace).faults;
  const std::uint64_t offline =
      paging::simulate(paging::Policy::Fif, h, trace).faults;
  const std::uint64_t blocks = paging::decompose_blocks(trace, k).count();

  const std::uint64_t kk = static_cast<std::uint64_t>(k);
  const std::uint64_t spread = static_cast<std::uint64_t>(k - h + 1);
  // Finite form of the bound, checked in exact integer arithmetic:
  // online * (k-h+1) <= k * offline + k * (k-h+1).
  bool main_ok = online * spread <= kk * offline + kk * spread;
  bool upper_ok = online <= blocks * kk;
  bool lower_ok =
      blocks == 0 || offline + spread >= blocks * spread;  // (b-1)(k-h+1)

  nlohmann::json context;
  context["policy"] = paging::policy_name(protagonist);
  context["k"] = k;
  context["h"] = h;
  context["blocks"] = blocks;
  context["online_faults"] = online;
  context["offline_faults"] = offline;
  context["block_upper_bound_ok"] = upper_ok;
  context["shifted_block_lower_bound_ok"] = lower_ok;
  return make_report(
      "paging-resource-augmentation", static_cast<double>(online),
      static_cast<double>(kk * offline) / static_cast<double>(spread),
      static_cast<double>(k), main_ok && upper_ok && lower_ok,
      std::move(context));
}

Report verify_routing_rt(const routing::Network& net, double delta,
                         double slack, routing::SolveOptions opts) {
  if (!(delta > 0.0)) throw InvalidInput("delta must be > 0");
  auto eq = routing::solve_equilibrium(net, opts);
  auto opt =
      routing::solve_optimal(routing::scale_rates(net, 1.0 + delta), opts);
  double left = eq.cost;
  double right = opt.cost / delta;
  nlohmann::json context;
  context["delta"] = delta;
  context["equilibrium_cost"] = format_double(eq.cost);
  context["optimal_cost_scaled"] = format_double(opt.cost);
  context["eq_converged"] = eq.converged;
  context["opt_converged"] = opt.converged;
  return make_report("routing-rate-augmentation", left, right, slack,
                     left <= right + slack, std::move(context));
}

Report verify_routing_bicrit(const routing::Network& net, double slack,
                             routing::SolveOptions opts) {
  auto eq_slow = routing::solve_equilibrium(routing::make_slower(net), opts);
  auto opt = routing::solve_optimal(net, opts);
  nlohmann::json context;
  context["equilibrium_cost_slowed"] = format_double(eq_slow.cost);
  context["optimal_cost"] = format_double(opt.cost);
  context["eq_converged"] = eq_slow.converged;
  context["opt_converged"] = opt.converged;
  return make_report("routing-capacity-augmentation", eq_slow.cost, opt.cost,
                     slack, eq_slow.cost <= opt.cost + slack,
                     std::move(context));
}

Report verify_sched_idle(const sched::JobSet& jobs, const sched::Rat& eps) {
  if (!(eps > 0)) throw InvalidInput("eps must be > 0");
  sched::Rat idle =
      sched::flow_metrics(sched::simulate_setf(jobs, 1 + eps)).max_idle;
  sched::Rat opt = sched::opt_max_idle(jobs, sched::Rat(1));
  bool pass = idle * eps <= opt;  // idle <= opt / eps, exactly
  nlohmann::json context;
  context["eps"] = sched::format_rational(eps);
  context["setf_max_idle"] = sched::format_rational(idle);
  context["opt_max_idle"] = sched::format_rational(opt);
  return make_report("scheduling-idle-augmentation", sched::to_double(idle),
                     sched::to_double(opt / eps), 0.0, pass,
                     std::move(context));
}

std::string loose_category_name(LooseCategory c) {
  switch (c) {
    case LooseCategory::Competitive: return "competitive";
    case LooseCategory::LowFaultRate: return "low_fault_rate";
    case LooseCategory::Exempt: return "exempt";
  }
  return "?";
}

LooseClassification loose_classify(const paging::Trace& trace, int n,
                                   double eps, double delta,
                                   paging::Policy protagonist) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("need 0 < eps < 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("need 0 < delta < 1");
  if (n < 1) throw InvalidInput("need n >= 1");
  if (protagonist == paging::Policy::Fif)
    throw InvalidInput("the protagonist must be an online policy");

  LooseClassification out;
  out.n = n;
  out.eps = eps;
  out.delta = delta;
  double raw_b = delta * n / std::log2(1.0 / eps);
  out.b = static_cast<int>(std::ceil(raw_b - 1e-9));
  if (out.b < 1) throw InvalidInput("degenerate parameters: b = 0");
  out.exempt_cap =
      static_cast<std::size_t>(std::ceil(delta * n - 1e-9));

  std::vector<std::uint64_t> online(n + out.b + 1, 0);
  std::vector<std::uint64_t> offline(n + 1, 0);
  for (int k = 1; k <= n + out.b; ++k)
    online[k] = paging::simulate(protagonist, k, trace).faults;
  for (int k = 1; k <= n; ++k)
    offline[k] = paging::simulate(paging::Policy::Fif, k, trace).faults;

  const double len = static_cast<double>(trace.requests.size());
  std::size_t bad_below = 0;
  for (int k = 1; k <= n; ++k) {
    bool good = 2 * online[k + out.b] >= online[k];
    LooseEntry e;
    e.k = k;
    e.online_faults = online[k];
    e.offline_faults = offline[k];
    if (good) {
      e.category = LooseCategory::Competitive;
      const std::uint64_t kb = static_cast<std::uint64_t>(k + out.b);
      const std::uint64_t b1 = static_cast<std::uint64_t>(out.b + 1);
      e.left = static_cast<double>(online[k]);
      e.right = 2.0 * static_cast<double>(kb) * offline[k] / b1;
      e.slack = 2.0 * static_cast<double>(kb);
      // Exact: online[k] * (b+1) <= 2(k+b) * offline[k] + 2(k+b)(b+1).
      e.pass = online[k] * b1 <= 2 * kb * offline[k] + 2 * kb * b1;
      e.slack_material = offline[k] < 10 * static_cast<std::uint64_t>(k);
    } else if (static_cast<double>(bad_below) + 1e-9 >= delta * n) {
      e.category = LooseCategory::LowFaultRate;
      e.left = static_cast<double>(online[k]);
      e.right = eps * len;
      e.slack = 0.0;
      e.pass = e.left <= e.right;
    } else {
      e.category = LooseCategory::Exempt;
      ++out.exempt_count;
    }
    if (!good) ++bad_below;
    out.entries.push_back(e);
  }
  if (out.exempt_count > out.exempt_cap)
    throw Error("loose classification exceeded its exempt budget");
  return out;
}

nlohmann::json loose_to_json(const LooseClassification& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["eps"] = c.eps;
  j["delta"] = c.delta;
  j["b"] = c.b;
  j["exempt_count"] = c.exempt_count;
  j["exempt_cap"] = c.exempt_cap;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : c.entries) {
    nlohmann::json je;
    je["k"] = e.k;
    je["category"] = loose_category_name(e.category);
    je["lru"] = e.online_faults;
    je["fif"] = e.offline_faults;
    if (e.category != LooseCategory::Exempt) {
      je["bound"] = e.right;
      je["slack"] = e.slack;
      je["pass"] = e.pass;
      je["slack_material"] = e.slack_material;
    }
    j["entries"].push_back(std::move(je));
  }
  return j;
}

RoutingLooseReport routing_loose_curve(const routing::Network& net, double r,
                                       int samples, double beta,
                                       routing::SolveOptions opts) {
  if (samples < 2) throw InvalidInput("need samples >= 2");
  if (!(beta > 0.0)) throw InvalidInput("beta must be > 0");
  if (!(r > 0.0)) throw InvalidInput("rate must be > 0");
  double base = 0.0;
  for (const auto& c : net.commodities) base += c.rate;
  if (base <= 0.0) throw InvalidInput("network has no traffic to scale");

  RoutingLooseReport rep;
  rep.beta = beta;
  double eq_full =
      routing::solve_equilibrium(routing::scale_rates(net, r / base), opts)
          .cost;
  double eq_half =
      routing::solve_equilibrium(routing::scale_rates(net, r / (2 * base)),
                                 opts)
          .cost;
  rep.pi_defined = eq_half > 1e-12 * std::max(1.0, eq_full);
  if (rep.pi_defined) {
    rep.pi = eq_full / eq_half;
    rep.threshold = beta * std::log(rep.pi);
  }

  std::size_t hits = 0;
  for (int i = 0; i < samples; ++i) {
    double rate = r / 2 + (r / 2) * i / (samples - 1);
    auto poa =
        routing::price_of_anarchy(routing::scale_rates(net, rate / base),
                                  opts);
    double value = poa.defined ? poa.value : 1.0;
    rep.samples.emplace_back(rate, value);
    if (rep.pi_defined && value <= rep.threshold + 1e-12) ++hits;
  }
  rep.alpha_hat = static_cast<double>(hits) / samples;
  return rep;
}

nlohmann::json routing_loose_to_json(const RoutingLooseReport& rep) {
  nlohmann::json j;
  j["pi_defined"] = rep.pi_defined;
  j["pi"] = format_double(rep.pi);
  j["beta"] = format_double(rep.beta);
  j["threshold"] = format_double(rep.threshold);
  j["alpha_hat"] = format_double(rep.alpha_hat);
  j["samples"] = nlohmann::json::array();
  for (const auto& [rate, poa] : rep.samples)
    j["samples"].push_back(
        {{"rate", format_double(rate)}, {"poa", format_double(poa)}});
  return j;
}

}  // namespace auglab::lab
