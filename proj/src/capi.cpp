#include "auglab/auglab.h"

#include <cstring>
#include <string>

#include "lab.hpp"

struct auglab_trace {
  auglab::paging::Trace value;
};
struct auglab_network {
  auglab::routing::Network value;
};
struct auglab_jobset {
  auglab::sched::JobSet value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

auglab_status fail(auglab_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
auglab_status guarded(Fn&& fn) {
  try {
    fn();
    return AUGLAB_OK;
  } catch (const auglab::ParseFailure& e) {
    return fail(AUGLAB_ERR_PARSE, e.what());
  } catch (const auglab::GuardExceeded& e) {
    return fail(AUGLAB_ERR_GUARD, e.what());
  } catch (const auglab::InfeasibleNetwork& e) {
    return fail(AUGLAB_ERR_INFEASIBLE, e.what());
  } catch (const auglab::IoFailure& e) {
    return fail(AUGLAB_ERR_IO, e.what());
  } catch (const auglab::InvalidInput& e) {
    return fail(AUGLAB_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(AUGLAB_ERR_INTERNAL, e.what());
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2); }

nlohmann::json rational_or_null(bool defined, const auglab::sched::Rat& v) {
  if (!defined) return nullptr;
  return auglab::sched::format_rational(v);
}

auglab::routing::SolveOptions solve_opts(double tol) {
  auglab::routing::SolveOptions opts;
  if (tol > 0) opts.tol = tol;
  return opts;
}

}  // namespace

extern "C" {

const char* auglab_version(void) { return "1.0.0"; }

const char* auglab_last_error(void) { return g_last_error.c_str(); }

void auglab_string_free(char* text) { delete[] text; }
void auglab_trace_free(auglab_trace* trace) { delete trace; }
void auglab_network_free(auglab_network* net) { delete net; }
void auglab_jobset_free(auglab_jobset* jobs) { delete jobs; }

/* ---------------- paging ---------------- */

auglab_status auglab_trace_from_requests(const int32_t* requests, size_t count,
                                         int32_t universe,
                                         auglab_trace** out) {
  if (!out || (count > 0 && !requests))
    return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auglab::paging::Trace t;
    t.universe = universe;
    t.requests.assign(requests, requests + count);
    auglab::paging::validate(t);
    *out = new auglab_trace{std::move(t)};
  });
}

auglab_status auglab_trace_load_file(const char* path, auglab_trace** out) {
  if (!out || !path) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_trace{auglab::paging::load_trace_file(path)};
  });
}

auglab_status auglab_trace_save_file(const auglab_trace* trace,
                                     const char* path) {
  if (!trace || !path) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] { auglab::paging::save_trace_file(trace->value, path); });
}

auglab_status auglab_trace_length(const auglab_trace* trace, size_t* out) {
  if (!trace || !out) return fail(AUGLAB_ERR_INVALID, "null argument");
  *out = trace->value.requests.size();
  return AUGLAB_OK;
}

auglab_status auglab_trace_universe(const auglab_trace* trace, int32_t* out) {
  if (!trace || !out) return fail(AUGLAB_ERR_INVALID, "null argument");
  *out = trace->value.universe;
  return AUGLAB_OK;
}

auglab_status auglab_trace_gen_cyclic(int cache_size, size_t length,
                                      auglab_trace** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_trace{auglab::paging::gen_cyclic(cache_size, length)};
  });
}

auglab_status auglab_trace_gen_adaptive(const char* policy, int cache_size,
                                        size_t length, auglab_trace** out) {
  if (!out || !policy) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_trace{auglab::paging::gen_adaptive(
        auglab::paging::parse_policy(policy), cache_size, length)};
  });
}

auglab_status auglab_trace_gen_locality(int32_t universe, size_t length,
                                        uint64_t seed, double locality,
                                        int window, auglab_trace** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_trace{auglab::paging::gen_locality(
        universe, length, seed, locality, window)};
  });
}

auglab_status auglab_page_simulate(const auglab_trace* trace,
                                   const char* policy, int cache_size,
                                   uint64_t* faults, char** record_json) {
  if (!trace || !policy) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto result = auglab::paging::simulate(
        auglab::paging::parse_policy(policy), cache_size, trace->value);
    if (faults) *faults = result.faults;
    if (record_json) {
      nlohmann::json j;
      j["policy"] = policy;
      j["k"] = cache_size;
      j["faults"] = result.faults;
      j["len"] = trace->value.requests.size();
      set_out(record_json, dump(j));
    }
  });
}

auglab_status auglab_page_opt_bruteforce(const auglab_trace* trace,
                                         int cache_size, int32_t max_universe,
                                         size_t max_length, uint64_t* faults) {
  if (!trace || !faults) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auglab::paging::OracleGuard guard;
    if (max_universe > 0) guard.max_universe = max_universe;
    if (max_length > 0) guard.max_length = max_length;
    *faults =
        auglab::paging::offline_opt_bruteforce(trace->value, cache_size, guard);
  });
}

auglab_status auglab_page_blocks(const auglab_trace* trace, int cache_size,
                                 size_t* count, char** blocks_json) {
  if (!trace) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto blocks = auglab::paging::decompose_blocks(trace->value, cache_size);
    if (count) *count = blocks.count();
    if (blocks_json) {
      nlohmann::json j;
      j["k"] = cache_size;
      j["count"] = blocks.count();
      j["ranges"] = nlohmann::json::array();
      for (auto [lo, hi] : blocks.ranges)
        j["ranges"].push_back({{"begin", lo}, {"end", hi}});
      set_out(blocks_json, dump(j));
    }
  });
}

auglab_status auglab_page_curve(const auglab_trace* trace, const char* policy,
                                const int* cache_sizes, size_t count,
                                int threads, char** curve_json) {
  if (!trace || !policy || !cache_sizes || !curve_json)
    return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    std::vector<int> ks(cache_sizes, cache_sizes + count);
    auto curve = auglab::lab::paging_curve(
        trace->value, auglab::paging::parse_policy(policy), ks,
        threads > 0 ? threads : 1);
    set_out(curve_json, dump(auglab::lab::curve_to_json(curve)));
  });
}

auglab_status auglab_page_verify_ra(const auglab_trace* trace,
                                    const char* policy, int k, int h,
                                    int* pass, char** report_json) {
  if (!trace || !policy) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto report = auglab::lab::verify_paging_ra(
        trace->value, k, h, auglab::paging::parse_policy(policy));
    if (pass) *pass = report.pass ? 1 : 0;
    if (report_json)
      set_out(report_json, dump(auglab::lab::report_to_json(report)));
  });
}

auglab_status auglab_page_loose_classify(const auglab_trace* trace, int n,
                                         double eps, double delta, int* pass,
                                         char** json) {
  if (!trace) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto c = auglab::lab::loose_classify(trace->value, n, eps, delta);
    bool ok = c.exempt_count <= c.exempt_cap;
    for (const auto& e : c.entries)
      if (e.category != auglab::lab::LooseCategory::Exempt) ok = ok && e.pass;
    if (pass) *pass = ok ? 1 : 0;
    if (json) set_out(json, dump(auglab::lab::loose_to_json(c)));
  });
}

/* ---------------- routing ---------------- */

auglab_status auglab_network_from_json(const char* json_text,
                                       auglab_network** out) {
  if (!out || !json_text) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded())
      throw auglab::ParseFailure("network: not valid JSON");
    *out = new auglab_network{auglab::routing::network_from_json(j)};
  });
}

auglab_status auglab_network_load_file(const char* path,
                                       auglab_network** out) {
  if (!out || !path) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_network{auglab::routing::load_network_file(path)};
  });
}

auglab_status auglab_network_save_file(const auglab_network* net,
                                       const char* path) {
  if (!net || !path) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded(
      [&] { auglab::routing::save_network_file(net->value, path); });
}

auglab_status auglab_network_to_json(const auglab_network* net, char** json) {
  if (!net || !json) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    set_out(json, dump(auglab::routing::network_to_json(net->value)));
  });
}

auglab_status auglab_network_pigou(int degree, auglab_network** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded(
      [&] { *out = new auglab_network{auglab::routing::pigou(degree)}; });
}

auglab_status auglab_network_mm1(double capacity, double rate,
                                 auglab_network** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_network{auglab::routing::mm1_single(capacity, rate)};
  });
}

auglab_status auglab_network_two_commodity(auglab_network** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_network{auglab::routing::two_commodity_fixture()};
  });
}

auglab_status auglab_network_gen_random(uint64_t seed, auglab_network** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_network{auglab::routing::gen_random_network(seed)};
  });
}

auglab_status auglab_network_gen_parallel(uint64_t seed,
                                          auglab_network** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_network{auglab::routing::gen_parallel_network(seed)};
  });
}

auglab_status auglab_network_scale_rates(const auglab_network* net,
                                         double factor,
                                         auglab_network** out) {
  if (!net || !out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_network{auglab::routing::scale_rates(net->value, factor)};
  });
}

auglab_status auglab_network_make_slower(const auglab_network* net,
                                         auglab_network** out) {
  if (!net || !out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_network{auglab::routing::make_slower(net->value)};
  });
}

auglab_status auglab_route_solve(const auglab_network* net, int optimal,
                                 double tol, double* cost, double* gap,
                                 char** flow_json) {
  if (!net) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto report = optimal
                      ? auglab::routing::solve_optimal(net->value,
                                                       solve_opts(tol))
                      : auglab::routing::solve_equilibrium(net->value,
                                                           solve_opts(tol));
    if (cost) *cost = report.cost;
    if (gap) *gap = report.gap;
    if (flow_json)
      set_out(flow_json,
              dump(auglab::routing::solve_report_to_json(report)));
  });
}

auglab_status auglab_route_poa(const auglab_network* net, double tol,
                               double* poa, char** json) {
  if (!net) return fail(AUGLAB_ERR_INVALID, "null argument");
  bool defined = true;
  auglab_status status = guarded([&] {
    auto result = auglab::routing::price_of_anarchy(net->value,
                                                    solve_opts(tol));
    defined = result.defined;
    if (result.defined && poa) *poa = result.value;
    if (json) {
      nlohmann::json j;
      j["defined"] = result.defined;
      j["poa"] = result.defined ? nlohmann::json(auglab::format_double(
                                      result.value))
                                : nlohmann::json(nullptr);
      j["exact"] = result.exact;
      j["equilibrium_cost"] = auglab::format_double(result.equilibrium_cost);
      j["optimal_cost"] = auglab::format_double(result.optimal_cost);
      set_out(json, dump(j));
    }
  });
  if (status != AUGLAB_OK) return status;
  if (!defined)
    return fail(AUGLAB_ERR_UNDEFINED,
                "price of anarchy undefined: optimal cost is zero");
  return AUGLAB_OK;
}

auglab_status auglab_route_verify_rt(const auglab_network* net,
                                     const double* deltas, size_t count,
                                     double slack, double tol, int* pass,
                                     char** json) {
  if (!net || !deltas || count == 0)
    return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    bool all = true;
    nlohmann::json reports = nlohmann::json::array();
    for (size_t i = 0; i < count; ++i) {
      auto report = auglab::lab::verify_routing_rt(net->value, deltas[i],
                                                   slack, solve_opts(tol));
      all = all && report.pass;
      reports.push_back(auglab::lab::report_to_json(report));
    }
    if (pass) *pass = all ? 1 : 0;
    if (json) {
      nlohmann::json j;
      j["pass"] = all;
      j["reports"] = std::move(reports);
      set_out(json, dump(j));
    }
  });
}

auglab_status auglab_route_verify_bicrit(const auglab_network* net,
                                         double slack, double tol, int* pass,
                                         char** json) {
  if (!net) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto report = auglab::lab::verify_routing_bicrit(net->value, slack,
                                                     solve_opts(tol));
    if (pass) *pass = report.pass ? 1 : 0;
    if (json) set_out(json, dump(auglab::lab::report_to_json(report)));
  });
}

auglab_status auglab_route_loose(const auglab_network* net, double rate,
                                 int samples, double beta, double tol,
                                 double* alpha_hat, char** json) {
  if (!net) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto rep = auglab::lab::routing_loose_curve(net->value, rate, samples,
                                                beta, solve_opts(tol));
    if (alpha_hat) *alpha_hat = rep.alpha_hat;
    if (json) set_out(json, dump(auglab::lab::routing_loose_to_json(rep)));
  });
}

auglab_status auglab_route_curve(const auglab_network* net, int optimal,
                                 const double* rates, size_t count, double tol,
                                 int threads, char** curve_json) {
  if (!net || !rates || !curve_json)
    return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    std::vector<double> levels(rates, rates + count);
    auto curve = auglab::lab::routing_curve(
        net->value,
        optimal ? auglab::lab::RoutingObjective::Optimal
                : auglab::lab::RoutingObjective::Equilibrium,
        levels, solve_opts(tol), threads > 0 ? threads : 1);
    set_out(curve_json, dump(auglab::lab::curve_to_json(curve)));
  });
}

/* ---------------- scheduling ---------------- */

auglab_status auglab_jobset_from_json(const char* json_text,
                                      auglab_jobset** out) {
  if (!out || !json_text) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw auglab::ParseFailure("jobs: not valid JSON");
    *out = new auglab_jobset{auglab::sched::jobset_from_json(j)};
  });
}

auglab_status auglab_jobset_load_file(const char* path, auglab_jobset** out) {
  if (!out || !path) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_jobset{auglab::sched::load_jobset_file(path)};
  });
}

auglab_status auglab_jobset_save_file(const auglab_jobset* jobs,
                                      const char* path) {
  if (!jobs || !path) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded(
      [&] { auglab::sched::save_jobset_file(jobs->value, path); });
}

auglab_status auglab_jobset_to_json(const auglab_jobset* jobs, char** json) {
  if (!jobs || !json) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    set_out(json, dump(auglab::sched::jobset_to_json(jobs->value)));
  });
}

auglab_status auglab_jobset_gen_example(const char* eps, const char* delta,
                                        auglab_jobset** out) {
  if (!out || !eps || !delta) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_jobset{auglab::sched::gen_example_setf(
        auglab::sched::parse_rational(eps),
        auglab::sched::parse_rational(delta))};
  });
}

auglab_status auglab_jobset_gen_random(uint64_t seed, int max_jobs,
                                       auglab_jobset** out) {
  if (!out) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new auglab_jobset{auglab::sched::gen_random_jobset(
        seed, max_jobs > 0 ? max_jobs : 12)};
  });
}

auglab_status auglab_sched_simulate(const auglab_jobset* jobs,
                                    const char* policy, const char* speed,
                                    char** timeline_json, char** total_flow,
                                    char** max_idle) {
  if (!jobs || !policy || !speed)
    return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto tl = auglab::sched::simulate(auglab::sched::parse_discipline(policy),
                                      jobs->value,
                                      auglab::sched::parse_rational(speed));
    auto metrics = auglab::sched::flow_metrics(tl);
    if (timeline_json)
      set_out(timeline_json, dump(auglab::sched::timeline_to_json(tl)));
    if (total_flow)
      set_out(total_flow, auglab::sched::format_rational(metrics.total_flow));
    if (max_idle)
      set_out(max_idle, auglab::sched::format_rational(metrics.max_idle));
  });
}

auglab_status auglab_sched_verify_kp00(const auglab_jobset* jobs,
                                       const char* eps, int* pass,
                                       char** json) {
  if (!jobs || !eps) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto rep = auglab::sched::verify_kp00(
        jobs->value, auglab::sched::parse_rational(eps));
    if (pass) *pass = rep.pass ? 1 : 0;
    if (json) {
      nlohmann::json j;
      j["pass"] = rep.pass;
      j["eps"] = eps;
      j["bound"] = auglab::sched::format_rational(rep.bound);
      j["setf_flow"] = auglab::sched::format_rational(rep.setf_flow);
      j["srpt_flow"] = auglab::sched::format_rational(rep.srpt_flow);
      j["ratio"] = rational_or_null(rep.ratio_defined, rep.ratio);
      set_out(json, dump(j));
    }
  });
}

auglab_status auglab_sched_verify_pointwise(const auglab_jobset* jobs,
                                            const char* eps, int* pass,
                                            char** json) {
  if (!jobs || !eps) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto rep = auglab::sched::verify_pointwise_bound(
        jobs->value, auglab::sched::parse_rational(eps));
    if (pass) *pass = rep.pass ? 1 : 0;
    if (json) {
      nlohmann::json j;
      j["pass"] = rep.pass;
      j["eps"] = eps;
      j["bound"] = auglab::sched::format_rational(rep.bound);
      j["samples"] = rep.samples;
      j["max_ratio"] = rational_or_null(rep.ratio_defined, rep.max_ratio);
      j["worst"] = {{"time", auglab::sched::format_rational(rep.worst_time)},
                    {"setf_active", rep.worst_setf},
                    {"srpt_active", rep.worst_srpt}};
      j["first_violation"] = rational_or_null(rep.first_violation.has_value(),
                                              rep.first_violation
                                                  ? *rep.first_violation
                                                  : auglab::sched::Rat(0));
      set_out(json, dump(j));
    }
  });
}

auglab_status auglab_sched_verify_idle(const auglab_jobset* jobs,
                                       const char* eps, int* pass,
                                       char** json) {
  if (!jobs || !eps) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto report = auglab::lab::verify_sched_idle(
        jobs->value, auglab::sched::parse_rational(eps));
    if (pass) *pass = report.pass ? 1 : 0;
    if (json) set_out(json, dump(auglab::lab::report_to_json(report)));
  });
}

auglab_status auglab_sched_interference(const auglab_jobset* jobs,
                                        const char* speed, const char* at,
                                        char** json) {
  if (!jobs || !speed || !json)
    return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto tl = auglab::sched::simulate_setf(
        jobs->value, auglab::sched::parse_rational(speed));
    auglab::sched::Rat t =
        at ? auglab::sched::parse_rational(at) : tl.horizon();
    auto result = auglab::sched::interference_sets(tl, t);
    nlohmann::json j;
    j["time"] = auglab::sched::format_rational(t);
    j["sets"] = nlohmann::json::array();
    for (const auto& [job, entry] : result.sets) {
      nlohmann::json js;
      js["job"] = job;
      js["members"] = entry.members;
      js["window_start"] = auglab::sched::format_rational(entry.window_start);
      j["sets"].push_back(std::move(js));
    }
    j["violations"] = result.violations;
    set_out(json, dump(j));
  });
}

auglab_status auglab_sched_curve(const auglab_jobset* jobs, const char* policy,
                                 const char* const* speeds, size_t count,
                                 int threads, char** curve_json) {
  if (!jobs || !policy || !speeds || !curve_json)
    return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    std::vector<auglab::sched::Rat> levels;
    for (size_t i = 0; i < count; ++i)
      levels.push_back(auglab::sched::parse_rational(speeds[i]));
    auto curve = auglab::lab::sched_curve(
        jobs->value, auglab::sched::parse_discipline(policy), levels,
        threads > 0 ? threads : 1);
    set_out(curve_json, dump(auglab::lab::curve_to_json(curve)));
  });
}

/* ---------------- shared ---------------- */

auglab_status auglab_curve_to_csv(const char* curve_json, char** csv) {
  if (!curve_json || !csv) return fail(AUGLAB_ERR_INVALID, "null argument");
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(curve_json, nullptr, false);
    if (j.is_discarded() || !j.contains("resource") || !j.contains("value"))
      throw auglab::ParseFailure("curve: expected JSON with resource/value");
    auglab::lab::Curve curve;
    for (const auto& v : j.at("resource"))
      curve.axis.push_back(v.get<double>());
    for (const auto& v : j.at("value"))
      curve.values.push_back(v.get<double>());
    if (curve.axis.size() != curve.values.size())
      throw auglab::ParseFailure("curve: resource/value length mismatch");
    set_out(csv, auglab::lab::curve_to_csv(curve));
  });
}

}  // extern "C"
