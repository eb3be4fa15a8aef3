// Command-line front end. Everything goes through the C API in
// auglab/auglab.h; this translation unit never touches the core library
// directly.

#include <auglab/auglab.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("AUGLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: AUGLAB_SEED is not an integer\n";
      std::exit(2);
    }
  }
  return kDefaultSeed;
}

[[noreturn]] void die() {
  std::cerr << "error: " << auglab_last_error() << '\n';
  std::exit(2);
}

void check(auglab_status status) {
  if (status != AUGLAB_OK) die();
}

std::string take(char* text) {
  std::string out = text ? text : "";
  auglab_string_free(text);
  return out;
}

// Output payloads go to --out when given, to stdout otherwise. Verdicts
// drive the exit code: 0 pass, 1 fail, 2 bad input.
void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    std::exit(2);
  }
  out << payload << '\n';
}

int verdict_exit(int pass) { return pass ? 0 : 1; }

struct TraceHandle {
  auglab_trace* ptr = nullptr;
  ~TraceHandle() { auglab_trace_free(ptr); }
};
struct NetworkHandle {
  auglab_network* ptr = nullptr;
  ~NetworkHandle() { auglab_network_free(ptr); }
};
struct JobsetHandle {
  auglab_jobset* ptr = nullptr;
  ~JobsetHandle() { auglab_jobset_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resource augmentation lab: paging, routing and scheduling "
               "engines with verification harnesses"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  int exit_code = 0;

  // ---------------- page ----------------
  auto* page = app.add_subcommand("page", "cache replacement simulations");
  page->require_subcommand(1);

  {
    auto* sim = page->add_subcommand("sim", "simulate one policy");
    auto opt = std::make_shared<std::string>("lru");
    auto trace_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto k = std::make_shared<int>(1);
    sim->add_option("--policy", *opt, "lru, fifo or fif");
    sim->add_option("--k", *k, "cache size")->required();
    sim->add_option("--trace", *trace_path, "trace file")->required();
    sim->add_option("--out", *out, "output JSON path");
    sim->callback([=]() {
      TraceHandle trace;
      check(auglab_trace_load_file(trace_path->c_str(), &trace.ptr));
      uint64_t faults = 0;
      char* record = nullptr;
      check(auglab_page_simulate(trace.ptr, opt->c_str(), *k, &faults,
                                 &record));
      size_t len = 0;
      auglab_trace_length(trace.ptr, &len);
      std::printf("%s k=%d: %llu faults over %zu requests\n", opt->c_str(),
                  *k, static_cast<unsigned long long>(faults), len);
      emit(*out, take(record));
    });
  }

  {
    auto* curve = page->add_subcommand("curve", "faults vs cache size");
    auto opt = std::make_shared<std::string>("lru");
    auto trace_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto kmin = std::make_shared<int>(1);
    auto kmax = std::make_shared<int>(20);
    auto threads = std::make_shared<int>(1);
    auto csv = std::make_shared<bool>(false);
    curve->add_option("--policy", *opt, "lru, fifo or fif");
    curve->add_option("--trace", *trace_path)->required();
    curve->add_option("--k-min", *kmin, "smallest cache size");
    curve->add_option("--k-max", *kmax, "largest cache size");
    curve->add_option("--jobs", *threads, "parallel curve evaluation");
    curve->add_flag("--csv", *csv, "emit CSV instead of JSON");
    curve->add_option("--out", *out, "output path");
    curve->callback([=]() {
      if (*kmin < 1 || *kmax < *kmin) {
        std::cerr << "error: need 1 <= k-min <= k-max\n";
        std::exit(2);
      }
      TraceHandle trace;
      check(auglab_trace_load_file(trace_path->c_str(), &trace.ptr));
      std::vector<int> ks;
      for (int k = *kmin; k <= *kmax; ++k) ks.push_back(k);
      char* payload = nullptr;
      check(auglab_page_curve(trace.ptr, opt->c_str(), ks.data(), ks.size(),
                              *threads, &payload));
      std::string body = take(payload);
      if (*csv) {
        char* converted = nullptr;
        check(auglab_curve_to_csv(body.c_str(), &converted));
        body = take(converted);
        if (!body.empty() && body.back() == '\n') body.pop_back();
      }
      std::printf("%s curve over k=%d..%d (%zu points)\n", opt->c_str(),
                  *kmin, *kmax, ks.size());
      emit(*out, body);
    });
  }

  {
    auto* loose = page->add_subcommand("loose", "classify cache sizes");
    auto trace_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto n = std::make_shared<int>(20);
    auto eps = std::make_shared<double>(0.05);
    auto delta = std::make_shared<double>(0.25);
    loose->add_option("--trace", *trace_path)->required();
    loose->add_option("--n", *n, "largest cache size considered");
    loose->add_option("--eps", *eps, "fault-rate threshold");
    loose->add_option("--delta", *delta, "exempt fraction");
    loose->add_option("--out", *out, "output JSON path");
    loose->callback([=, &exit_code]() {
      TraceHandle trace;
      check(auglab_trace_load_file(trace_path->c_str(), &trace.ptr));
      int pass = 0;
      char* payload = nullptr;
      check(auglab_page_loose_classify(trace.ptr, *n, *eps, *delta, &pass,
                                       &payload));
      std::printf("loose classification over k=1..%d: %s\n", *n,
                  pass ? "PASS" : "FAIL");
      emit(*out, take(payload));
      exit_code = verdict_exit(pass);
    });
  }

  {
    auto* ra = page->add_subcommand("verify-ra", "cache-size augmentation");
    ra->set_help_flag("--help", "print help");  // frees -h for the option
    auto opt = std::make_shared<std::string>("lru");
    auto trace_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto k = std::make_shared<int>(2);
    auto h = std::make_shared<int>(1);
    ra->add_option("--policy", *opt, "lru or fifo");
    ra->add_option("--trace", *trace_path)->required();
    ra->add_option("--k", *k, "online cache size")->required();
    ra->add_option("--h", *h, "offline cache size")->required();
    ra->add_option("--out", *out, "output JSON path");
    ra->callback([=, &exit_code]() {
      TraceHandle trace;
      check(auglab_trace_load_file(trace_path->c_str(), &trace.ptr));
      int pass = 0;
      char* payload = nullptr;
      check(auglab_page_verify_ra(trace.ptr, opt->c_str(), *k, *h, &pass,
                                  &payload));
      std::printf("%s with k=%d against offline h=%d: %s\n", opt->c_str(),
                  *k, *h, pass ? "PASS" : "FAIL");
      emit(*out, take(payload));
      exit_code = verdict_exit(pass);
    });
  }

  // ---------------- route ----------------
  auto* route = app.add_subcommand("route", "selfish routing solvers");
  route->require_subcommand(1);

  auto add_solve = [&](const char* name, const char* help, int optimal) {
    auto* cmd = route->add_subcommand(name, help);
    auto net_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-6);
    cmd->add_option("--net", *net_path, "network JSON file")->required();
    cmd->add_option("--tol", *tol, "relative gap target");
    cmd->add_option("--out", *out, "output JSON path");
    cmd->callback([=]() {
      NetworkHandle net;
      check(auglab_network_load_file(net_path->c_str(), &net.ptr));
      double cost = 0.0, gap = 0.0;
      char* payload = nullptr;
      check(auglab_route_solve(net.ptr, optimal, *tol, &cost, &gap,
                               &payload));
      std::printf("%s cost %.6f (gap %.3g)\n",
                  optimal ? "optimal" : "equilibrium", cost, gap);
      emit(*out, take(payload));
    });
  };
  add_solve("eq", "equilibrium flow", 0);
  add_solve("opt", "minimum-cost flow", 1);

  {
    auto* poa = route->add_subcommand("poa", "price of anarchy");
    auto net_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-6);
    poa->add_option("--net", *net_path)->required();
    poa->add_option("--tol", *tol);
    poa->add_option("--out", *out, "output JSON path");
    poa->callback([=]() {
      NetworkHandle net;
      check(auglab_network_load_file(net_path->c_str(), &net.ptr));
      double value = 0.0;
      char* payload = nullptr;
      check(auglab_route_poa(net.ptr, *tol, &value, &payload));
      std::printf("price of anarchy %.4f\n", value);
      emit(*out, take(payload));
    });
  }

  {
    auto* rt = route->add_subcommand("verify-rt", "rate augmentation bound");
    auto net_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-6);
    auto slack = std::make_shared<double>(1e-5);
    auto deltas =
        std::make_shared<std::vector<double>>(std::vector<double>{
            0.25, 0.5, 1.0, 2.0});
    rt->add_option("--net", *net_path)->required();
    rt->add_option("--deltas", *deltas, "augmentation factors")
        ->delimiter(',');
    rt->add_option("--slack", *slack, "additive tolerance");
    rt->add_option("--tol", *tol);
    rt->add_option("--out", *out, "output JSON path");
    rt->callback([=, &exit_code]() {
      NetworkHandle net;
      check(auglab_network_load_file(net_path->c_str(), &net.ptr));
      int pass = 0;
      char* payload = nullptr;
      check(auglab_route_verify_rt(net.ptr, deltas->data(), deltas->size(),
                                   *slack, *tol, &pass, &payload));
      std::printf("rate augmentation over %zu deltas: %s\n", deltas->size(),
                  pass ? "PASS" : "FAIL");
      emit(*out, take(payload));
      exit_code = verdict_exit(pass);
    });
  }

  {
    auto* bi = route->add_subcommand("verify-bicrit",
                                     "capacity augmentation bound");
    auto net_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-6);
    auto slack = std::make_shared<double>(1e-5);
    bi->add_option("--net", *net_path)->required();
    bi->add_option("--slack", *slack);
    bi->add_option("--tol", *tol);
    bi->add_option("--out", *out, "output JSON path");
    bi->callback([=, &exit_code]() {
      NetworkHandle net;
      check(auglab_network_load_file(net_path->c_str(), &net.ptr));
      int pass = 0;
      char* payload = nullptr;
      check(auglab_route_verify_bicrit(net.ptr, *slack, *tol, &pass,
                                       &payload));
      std::printf("capacity augmentation: %s\n", pass ? "PASS" : "FAIL");
      emit(*out, take(payload));
      exit_code = verdict_exit(pass);
    });
  }

  {
    auto* loose = route->add_subcommand("loose", "anarchy across a rate band");
    auto net_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-6);
    auto rate = std::make_shared<double>(1.0);
    auto samples = std::make_shared<int>(9);
    auto beta = std::make_shared<double>(2.0);
    loose->add_option("--net", *net_path)->required();
    loose->add_option("--rate", *rate, "top of the sampled band")->required();
    loose->add_option("--samples", *samples);
    loose->add_option("--beta", *beta);
    loose->add_option("--tol", *tol);
    loose->add_option("--out", *out, "output JSON path");
    loose->callback([=]() {
      NetworkHandle net;
      check(auglab_network_load_file(net_path->c_str(), &net.ptr));
      double alpha = 0.0;
      char* payload = nullptr;
      check(auglab_route_loose(net.ptr, *rate, *samples, *beta, *tol, &alpha,
                               &payload));
      std::printf("fraction within beta*log(pi): %.4f\n", alpha);
      emit(*out, take(payload));
    });
  }

  // ---------------- sched ----------------
  auto* sched = app.add_subcommand("sched", "preemptive scheduling");
  sched->require_subcommand(1);

  {
    auto* sim = sched->add_subcommand("sim", "simulate one discipline");
    auto jobs_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto policy = std::make_shared<std::string>("srpt");
    auto speed = std::make_shared<std::string>("1");
    sim->add_option("--jobs", *jobs_path, "job JSON file")->required();
    sim->add_option("--policy", *policy, "srpt or setf");
    sim->add_option("--speed", *speed, "machine speed (rational)");
    sim->add_option("--out", *out, "timeline JSON path");
    sim->callback([=]() {
      JobsetHandle jobs;
      check(auglab_jobset_load_file(jobs_path->c_str(), &jobs.ptr));
      char* timeline = nullptr;
      char* flow = nullptr;
      char* idle = nullptr;
      check(auglab_sched_simulate(jobs.ptr, policy->c_str(), speed->c_str(),
                                  &timeline, &flow, &idle));
      std::printf("%s at speed %s: total flow %s, max idle %s\n",
                  policy->c_str(), speed->c_str(), take(flow).c_str(),
                  take(idle).c_str());
      emit(*out, take(timeline));
    });
  }

  auto add_sched_verify = [&](const char* name, const char* help,
                              auto api_fn) {
    auto* cmd = sched->add_subcommand(name, help);
    auto jobs_path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto eps = std::make_shared<std::string>("1/10");
    cmd->add_option("--jobs", *jobs_path, "job JSON file")->required();
    cmd->add_option("--eps", *eps, "speed surplus (rational)");
    cmd->add_option("--out", *out, "output JSON path");
    cmd->callback([=, &exit_code]() {
      JobsetHandle jobs;
      check(auglab_jobset_load_file(jobs_path->c_str(), &jobs.ptr));
      int pass = 0;
      char* payload = nullptr;
      check(api_fn(jobs.ptr, eps->c_str(), &pass, &payload));
      std::printf("%s at eps=%s: %s\n", name, eps->c_str(),
                  pass ? "PASS" : "FAIL");
      emit(*out, take(payload));
      exit_code = verdict_exit(pass);
    });
  };
  add_sched_verify("verify-kp00", "total flow time under speed scaling",
                   auglab_sched_verify_kp00);
  add_sched_verify("verify-pointwise", "active-set bound at every instant",
                   auglab_sched_verify_pointwise);
  add_sched_verify("verify-idle", "max idle time under speed scaling",
                   auglab_sched_verify_idle);

  // ---------------- gen ----------------
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  auto seed = std::make_shared<std::uint64_t>(default_seed());
  auto add_seed_option = [seed](CLI::App* cmd) {
    cmd->add_option("--seed", *seed, "generator seed (env AUGLAB_SEED)");
  };

  {
    auto* cyc = gen->add_subcommand("cyclic", "round-robin paging trace");
    auto k = std::make_shared<int>(2);
    auto length = std::make_shared<std::size_t>(100);
    auto out = std::make_shared<std::string>();
    cyc->add_option("--k", *k, "cache size the trace targets")->required();
    cyc->add_option("--length", *length)->required();
    cyc->add_option("--out", *out)->required();
    cyc->callback([=]() {
      TraceHandle trace;
      check(auglab_trace_gen_cyclic(*k, *length, &trace.ptr));
      check(auglab_trace_save_file(trace.ptr, out->c_str()));
      std::printf("cyclic trace over %d pages, %zu requests -> %s\n", *k + 1,
                  *length, out->c_str());
    });
  }

  {
    auto* adv = gen->add_subcommand("adaptive", "always-miss paging trace");
    auto policy = std::make_shared<std::string>("lru");
    auto k = std::make_shared<int>(2);
    auto length = std::make_shared<std::size_t>(100);
    auto out = std::make_shared<std::string>();
    adv->add_option("--policy", *policy, "lru or fifo");
    adv->add_option("--k", *k)->required();
    adv->add_option("--length", *length)->required();
    adv->add_option("--out", *out)->required();
    adv->callback([=]() {
      TraceHandle trace;
      check(auglab_trace_gen_adaptive(policy->c_str(), *k, *length,
                                      &trace.ptr));
      check(auglab_trace_save_file(trace.ptr, out->c_str()));
      std::printf("adaptive trace against %s, %zu requests -> %s\n",
                  policy->c_str(), *length, out->c_str());
    });
  }

  {
    auto* loc = gen->add_subcommand("locality", "seeded locality trace");
    auto universe = std::make_shared<int>(30);
    auto length = std::make_shared<std::size_t>(10000);
    auto locality = std::make_shared<double>(0.9);
    auto window = std::make_shared<int>(8);
    auto out = std::make_shared<std::string>();
    loc->add_option("--universe", *universe, "distinct pages");
    loc->add_option("--length", *length);
    loc->add_option("--locality", *locality, "re-reference probability");
    loc->add_option("--window", *window, "recent distinct pages kept hot");
    loc->add_option("--out", *out)->required();
    add_seed_option(loc);
    loc->callback([=]() {
      TraceHandle trace;
      check(auglab_trace_gen_locality(*universe, *length, *seed, *locality,
                                      *window, &trace.ptr));
      check(auglab_trace_save_file(trace.ptr, out->c_str()));
      std::printf("locality trace (seed %llu) -> %s\n",
                  static_cast<unsigned long long>(*seed), out->c_str());
    });
  }

  {
    auto* ex = gen->add_subcommand("example-setf",
                                   "staggered near-unit jobs");
    auto eps = std::make_shared<std::string>("1/10");
    auto delta = std::make_shared<std::string>("1/100");
    auto out = std::make_shared<std::string>();
    ex->add_option("--eps", *eps)->required();
    ex->add_option("--delta", *delta)->required();
    ex->add_option("--out", *out)->required();
    ex->callback([=]() {
      JobsetHandle jobs;
      check(auglab_jobset_gen_example(eps->c_str(), delta->c_str(),
                                      &jobs.ptr));
      check(auglab_jobset_save_file(jobs.ptr, out->c_str()));
      std::printf("example job set (eps %s, delta %s) -> %s\n", eps->c_str(),
                  delta->c_str(), out->c_str());
    });
  }

  {
    auto* rj = gen->add_subcommand("random-jobs", "seeded rational job set");
    auto max_jobs = std::make_shared<int>(12);
    auto out = std::make_shared<std::string>();
    rj->add_option("--max-jobs", *max_jobs);
    rj->add_option("--out", *out)->required();
    add_seed_option(rj);
    rj->callback([=]() {
      JobsetHandle jobs;
      check(auglab_jobset_gen_random(*seed, *max_jobs, &jobs.ptr));
      check(auglab_jobset_save_file(jobs.ptr, out->c_str()));
      std::printf("random job set (seed %llu) -> %s\n",
                  static_cast<unsigned long long>(*seed), out->c_str());
    });
  }

  auto save_net = [](auglab_network* ptr, const std::string& out) {
    check(auglab_network_save_file(ptr, out.c_str()));
  };

  {
    auto* pg = gen->add_subcommand("pigou", "two-link congestion fixture");
    auto degree = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    pg->add_option("--degree", *degree, "bottom-edge exponent");
    pg->add_option("--out", *out)->required();
    pg->callback([=]() {
      NetworkHandle net;
      check(auglab_network_pigou(*degree, &net.ptr));
      save_net(net.ptr, *out);
      std::printf("pigou network (degree %d) -> %s\n", *degree, out->c_str());
    });
  }

  {
    auto* mm = gen->add_subcommand("mm1", "single queueing edge");
    auto capacity = std::make_shared<double>(2.0);
    auto rate = std::make_shared<double>(0.5);
    auto out = std::make_shared<std::string>();
    mm->add_option("--capacity", *capacity)->required();
    mm->add_option("--rate", *rate)->required();
    mm->add_option("--out", *out)->required();
    mm->callback([=]() {
      NetworkHandle net;
      check(auglab_network_mm1(*capacity, *rate, &net.ptr));
      save_net(net.ptr, *out);
      std::printf("mm1 network (u=%.6g, r=%.6g) -> %s\n", *capacity, *rate,
                  out->c_str());
    });
  }

  {
    auto* tc = gen->add_subcommand("two-commodity", "shared-edge fixture");
    auto out = std::make_shared<std::string>();
    tc->add_option("--out", *out)->required();
    tc->callback([=]() {
      NetworkHandle net;
      check(auglab_network_two_commodity(&net.ptr));
      save_net(net.ptr, *out);
      std::printf("two-commodity network -> %s\n", out->c_str());
    });
  }

  {
    auto* rn = gen->add_subcommand("random-net", "seeded 10-vertex network");
    auto out = std::make_shared<std::string>();
    rn->add_option("--out", *out)->required();
    add_seed_option(rn);
    rn->callback([=]() {
      NetworkHandle net;
      check(auglab_network_gen_random(*seed, &net.ptr));
      save_net(net.ptr, *out);
      std::printf("random network (seed %llu) -> %s\n",
                  static_cast<unsigned long long>(*seed), out->c_str());
    });
  }

  {
    auto* pn = gen->add_subcommand("parallel-net",
                                   "seeded parallel-link network");
    auto out = std::make_shared<std::string>();
    pn->add_option("--out", *out)->required();
    add_seed_option(pn);
    pn->callback([=]() {
      NetworkHandle net;
      check(auglab_network_gen_parallel(*seed, &net.ptr));
      save_net(net.ptr, *out);
      std::printf("parallel-link network (seed %llu) -> %s\n",
                  static_cast<unsigned long long>(*seed), out->c_str());
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}
