#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lab.hpp"

using namespace auglab;
using namespace auglab::lab;

TEST_CASE("paging curve is nonincreasing in the cache size") {
  auto trace = paging::gen_cyclic(3, 600);
  Curve c = paging_curve(trace, paging::Policy::Lru, {1, 2, 3, 4, 5, 6});
  for (std::size_t i = 0; i + 1 < c.values.size(); ++i)
    CHECK(c.values[i + 1] <= c.values[i]);
  // Parallel evaluation returns the same curve.
  Curve par = paging_curve(trace, paging::Policy::Lru, {1, 2, 3, 4, 5, 6}, 4);
  CHECK(par.values == c.values);
}

TEST_CASE("routing curve on the two-link fixture") {
  Curve c = routing_curve(routing::pigou(), RoutingObjective::Equilibrium,
                          {0.5, 1.0}, {1e-9, 200000});
  REQUIRE(c.values.size() == 2);
  CHECK(c.values[0] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(c.values[1] == doctest::Approx(1.0).epsilon(1e-6));

  Curve o = routing_curve(routing::pigou(), RoutingObjective::Optimal,
                          {0.5, 1.0}, {1e-10, 200000});
  CHECK(o.values[0] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(o.values[1] == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("scheduling curve halves with doubled speed") {
  auto jobs = sched::make_jobset({{1, sched::Rat(0), sched::Rat(1)}});
  for (auto d : {sched::Discipline::Setf, sched::Discipline::Srpt}) {
    Curve c = sched_curve(jobs, d, {sched::Rat(1), sched::Rat(2)});
    CHECK(c.values[0] == doctest::Approx(1.0));
    CHECK(c.values[1] == doctest::Approx(0.5));
  }
}

TEST_CASE("curve export") {
  auto trace = paging::gen_cyclic(2, 10);
  Curve c = paging_curve(trace, paging::Policy::Lru, {1, 2, 3});
  std::string csv = curve_to_csv(c);
  CHECK(csv.rfind("resource,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  auto j = curve_to_json(c);
  CHECK(j["resource"].size() == 3);
  CHECK(j["value"].size() == 3);
}

TEST_CASE("paging augmentation report") {
  auto trace = paging::gen_locality(20, 4000, 11, 0.85, 6);

  SUBCASE("with one slot each, both policies fault identically") {
    Report r = verify_paging_ra(trace, 1, 1);
    CHECK(r.pass);
    CHECK(r.left == r.right);  // k=h=1 makes the ratio 1
    CHECK(r.slack == 1.0);
  }

  SUBCASE("sweep over cache sizes for both online policies") {
    for (auto policy : {paging::Policy::Lru, paging::Policy::Fifo})
      for (int k = 1; k <= 12; ++k)
        for (int h = 1; h <= k; ++h) {
          Report r = verify_paging_ra(trace, k, h, policy);
          CAPTURE(k);
          CAPTURE(h);
          REQUIRE(r.pass);
          REQUIRE(r.pass == (r.left <= r.right + r.slack));
        }
  }

  SUBCASE("adversarial sequences pass as well") {
    for (const auto& z : {paging::gen_cyclic(4, 2000),
                          paging::gen_adaptive(paging::Policy::Lru, 5, 2000)})
      for (int k = 1; k <= 8; ++k)
        for (int h = 1; h <= k; ++h) REQUIRE(verify_paging_ra(z, k, h).pass);
  }

  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(verify_paging_ra(trace, 2, 3), InvalidInput);
    CHECK_THROWS_AS(verify_paging_ra(trace, 2, 0), InvalidInput);
    CHECK_THROWS_AS(verify_paging_ra(trace, 2, 1, paging::Policy::Fif),
                    InvalidInput);
  }
}

TEST_CASE("routing augmentation reports") {
  routing::SolveOptions opts{1e-9, 200000};
  for (double delta : {0.25, 0.5, 1.0, 2.0}) {
    Report r = verify_routing_rt(routing::pigou(10), delta, 1e-5, opts);
    CAPTURE(delta);
    CHECK(r.pass);
    CHECK(r.pass == (r.left <= r.right + r.slack));
  }
  Report bi = verify_routing_bicrit(routing::mm1_single(2.0, 0.5), 1e-5,
                                    opts);
  CHECK(bi.pass);
  CHECK_THROWS_AS(verify_routing_rt(routing::pigou(), 0.0), InvalidInput);
}

TEST_CASE("idle-time augmentation report") {
  auto jobs = sched::make_jobset({{1, sched::Rat(0), sched::Rat(1)},
                                  {2, sched::Rat(0), sched::Rat(1)}});
  Report r = verify_sched_idle(jobs, sched::Rat(1));
  CHECK(r.pass);
  // SETF at speed 2 finishes both by t=1: idle 1/2 each; optimum is 1.
  CHECK(r.left == doctest::Approx(0.5));
  CHECK(r.right == doctest::Approx(1.0));
}

TEST_CASE("loose classification: repeated single page") {
  paging::Trace trace;
  trace.universe = 1;
  trace.requests.assign(500, 0);
  auto c = loose_classify(trace, 20, 0.05, 0.25);
  CHECK(c.exempt_count == 0);
  for (const auto& e : c.entries) {
    CHECK(e.category == LooseCategory::Competitive);
    CHECK(e.online_faults == 1);
    CHECK(e.pass);
  }
}

TEST_CASE("loose classification: cyclic adversary") {
  auto trace = paging::gen_cyclic(5, 5000);
  auto c = loose_classify(trace, 20, 0.05, 0.25);
  CHECK(c.exempt_count <= c.exempt_cap);
  CHECK(c.exempt_cap == 5);
  for (const auto& e : c.entries) {
    if (e.category == LooseCategory::Exempt) continue;
    CAPTURE(e.k);
    REQUIRE(e.pass);
    REQUIRE(e.pass == (e.left <= e.right + e.slack));
  }
}

TEST_CASE("loose classification: locality workloads") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto trace = paging::gen_locality(30, 10000, seed, 0.9, 8);
    for (auto [eps, delta] : {std::pair{0.05, 0.25}, std::pair{0.01, 0.1}}) {
      auto c = loose_classify(trace, 20, eps, delta);
      CAPTURE(seed);
      REQUIRE(c.exempt_count <= c.exempt_cap);
      for (const auto& e : c.entries) {
        if (e.category == LooseCategory::Exempt) continue;
        CAPTURE(e.k);
        REQUIRE(e.pass);
      }
    }
  }
}

TEST_CASE("loose classification: degenerate parameters") {
  paging::Trace trace;
  trace.universe = 2;
  trace.requests = {0, 1};
  CHECK_THROWS_AS(loose_classify(trace, 1, 0.5, 1e-12), InvalidInput);
  CHECK_THROWS_AS(loose_classify(trace, 0, 0.5, 0.5), InvalidInput);
  CHECK_THROWS_AS(loose_classify(trace, 5, 1.5, 0.5), InvalidInput);
}

TEST_CASE("loose classification JSON") {
  auto trace = paging::gen_cyclic(3, 200);
  auto c = loose_classify(trace, 10, 0.1, 0.3);
  auto j = loose_to_json(c);
  CHECK(j["entries"].size() == 10);
  CHECK(j["b"].get<int>() == c.b);
}

TEST_CASE("routing loose curve on the two-link fixture") {
  routing::SolveOptions opts{1e-9, 200000};
  auto rep = routing_loose_curve(routing::pigou(), 1.0, 9, 2.0, opts);
  REQUIRE(rep.pi_defined);
  CHECK(rep.pi == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(rep.threshold == doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-4));
  CHECK(rep.alpha_hat == 1.0);
  for (const auto& [rate, poa] : rep.samples) CHECK(poa <= 4.0 / 3.0 + 1e-4);
}

TEST_CASE("routing loose curve on a single edge") {
  auto rep = routing_loose_curve(routing::mm1_single(3.0, 1.0), 1.0, 5, 2.0);
  REQUIRE(rep.pi_defined);
  CHECK(rep.alpha_hat == 1.0);
  for (const auto& [rate, poa] : rep.samples)
    CHECK(poa == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("steep two-link gadget defeats a small beta") {
  // Constant 1 against (2x)^50: the anarchy gap stays near 1.8 over the
  // whole half-to-full rate window, while beta = 1 allows only ln 2.
  routing::Network net;
  net.vertices = 2;
  net.edges.push_back({0, 1, routing::CostFunction::constant(1.0)});
  net.edges.push_back(
      {0, 1, routing::CostFunction::monomial(std::pow(2.0, 50), 50)});
  net.commodities.push_back({0, 1, 1.0});
  routing::SolveOptions opts{1e-10, 300000};
  auto rep = routing_loose_curve(net, 1.0, 6, 1.0, opts);
  REQUIRE(rep.pi_defined);
  CHECK(rep.alpha_hat == 0.0);
  for (const auto& [rate, poa] : rep.samples) CHECK(poa >= 1.7);
}

TEST_CASE("routing loose curve reports an undefined base ratio") {
  routing::Network zero;
  zero.vertices = 2;
  zero.edges.push_back({0, 1, routing::CostFunction::constant(0.0)});
  zero.commodities.push_back({0, 1, 1.0});
  auto rep = routing_loose_curve(zero, 1.0, 3, 2.0);
  CHECK_FALSE(rep.pi_defined);
  auto j = routing_loose_to_json(rep);
  CHECK(j["pi_defined"] == false);
}

TEST_CASE("routing loose curve argument checks") {
  CHECK_THROWS_AS(routing_loose_curve(routing::pigou(), 1.0, 1, 1.0),
                  InvalidInput);
  CHECK_THROWS_AS(routing_loose_curve(routing::pigou(), 1.0, 4, 0.0),
                  InvalidInput);
}

TEST_CASE("report JSON shape") {
  auto trace = paging::gen_cyclic(2, 50);
  Report r = verify_paging_ra(trace, 4, 2);
  auto j = report_to_json(r);
  CHECK(j["pass"].get<bool>() == r.pass);
  CHECK(j["left"].get<double>() == r.left);
  CHECK(j["context"]["blocks"].is_number());
}
