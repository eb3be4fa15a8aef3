#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "paging.hpp"

using namespace auglab;
using namespace auglab::paging;

namespace {

Trace make_trace(std::vector<std::int32_t> req, std::int32_t universe) {
  Trace t;
  t.requests = std::move(req);
  t.universe = universe;
  return t;
}

Trace random_trace(std::mt19937_64& gen, std::int32_t universe,
                   std::size_t length) {
  Trace t;
  t.universe = universe;
  t.requests.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    t.requests.push_back(
        static_cast<std::int32_t>(uniform_below(gen, universe)));
  return t;
}

}  // namespace

TEST_CASE("cyclic sequence thrashes LRU but not FIF") {
  Trace z = make_trace({1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3}, 4);
  CHECK(simulate(Policy::Lru, 2, z).faults == 12);

  Trace cyc = gen_cyclic(2, 600);
  CHECK(simulate(Policy::Lru, 2, cyc).faults == 600);
  CHECK(simulate(Policy::Fif, 2, cyc).faults <= 1 + 600 / 2);
}

TEST_CASE("single page only cold-misses") {
  Trace z = make_trace({1, 1, 1, 1}, 2);
  for (Policy p : {Policy::Lru, Policy::Fifo, Policy::Fif})
    CHECK(simulate(p, 1, z).faults == 1);
}

TEST_CASE("FIF beats LRU on the 7-request example") {
  Trace z = make_trace({1, 2, 3, 2, 1, 4, 2}, 5);
  CHECK(simulate(Policy::Fif, 2, z).faults == 5);
  CHECK(simulate(Policy::Lru, 2, z).faults == 6);
  CHECK(offline_opt_bruteforce(z, 2) == 5);
}

TEST_CASE("simulate rejects bad input") {
  Trace z = make_trace({0, 1}, 2);
  CHECK_THROWS_AS(simulate(Policy::Lru, 0, z), InvalidInput);
  Trace bad = make_trace({0, 5}, 2);
  CHECK_THROWS_AS(simulate(Policy::Lru, 2, bad), InvalidInput);
}

TEST_CASE("result bookkeeping is consistent") {
  std::mt19937_64 gen(7);
  Trace z = random_trace(gen, 6, 300);
  auto res = simulate(Policy::Lru, 3, z);
  std::uint64_t set = 0;
  for (auto f : res.fault_flags) set += f;
  CHECK(set == res.faults);
  CHECK(res.fault_flags.size() == z.requests.size());
  CHECK(res.final_cache.size() <= 3);
}

TEST_CASE("demand paging: cache changes only on faults") {
  std::mt19937_64 gen(11);
  Trace z = random_trace(gen, 5, 60);
  // Prefix re-simulation only makes sense for online policies; FIF's
  // eviction choices depend on the lookahead horizon.
  for (Policy p : {Policy::Lru, Policy::Fifo}) {
    auto full = simulate(p, 2, z);
    std::vector<std::int32_t> prev_cache;
    for (std::size_t i = 0; i < z.requests.size(); ++i) {
      Trace prefix = z;
      prefix.requests.resize(i + 1);
      auto res = simulate(p, 2, prefix);
      if (!full.fault_flags[i]) {
        CHECK(res.final_cache == prev_cache);
      }
      prev_cache = res.final_cache;
    }
  }
  // FIF: a repeat of the previous request can never fault.
  auto fif = simulate(Policy::Fif, 2, z);
  for (std::size_t i = 1; i < z.requests.size(); ++i)
    if (z.requests[i] == z.requests[i - 1]) CHECK(!fif.fault_flags[i]);
}

TEST_CASE("offline oracle basics") {
  CHECK(offline_opt_bruteforce(make_trace({}, 1), 3) == 0);
  CHECK(offline_opt_bruteforce(make_trace({1, 2, 1, 2}, 3), 2) == 2);
  Trace z = make_trace({0, 1, 2, 3, 0, 1, 2, 3}, 4);
  auto big = make_trace(std::vector<std::int32_t>(25, 0), 1);
  CHECK_THROWS_AS(offline_opt_bruteforce(big, 1), GuardExceeded);
  OracleGuard loose{1, 100};
  CHECK(offline_opt_bruteforce(big, 1, loose) == 1);
  (void)z;
}

TEST_CASE("FIF matches the offline optimum exhaustively (short sequences)") {
  // Every sequence of length <= 7 over 4 pages, k in {2, 3}.
  for (std::size_t len = 0; len <= 7; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      Trace z;
      z.universe = 4;
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i) {
        z.requests.push_back(static_cast<std::int32_t>(c % 4));
        c /= 4;
      }
      for (int k : {2, 3}) {
        CAPTURE(len);
        CAPTURE(code);
        REQUIRE(simulate(Policy::Fif, k, z).faults ==
                offline_opt_bruteforce(z, k));
      }
    }
  }
}

TEST_CASE("FIF matches the offline optimum on random guarded traces") {
  std::mt19937_64 gen(123);
  for (int trial = 0; trial < 300; ++trial) {
    Trace z = random_trace(gen, 6, 1 + uniform_below(gen, 18));
    int k = 1 + static_cast<int>(uniform_below(gen, 4));
    REQUIRE(simulate(Policy::Fif, k, z).faults ==
            offline_opt_bruteforce(z, k));
  }
}

TEST_CASE("block decomposition") {
  Trace z = make_trace({1, 2, 3, 2, 1, 4, 2}, 5);
  auto blocks = decompose_blocks(z, 2);
  REQUIRE(blocks.count() == 4);
  CHECK(blocks.ranges[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(blocks.ranges[1] == std::pair<std::size_t, std::size_t>{2, 4});
  CHECK(blocks.ranges[2] == std::pair<std::size_t, std::size_t>{4, 6});
  CHECK(blocks.ranges[3] == std::pair<std::size_t, std::size_t>{6, 7});

  CHECK(decompose_blocks(make_trace({0, 1, 0, 1, 0}, 2), 2).count() == 1);

  Trace cyc = gen_cyclic(2, 12);
  Trace twopage = make_trace(cyc.requests, cyc.universe);
  // 12 cyclic requests over 3 pages with k=2: blocks of length 2.
  auto b = decompose_blocks(twopage, 2);
  CHECK(b.count() == 6);
  for (auto [lo, hi] : b.ranges) CHECK(hi - lo == 2);
}

TEST_CASE("blocks partition the sequence and respect the distinct bound") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    Trace z = random_trace(gen, 8, uniform_below(gen, 200));
    int k = 1 + static_cast<int>(uniform_below(gen, 6));
    auto blocks = decompose_blocks(z, k);
    std::size_t pos = 0;
    for (std::size_t bi = 0; bi < blocks.count(); ++bi) {
      auto [lo, hi] = blocks.ranges[bi];
      REQUIRE(lo == pos);
      REQUIRE(hi > lo);
      pos = hi;
      std::set<std::int32_t> distinct(z.requests.begin() + lo,
                                      z.requests.begin() + hi);
      REQUIRE(static_cast<int>(distinct.size()) <= k);
      if (hi < z.requests.size()) {
        distinct.insert(z.requests[hi]);
        REQUIRE(static_cast<int>(distinct.size()) == k + 1);  // maximality
      }
    }
    REQUIRE(pos == z.requests.size());
  }
}

TEST_CASE("block bounds from the decomposition") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 40; ++trial) {
    Trace z = trial % 2 == 0 ? random_trace(gen, 10, 400)
                             : gen_locality(10, 400, trial, 0.8, 4);
    for (int k = 1; k <= 8; ++k) {
      auto blocks = decompose_blocks(z, k);
      std::uint64_t b = blocks.count();
      for (Policy p : {Policy::Lru, Policy::Fifo}) {
        REQUIRE(simulate(p, k, z).faults <=
                b * static_cast<std::uint64_t>(k));
      }
      for (int h = 1; h <= k; ++h) {
        std::uint64_t fif = simulate(Policy::Fif, h, z).faults;
        std::uint64_t lower =
            b == 0 ? 0 : (b - 1) * static_cast<std::uint64_t>(k - h + 1);
        REQUIRE(fif >= lower);
      }
    }
  }
}

TEST_CASE("LRU fault count is nonincreasing in the cache size") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    Trace z;
    switch (trial % 3) {
      case 0: z = random_trace(gen, 12, 500); break;
      case 1: z = gen_cyclic(3 + trial % 5, 500); break;
      default: z = gen_locality(12, 500, trial, 0.9, 5); break;
    }
    std::uint64_t prev = std::numeric_limits<std::uint64_t>::max();
    for (int k = 1; k <= 20; ++k) {
      std::uint64_t cur = simulate(Policy::Lru, k, z).faults;
      REQUIRE(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("adaptive adversary forces a fault per request") {
  Trace z = gen_adaptive(Policy::Lru, 3, 30);
  CHECK(z.requests.size() == 30);
  CHECK(simulate(Policy::Lru, 3, z).faults == 30);
  CHECK(simulate(Policy::Fifo, 4,
                 gen_adaptive(Policy::Fifo, 4, 50)).faults == 50);
  CHECK_THROWS_AS(gen_adaptive(Policy::Fif, 3, 10), InvalidInput);
}

TEST_CASE("adaptive adversary against LRU warms into the cyclic pattern") {
  int k = 4;
  Trace adaptive = gen_adaptive(Policy::Lru, k, 60);
  Trace cyclic = gen_cyclic(k, 60);
  // After one full round the two sequences coincide.
  for (std::size_t i = k + 1; i < 60; ++i)
    CHECK(adaptive.requests[i] == cyclic.requests[i]);
}

TEST_CASE("adaptive adversary approaches the k/(k-h+1) ratio") {
  int k = 4, h = 2;
  Trace z = gen_adaptive(Policy::Lru, k, 4000);
  double lru = static_cast<double>(simulate(Policy::Lru, k, z).faults);
  double fif = static_cast<double>(simulate(Policy::Fif, h, z).faults);
  double bound = static_cast<double>(k) / (k - h + 1);
  CHECK(lru / fif >= 0.9 * bound);
  CHECK(lru / fif <= bound + 0.1);
}

TEST_CASE("locality generator") {
  Trace a = gen_locality(20, 1000, 42, 0.9, 8);
  Trace b = gen_locality(20, 1000, 42, 0.9, 8);
  CHECK(a.requests == b.requests);  // determinism

  Trace c = gen_locality(20, 1000, 43, 0.9, 8);
  CHECK(a.requests != c.requests);

  // locality 1: after the first request everything stays in the window.
  Trace d = gen_locality(20, 500, 7, 1.0, 3);
  std::set<std::int32_t> seen(d.requests.begin(), d.requests.end());
  CHECK(seen.size() <= 4);  // first draw plus a window of 3

  // locality 0 is i.i.d. uniform: expect every page to appear.
  Trace e = gen_locality(10, 2000, 9, 0.0, 3);
  std::set<std::int32_t> all(e.requests.begin(), e.requests.end());
  CHECK(all.size() == 10);
}

TEST_CASE("trace file round-trip") {
  Trace z = gen_locality(15, 200, 3, 0.7, 6);
  std::stringstream buf;
  save_trace(z, buf);
  Trace back = load_trace(buf);
  CHECK(back.universe == z.universe);
  CHECK(back.requests == z.requests);

  std::stringstream bad("x=3\n1\n");
  CHECK_THROWS_AS(load_trace(bad), ParseFailure);
  std::stringstream bad2("N=3\n1\nq\n");
  CHECK_THROWS_AS(load_trace(bad2), ParseFailure);
}

TEST_CASE("token densification") {
  Trace t = densify_tokens({"lib.so", "app", "lib.so", "cfg", "app"});
  CHECK(t.universe == 3);
  CHECK(t.requests == std::vector<std::int32_t>{0, 1, 0, 2, 1});
  CHECK(densify_tokens({}).universe == 1);
  // Dense ids preserve fault behavior of the original token stream.
  CHECK(simulate(Policy::Lru, 2, t).faults == 4);
}

TEST_CASE("policy names") {
  CHECK(parse_policy("lru") == Policy::Lru);
  CHECK(parse_policy("FIFO") == Policy::Fifo);
  CHECK(parse_policy("fif") == Policy::Fif);
  CHECK_THROWS_AS(parse_policy("mru"), InvalidInput);
  CHECK(policy_name(Policy::Fif) == "fif");
}
