#include "paging.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace auglab::paging {

namespace {

constexpr std::size_t kNoNextUse = std::numeric_limits<std::size_t>::max();

void check_cache_size(int cache_size) {
  if (cache_size < 1) throw InvalidInput("cache size k must be >= 1");
}

}  // namespace

Policy parse_policy(std::string_view name) {
  if (name == "lru" || name == "LRU") return Policy::Lru;
  if (name == "fifo" || name == "FIFO") return Policy::Fifo;
  if (name == "fif" || name == "FIF") return Policy::Fif;
  throw InvalidInput("unknown policy '" + std::string(name) +
                     "' (expected lru, fifo, or fif)");
}

std::string policy_name(Policy policy) {
  switch (policy) {
    case Policy::Lru: return "lru";
    case Policy::Fifo: return "fifo";
    case Policy::Fif: return "fif";
  }
  return "?";
}

void validate(const Trace& trace) {
  if (trace.universe < 1) throw InvalidInput("universe N must be >= 1");
  for (std::int32_t p : trace.requests) {
    if (p < 0 || p >= trace.universe)
      throw InvalidInput("request " + std::to_string(p) +
                         " outside universe [0, " +
                         std::to_string(trace.universe) + ")");
  }
}

OnlineCache::OnlineCache(Policy policy, int cache_size, std::int32_t universe)
    : policy_(policy), cache_size_(cache_size) {
  if (policy == Policy::Fif)
    throw InvalidInput("FIF is not an online policy");
  check_cache_size(cache_size);
  stamp_.assign(universe, -1);
  cached_.assign(universe, 0);
  members_.reserve(cache_size);
}

bool OnlineCache::request(std::int32_t page) {
  ++clock_;
  if (cached_[page]) {
    if (policy_ == Policy::Lru) stamp_[page] = clock_;
    return false;
  }
  if (static_cast<int>(members_.size()) == cache_size_) {
    std::size_t victim = 0;
    for (std::size_t i = 1; i < members_.size(); ++i)
      if (stamp_[members_[i]] < stamp_[members_[victim]]) victim = i;
    cached_[members_[victim]] = 0;
    members_[victim] = members_.back();
    members_.pop_back();
  }
  cached_[page] = 1;
  members_.push_back(page);
  stamp_[page] = clock_;  // insertion counts as first use
  return true;
}

namespace {

SimResult simulate_online(Policy policy, int cache_size, const Trace& trace) {
  OnlineCache cache(policy, cache_size, trace.universe);
  SimResult result;
  result.cache_size = cache_size;
  result.fault_flags.reserve(trace.requests.size());
  for (std::int32_t p : trace.requests) {
    bool fault = cache.request(p);
    result.fault_flags.push_back(fault ? 1 : 0);
    result.faults += fault ? 1 : 0;
  }
  result.final_cache = cache.members();
  std::sort(result.final_cache.begin(), result.final_cache.end());
  return result;
}

SimResult simulate_fif(int cache_size, const Trace& trace) {
  const auto& z = trace.requests;
  // next_use[i]: index of the next request of page z[i] after i.
  std::vector<std::size_t> next_use(z.size(), kNoNextUse);
  std::vector<std::size_t> latest(trace.universe, kNoNextUse);
  for (std::size_t i = z.size(); i-- > 0;) {
    next_use[i] = latest[z[i]];
    latest[z[i]] = i;
  }

  SimResult result;
  result.cache_size = cache_size;
  result.fault_flags.reserve(z.size());
  std::vector<std::uint8_t> cached(trace.universe, 0);
  std::vector<std::size_t> next_req(trace.universe, kNoNextUse);
  std::vector<std::int32_t> members;
  members.reserve(cache_size);

  for (std::size_t i = 0; i < z.size(); ++i) {
    std::int32_t p = z[i];
    if (cached[p]) {
      next_req[p] = next_use[i];
      result.fault_flags.push_back(0);
      continue;
    }
    if (static_cast<int>(members.size()) == cache_size) {
      // Evict the page requested furthest in the future; pages never
      // requested again count as infinitely far, lowest id among them.
      std::size_t victim = 0;
      for (std::size_t m = 1; m < members.size(); ++m) {
        std::size_t cand = next_req[members[m]];
        std::size_t best = next_req[members[victim]];
        if (cand > best ||
            (cand == best && members[m] < members[victim]))
          victim = m;
      }
      cached[members[victim]] = 0;
      members[victim] = members.back();
      members.pop_back();
    }
    cached[p] = 1;
    members.push_back(p);
    next_req[p] = next_use[i];
    result.fault_flags.push_back(1);
    ++result.faults;
  }
  result.final_cache = members;
  std::sort(result.final_cache.begin(), result.final_cache.end());
  return result;
}

}  // namespace

SimResult simulate(Policy policy, int cache_size, const Trace& trace) {
  check_cache_size(cache_size);
  validate(trace);
  if (policy == Policy::Fif) return simulate_fif(cache_size, trace);
  return simulate_online(policy, cache_size, trace);
}

std::uint64_t offline_opt_bruteforce(const Trace& trace, int cache_size,
                                     OracleGuard guard) {
  check_cache_size(cache_size);
  validate(trace);
  if (trace.universe > guard.max_universe)
    throw GuardExceeded("universe " + std::to_string(trace.universe) +
                        " exceeds oracle guard " +
                        std::to_string(guard.max_universe));
  if (trace.requests.size() > guard.max_length)
    throw GuardExceeded("length " + std::to_string(trace.requests.size()) +
                        " exceeds oracle guard " +
                        std::to_string(guard.max_length));
  if (trace.universe > 30)
    throw GuardExceeded("oracle supports at most 30 pages");

  // State: bitmask of cached pages -> fewest faults reaching it.
  std::unordered_map<std::uint32_t, std::uint64_t> states;
  states.emplace(0u, 0u);
  std::unordered_map<std::uint32_t, std::uint64_t> next;
  auto relax = [&next](std::uint32_t mask, std::uint64_t faults) {
    auto [it, inserted] = next.emplace(mask, faults);
    if (!inserted && faults < it->second) it->second = faults;
  };
  for (std::int32_t p : trace.requests) {
    next.clear();
    const std::uint32_t bit = 1u << p;
    for (const auto& [mask, faults] : states) {
      if (mask & bit) {
        relax(mask, faults);
      } else if (std::popcount(mask) < cache_size) {
        relax(mask | bit, faults + 1);
      } else {
        for (std::uint32_t rest = mask; rest;) {
          std::uint32_t victim = rest & (~rest + 1);
          rest ^= victim;
          relax((mask ^ victim) | bit, faults + 1);
        }
      }
    }
    states.swap(next);
  }
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (const auto& [mask, faults] : states) best = std::min(best, faults);
  return trace.requests.empty() ? 0 : best;
}

BlockDecomposition decompose_blocks(const Trace& trace, int cache_size) {
  check_cache_size(cache_size);
  validate(trace);
  BlockDecomposition blocks;
  std::vector<std::uint8_t> seen(trace.universe, 0);
  std::vector<std::int32_t> touched;
  std::size_t start = 0;
  int distinct = 0;
  for (std::size_t i = 0; i < trace.requests.size(); ++i) {
    std::int32_t p = trace.requests[i];
    if (!seen[p]) {
      if (distinct == cache_size) {
        blocks.ranges.emplace_back(start, i);
        for (std::int32_t q : touched) seen[q] = 0;
        touched.clear();
        distinct = 0;
        start = i;
      }
      seen[p] = 1;
      touched.push_back(p);
      ++distinct;
    }
  }
  if (start < trace.requests.size())
    blocks.ranges.emplace_back(start, trace.requests.size());
  return blocks;
}

Trace gen_cyclic(int cache_size, std::size_t length) {
  check_cache_size(cache_size);
  if (length < 1) throw InvalidInput("length must be >= 1");
  Trace trace;
  trace.universe = cache_size + 1;
  trace.requests.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    trace.requests.push_back(static_cast<std::int32_t>(i % (cache_size + 1)));
  return trace;
}

Trace gen_adaptive(Policy policy, int cache_size, std::size_t length) {
  if (policy == Policy::Fif)
    throw InvalidInput("adaptive adversary requires an online policy");
  check_cache_size(cache_size);
  if (length < 1) throw InvalidInput("length must be >= 1");
  Trace trace;
  trace.universe = cache_size + 1;
  trace.requests.reserve(length);
  OnlineCache cache(policy, cache_size, trace.universe);
  for (std::size_t i = 0; i < length; ++i) {
    std::int32_t page = 0;
    while (cache.contains(page)) ++page;
    trace.requests.push_back(page);
    cache.request(page);
  }
  return trace;
}

Trace gen_locality(std::int32_t universe, std::size_t length,
                   std::uint64_t seed, double locality, int window) {
  if (universe < 1) throw InvalidInput("universe N must be >= 1");
  if (locality < 0.0 || locality > 1.0)
    throw InvalidInput("locality_param must lie in [0, 1]");
  if (window < 1) throw InvalidInput("window must be >= 1");
  Trace trace;
  trace.universe = universe;
  trace.requests.reserve(length);
  std::mt19937_64 gen(seed);
  std::vector<std::int32_t> recent;  // most recent distinct pages, newest first
  for (std::size_t i = 0; i < length; ++i) {
    std::int32_t page;
    if (!recent.empty() && uniform01(gen) < locality) {
      page = recent[uniform_below(gen, recent.size())];
    } else {
      page = static_cast<std::int32_t>(uniform_below(gen, universe));
    }
    trace.requests.push_back(page);
    auto it = std::find(recent.begin(), recent.end(), page);
    if (it != recent.end()) recent.erase(it);
    recent.insert(recent.begin(), page);
    if (static_cast<int>(recent.size()) > window) recent.pop_back();
  }
  return trace;
}

Trace densify_tokens(const std::vector<std::string>& tokens) {
  Trace trace;
  std::unordered_map<std::string, std::int32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& token : tokens) {
    auto [it, inserted] =
        ids.emplace(token, static_cast<std::int32_t>(ids.size()));
    trace.requests.push_back(it->second);
  }
  trace.universe = std::max<std::int32_t>(1, static_cast<std::int32_t>(ids.size()));
  return trace;
}

Trace load_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("N=", 0) != 0)
    throw ParseFailure("trace header: expected first line 'N=<int>'");
  Trace trace;
  try {
    std::size_t used = 0;
    trace.universe = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseFailure("trace header: bad universe in '" + line + "'");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      trace.requests.push_back(std::stoi(line, &used));
      if (used != line.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseFailure("trace line " + std::to_string(lineno) +
                         ": bad request '" + line + "'");
    }
  }
  validate(trace);
  return trace;
}

Trace load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open trace file '" + path + "'");
  return load_trace(in);
}

void save_trace(const Trace& trace, std::ostream& out) {
  out << "N=" << trace.universe << '\n';
  for (std::int32_t p : trace.requests) out << p << '\n';
}

void save_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot write trace file '" + path + "'");
  save_trace(trace, out);
  if (!out) throw IoFailure("write failed for '" + path + "'");
}

}  // namespace auglab::paging
