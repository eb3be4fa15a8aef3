#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace auglab::paging {

enum class Policy { Lru, Fifo, Fif };

Policy parse_policy(std::string_view name);
std::string policy_name(Policy policy);

// A page request stream over the universe [0, universe).
struct Trace {
  std::vector<std::int32_t> requests;
  std::int32_t universe = 1;
};

void validate(const Trace& trace);

struct SimResult {
  std::uint64_t faults = 0;
  std::vector<std::uint8_t> fault_flags;   // one entry per request
  std::vector<std::int32_t> final_cache;   // sorted page ids
  int cache_size = 0;
};

// Demand-paging simulation from a cold cache. Faults exactly on misses;
// evicts one page per fault once the cache is full.
SimResult simulate(Policy policy, int cache_size, const Trace& trace);

// Incremental LRU/FIFO cache used by both simulate() and the adaptive
// adversary. FIF needs lookahead and lives on a separate path.
class OnlineCache {
 public:
  OnlineCache(Policy policy, int cache_size, std::int32_t universe);
  bool request(std::int32_t page);  // returns true on fault
  bool contains(std::int32_t page) const { return cached_[page] != 0; }
  const std::vector<std::int32_t>& members() const { return members_; }

 private:
  Policy policy_;
  int cache_size_;
  std::int64_t clock_ = 0;
  std::vector<std::int64_t> stamp_;
  std::vector<std::uint8_t> cached_;
  std::vector<std::int32_t> members_;
};

struct OracleGuard {
  std::int32_t max_universe = 8;
  std::size_t max_length = 20;
};

// Exact minimum fault count over all demand-paging eviction strategies,
// by dynamic programming over reachable cache states.
std::uint64_t offline_opt_bruteforce(const Trace& trace, int cache_size,
                                     OracleGuard guard = {});

// Greedy maximal partition into segments holding at most cache_size
// distinct pages; every block but the last is maximal.
struct BlockDecomposition {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // half-open
  std::size_t count() const { return ranges.size(); }
};

BlockDecomposition decompose_blocks(const Trace& trace, int cache_size);

// Round-robin over cache_size+1 pages: 0,1,...,k,0,1,...
Trace gen_cyclic(int cache_size, std::size_t length);

// Always requests the lowest page id absent from the policy's cache, over
// a pool of cache_size+1 pages; the policy faults on every request.
Trace gen_adaptive(Policy policy, int cache_size, std::size_t length);

// With probability `locality` re-request one of the last `window` distinct
// pages (uniformly), otherwise a uniform page. Deterministic given seed.
Trace gen_locality(std::int32_t universe, std::size_t length,
                   std::uint64_t seed, double locality, int window = 8);

// Ingestion shim: maps arbitrary page tokens (strings, sparse numbers)
// to dense ids in order of first appearance.
Trace densify_tokens(const std::vector<std::string>& tokens);

Trace load_trace(std::istream& in);
Trace load_trace_file(const std::string& path);
void save_trace(const Trace& trace, std::ostream& out);
void save_trace_file(const Trace& trace, const std::string& path);

}  // namespace auglab::paging
