#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rational.hpp"

namespace auglab::sched {

struct Job {
  int id = 0;
  Rat release;      // r_j >= 0
  Rat processing;   // p_j > 0
};

// Jobs sorted by (release, id); ids unique.
struct JobSet {
  std::vector<Job> jobs;
};

JobSet make_jobset(std::vector<Job> jobs);

enum class Discipline { Srpt, Setf };

Discipline parse_discipline(std::string_view name);
std::string discipline_name(Discipline d);

struct Interval {
  Rat begin, end;
  std::vector<std::pair<int, Rat>> rates;  // (job id, work per unit time)
};

// Piecewise-constant schedule in exact rational time. Intervals tile
// [first release, last completion]; idle gaps carry an empty assignment.
struct Timeline {
  Discipline discipline = Discipline::Srpt;
  Rat speed = 1;
  JobSet jobs;
  std::vector<Interval> intervals;
  std::map<int, Rat> completion;

  Rat horizon() const;               // last completion (0 if no jobs)
  std::vector<Rat> event_points() const;
};

// At every instant: the active job with least remaining work, ties to the
// lowest id, gets the whole machine. Events are releases and completions.
Timeline simulate_srpt(const JobSet& jobs, const Rat& speed);

// At every instant: the active jobs with least work received so far share
// the machine equally. Events are releases, completions and catch-ups.
Timeline simulate_setf(const JobSet& jobs, const Rat& speed);

Timeline simulate(Discipline d, const JobSet& jobs, const Rat& speed);

void validate_timeline(const Timeline& tl);

struct FlowMetrics {
  Rat total_flow;                                   // sum of C_j - r_j
  Rat max_idle;                                     // max C_j - r_j - p_j/s
  std::vector<std::pair<Rat, std::size_t>> active_profile;  // step function
};

// Computes the flow time both as sum(C_j - r_j) and as the integral of the
// active-count profile and insists they agree exactly.
FlowMetrics flow_metrics(const Timeline& tl);

// {j : r_j <= t < C_j}.
std::vector<int> active_set(const Timeline& tl, const Rat& t);

struct PointwiseReport {
  bool pass = true;
  Rat bound;                         // 1 + 1/eps
  std::size_t samples = 0;
  Rat worst_time;
  std::size_t worst_setf = 0, worst_srpt = 0;
  bool ratio_defined = false;
  Rat max_ratio;                     // over samples with |X*| > 0
  std::optional<Rat> first_violation;
};

// Pointwise comparison: |X_t| under SETF at speed 1+eps vs
// (1 + 1/eps) |X*_t| under SRPT at speed 1, sampled at every merged event
// point and at the midpoints between them.
PointwiseReport verify_pointwise_bound(const JobSet& jobs, const Rat& eps);

struct SpeedupReport {
  bool pass = true;
  Rat setf_flow, srpt_flow;
  Rat bound;                         // 1 + 1/eps
  bool ratio_defined = false;
  Rat ratio;
};

// Total flow time of SETF at speed 1+eps vs SRPT at speed 1; the ratio
// must not exceed 1 + 1/eps. All values exact.
SpeedupReport verify_kp00(const JobSet& jobs, const Rat& eps);

struct InterferenceEntry {
  std::set<int> members;
  Rat window_start;  // earliest release in the set
};

struct InterferenceResult {
  std::map<int, InterferenceEntry> sets;  // per job released by t
  std::vector<std::string> violations;    // internal diagnostics, empty = ok
};

// Transitive closure of "processed while the other is active" on a SETF
// timeline, cut off at time t. Also checks: every job processed inside a
// set's window belongs to the set; the window is a single interval ending
// at t; no member has received more work than the anchor job.
InterferenceResult interference_sets(const Timeline& tl, const Rat& t);

// floor(1/eps) - 1 unit-spaced releases with processing 1 + eps + delta.
JobSet gen_example_setf(const Rat& eps, const Rat& delta);

JobSet gen_random_jobset(std::uint64_t seed, int max_jobs = 12);

// Least achievable maximum idle time C_j - r_j - p_j/speed, via the finite
// candidate budgets implied by release/deadline windows plus a preemptive
// EDF feasibility test per candidate.
Rat opt_max_idle(const JobSet& jobs, const Rat& speed);

struct EnumerationGuard {
  std::size_t max_jobs = 4;
  std::size_t max_slots = 24;
};

// Exhaustive minimum total flow time over grid-slot schedules (unit speed);
// releases and processing times must be multiples of the grid.
Rat bruteforce_min_flow(const JobSet& jobs, const Rat& grid,
                        EnumerationGuard guard = {});

// Same enumeration, minimizing the maximum idle time.
Rat bruteforce_min_max_idle(const JobSet& jobs, const Rat& grid,
                            EnumerationGuard guard = {});

nlohmann::json jobset_to_json(const JobSet& jobs);
JobSet jobset_from_json(const nlohmann::json& j);
JobSet load_jobset_file(const std::string& path);
void save_jobset_file(const JobSet& jobs, const std::string& path);
nlohmann::json timeline_to_json(const Timeline& tl);

}  // namespace auglab::sched
