#include "scheduling.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <unordered_map>

namespace auglab::sched {

namespace {

void check_speed(const Rat& speed) {
  if (!(speed > 0)) throw InvalidInput("speed must be > 0");
}

void admit_releases(const JobSet& jobs, std::size_t& next, const Rat& t,
                    const std::function<void(const Job&)>& admit) {
  while (next < jobs.jobs.size() && jobs.jobs[next].release == t)
    admit(jobs.jobs[next++]);
}

}  // namespace

JobSet make_jobset(std::vector<Job> jobs) {
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return a.release != b.release ? a.release < b.release : a.id < b.id;
  });
  std::set<int> ids;
  for (const auto& j : jobs) {
    if (!(j.processing > 0))
      throw InvalidInput("job " + std::to_string(j.id) +
                         ": processing must be > 0");
    if (j.release < 0)
      throw InvalidInput("job " + std::to_string(j.id) +
                         ": release must be >= 0");
    if (!ids.insert(j.id).second)
      throw InvalidInput("duplicate job id " + std::to_string(j.id));
  }
  return JobSet{std::move(jobs)};
}

Discipline parse_discipline(std::string_view name) {
  if (name == "srpt" || name == "SRPT") return Discipline::Srpt;
  if (name == "setf" || name == "SETF") return Discipline::Setf;
  throw InvalidInput("unknown policy '" + std::string(name) +
                     "' (expected srpt or setf)");
}

std::string discipline_name(Discipline d) {
  return d == Discipline::Srpt ? "srpt" : "setf";
}

Rat Timeline::horizon() const {
  Rat h = 0;
  for (const auto& [id, c] : completion) h = std::max(h, c);
  return h;
}

std::vector<Rat> Timeline::event_points() const {
  std::vector<Rat> pts;
  for (const auto& iv : intervals) {
    pts.push_back(iv.begin);
    pts.push_back(iv.end);
  }
  for (const auto& j : jobs.jobs) pts.push_back(j.release);
  for (const auto& [id, c] : completion) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Timeline simulate_srpt(const JobSet& input, const Rat& speed) {
  check_speed(speed);
  JobSet jobs = make_jobset(input.jobs);
  Timeline tl;
  tl.discipline = Discipline::Srpt;
  tl.speed = speed;
  tl.jobs = jobs;
  if (jobs.jobs.empty()) return tl;

  struct Active {
    Rat remaining;
    int id;
  };
  std::vector<Active> active;
  std::size_t next = 0;
  Rat t = jobs.jobs.front().release;
  auto admit = [&active](const Job& j) {
    active.push_back({j.processing, j.id});
  };
  admit_releases(jobs, next, t, admit);

  while (!active.empty() || next < jobs.jobs.size()) {
    if (active.empty()) {
      Rat t_next = jobs.jobs[next].release;
      tl.intervals.push_back({t, t_next, {}});
      t = t_next;
      admit_releases(jobs, next, t, admit);
      continue;
    }
    std::size_t pick = 0;
    for (std::size_t i = 1; i < active.size(); ++i) {
      if (active[i].remaining < active[pick].remaining ||
          (active[i].remaining == active[pick].remaining &&
           active[i].id < active[pick].id))
        pick = i;
    }
    Rat finish = t + active[pick].remaining / speed;
    if (next < jobs.jobs.size() && jobs.jobs[next].release < finish) {
      Rat t_next = jobs.jobs[next].release;
      active[pick].remaining -= (t_next - t) * speed;
      tl.intervals.push_back({t, t_next, {{active[pick].id, speed}}});
      t = t_next;
      admit_releases(jobs, next, t, admit);
    } else {
      tl.intervals.push_back({t, finish, {{active[pick].id, speed}}});
      tl.completion[active[pick].id] = finish;
      active.erase(active.begin() + pick);
      t = finish;
      admit_releases(jobs, next, t, admit);
    }
  }
  return tl;
}

Timeline simulate_setf(const JobSet& input, const Rat& speed) {
  check_speed(speed);
  JobSet jobs = make_jobset(input.jobs);
  Timeline tl;
  tl.discipline = Discipline::Setf;
  tl.speed = speed;
  tl.jobs = jobs;
  if (jobs.jobs.empty()) return tl;

  std::map<int, Rat> processing;
  for (const auto& j : jobs.jobs) processing[j.id] = j.processing;

  // Active jobs grouped by work received so far; only the lowest group
  // runs, sharing the machine equally.
  std::map<Rat, std::vector<int>> levels;
  std::size_t next = 0;
  Rat t = jobs.jobs.front().release;
  auto admit = [&levels](const Job& j) {
    auto& zero = levels[Rat(0)];
    zero.insert(std::upper_bound(zero.begin(), zero.end(), j.id), j.id);
  };
  admit_releases(jobs, next, t, admit);

  while (!levels.empty() || next < jobs.jobs.size()) {
    if (levels.empty()) {
      Rat t_next = jobs.jobs[next].release;
      tl.intervals.push_back({t, t_next, {}});
      t = t_next;
      admit_releases(jobs, next, t, admit);
      continue;
    }
    const Rat w0 = levels.begin()->first;
    std::vector<int> group = levels.begin()->second;
    const Rat rate = speed / Rat(group.size());

    Rat min_p = processing[group.front()];
    for (int id : group) min_p = std::min(min_p, processing[id]);
    Rat step = (min_p - w0) / rate;  // until the earliest completion
    if (auto up = std::next(levels.begin()); up != levels.end())
      step = std::min(step, (up->first - w0) / rate);  // until a catch-up
    if (next < jobs.jobs.size())
      step = std::min(step, jobs.jobs[next].release - t);

    Rat t_new = t + step;
    Interval iv{t, t_new, {}};
    for (int id : group) iv.rates.emplace_back(id, rate);
    tl.intervals.push_back(std::move(iv));

    Rat w_new = w0 + step * rate;
    levels.erase(levels.begin());
    std::vector<int> survivors;
    for (int id : group) {
      if (w_new == processing[id]) {
        tl.completion[id] = t_new;
      } else {
        survivors.push_back(id);
      }
    }
    if (!survivors.empty()) {
      auto& slot = levels[w_new];
      slot.insert(slot.end(), survivors.begin(), survivors.end());
      std::sort(slot.begin(), slot.end());
    }
    t = t_new;
    admit_releases(jobs, next, t, admit);
  }
  return tl;
}

Timeline simulate(Discipline d, const JobSet& jobs, const Rat& speed) {
  return d == Discipline::Srpt ? simulate_srpt(jobs, speed)
                               : simulate_setf(jobs, speed);
}

void validate_timeline(const Timeline& tl) {
  check_speed(tl.speed);
  std::map<int, const Job*> by_id;
  for (const auto& j : tl.jobs.jobs) by_id[j.id] = &j;
  for (const auto& j : tl.jobs.jobs)
    if (!tl.completion.count(j.id))
      throw InvalidInput("timeline: job " + std::to_string(j.id) +
                         " never completes");
  for (const auto& [id, c] : tl.completion) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw InvalidInput("timeline: completion for unknown job " +
                         std::to_string(id));
    if (c < it->second->release)
      throw InvalidInput("timeline: job completes before its release");
  }

  std::map<int, Rat> work;
  std::map<int, Rat> last_processed_end;
  for (std::size_t i = 0; i < tl.intervals.size(); ++i) {
    const auto& iv = tl.intervals[i];
    if (!(iv.begin < iv.end))
      throw InvalidInput("timeline: empty or inverted interval");
    if (i > 0 && tl.intervals[i - 1].end != iv.begin)
      throw InvalidInput("timeline: intervals do not tile the horizon");
    Rat sum = 0;
    for (const auto& [id, rate] : iv.rates) {
      if (!(rate > 0)) throw InvalidInput("timeline: nonpositive rate");
      auto it = by_id.find(id);
      if (it == by_id.end())
        throw InvalidInput("timeline: rate for unknown job");
      if (it->second->release > iv.begin)
        throw InvalidInput("timeline: job processed before release");
      if (tl.completion.at(id) < iv.end)
        throw InvalidInput("timeline: job processed after completion");
      sum += rate;
      work[id] += rate * (iv.end - iv.begin);
      last_processed_end[id] = iv.end;
    }
    if (sum > tl.speed)
      throw InvalidInput("timeline: rates exceed the machine speed");
    // Work conservation: if some job spans the whole interval, the full
    // speed must be in use.
    bool any_active = false;
    for (const auto& j : tl.jobs.jobs)
      any_active |= j.release <= iv.begin && tl.completion.at(j.id) >= iv.end;
    if (any_active && sum != tl.speed)
      throw InvalidInput("timeline: machine idles while jobs are active");
  }
  for (const auto& j : tl.jobs.jobs) {
    if (work[j.id] != j.processing)
      throw InvalidInput("timeline: job " + std::to_string(j.id) +
                         " received work != processing requirement");
    if (last_processed_end[j.id] != tl.completion.at(j.id))
      throw InvalidInput("timeline: completion is not the first instant "
                         "the work is done");
  }
}

FlowMetrics flow_metrics(const Timeline& tl) {
  validate_timeline(tl);
  FlowMetrics m;
  m.total_flow = 0;
  m.max_idle = 0;
  for (const auto& j : tl.jobs.jobs) {
    Rat c = tl.completion.at(j.id);
    m.total_flow += c - j.release;
    m.max_idle = std::max(m.max_idle, c - j.release - j.processing / tl.speed);
  }

  // Active-count step function from the release/completion events, under
  // the right-open convention: active on [r_j, C_j).
  std::map<Rat, long> delta;
  for (const auto& j : tl.jobs.jobs) {
    delta[j.release] += 1;
    delta[tl.completion.at(j.id)] -= 1;
  }
  Rat integral = 0;
  long count = 0;
  bool have_prev = false;
  Rat prev;
  for (const auto& [time, d] : delta) {
    if (have_prev) integral += Rat(count) * (time - prev);
    count += d;
    prev = time;
    have_prev = true;
    m.active_profile.emplace_back(time, static_cast<std::size_t>(count));
  }
  if (integral != m.total_flow)
    throw InvalidInput("timeline: flow-time identity violated");
  return m;
}

std::vector<int> active_set(const Timeline& tl, const Rat& t) {
  if (t < 0) throw InvalidInput("time must be >= 0");
  std::vector<int> out;
  for (const auto& j : tl.jobs.jobs)
    if (j.release <= t && t < tl.completion.at(j.id)) out.push_back(j.id);
  return out;
}

namespace {

std::size_t count_active(const JobSet& jobs, const std::map<int, Rat>& done,
                         const Rat& t) {
  std::size_t n = 0;
  for (const auto& j : jobs.jobs)
    if (j.release <= t && t < done.at(j.id)) ++n;
  return n;
}

}  // namespace

PointwiseReport verify_pointwise_bound(const JobSet& jobs, const Rat& eps) {
  if (!(eps > 0)) throw InvalidInput("eps must be > 0");
  Timeline setf = simulate_setf(jobs, 1 + eps);
  Timeline srpt = simulate_srpt(jobs, Rat(1));

  std::vector<Rat> points = setf.event_points();
  {
    auto more = srpt.event_points();
    points.insert(points.end(), more.begin(), more.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
  std::vector<Rat> samples;
  for (std::size_t i = 0; i < points.size(); ++i) {
    samples.push_back(points[i]);
    if (i + 1 < points.size())
      samples.push_back((points[i] + points[i + 1]) / 2);
  }

  PointwiseReport rep;
  rep.bound = 1 + 1 / eps;
  rep.samples = samples.size();
  for (const Rat& t : samples) {
    std::size_t nx = count_active(setf.jobs, setf.completion, t);
    std::size_t nstar = count_active(srpt.jobs, srpt.completion, t);
    bool ok = Rat(nx) <= rep.bound * Rat(nstar);
    if (!ok && !rep.first_violation) rep.first_violation = t;
    rep.pass = rep.pass && ok;
    if (nstar > 0) {
      Rat ratio = Rat(nx) / Rat(nstar);
      if (!rep.ratio_defined || ratio > rep.max_ratio) {
        rep.ratio_defined = true;
        rep.max_ratio = ratio;
        rep.worst_time = t;
        rep.worst_setf = nx;
        rep.worst_srpt = nstar;
      }
    } else if (nx > 0 && rep.worst_srpt != 0) {
      rep.worst_time = t;
      rep.worst_setf = nx;
      rep.worst_srpt = 0;
    }
  }
  return rep;
}

SpeedupReport verify_kp00(const JobSet& jobs, const Rat& eps) {
  if (!(eps > 0)) throw InvalidInput("eps must be > 0");
  SpeedupReport rep;
  rep.bound = 1 + 1 / eps;
  rep.setf_flow = flow_metrics(simulate_setf(jobs, 1 + eps)).total_flow;
  rep.srpt_flow = flow_metrics(simulate_srpt(jobs, Rat(1))).total_flow;
  rep.pass = rep.setf_flow <= rep.bound * rep.srpt_flow;
  if (rep.srpt_flow > 0) {
    rep.ratio_defined = true;
    rep.ratio = rep.setf_flow / rep.srpt_flow;
  }
  return rep;
}

InterferenceResult interference_sets(const Timeline& tl, const Rat& t) {
  if (tl.discipline != Discipline::Setf)
    throw InvalidInput("interference sets are defined on SETF timelines");
  if (t < 0) throw InvalidInput("time must be >= 0");
  if (t > tl.horizon())
    throw InvalidInput("time is beyond the timeline horizon");

  struct JobView {
    Rat release;
    Rat life_end;
    Rat work;  // received by time t
    std::vector<std::pair<Rat, Rat>> processed;  // clipped to [.., t)
  };
  std::map<int, JobView> views;
  for (const auto& j : tl.jobs.jobs) {
    if (j.release > t) continue;
    JobView v;
    v.release = j.release;
    v.life_end = std::min(tl.completion.at(j.id), t);
    v.work = 0;
    views.emplace(j.id, std::move(v));
  }
  for (const auto& iv : tl.intervals) {
    if (iv.begin >= t) break;
    Rat end = std::min(iv.end, t);
    for (const auto& [id, rate] : iv.rates) {
      auto it = views.find(id);
      if (it == views.end()) continue;
      it->second.processed.emplace_back(iv.begin, end);
      it->second.work += rate * (end - iv.begin);
    }
  }

  auto processed_within = [](const JobView& v, const Rat& lo, const Rat& hi) {
    for (const auto& [a, b] : v.processed)
      if (std::max(a, lo) < std::min(b, hi)) return true;
    return false;
  };

  InterferenceResult result;
  for (const auto& [anchor, anchor_view] : views) {
    InterferenceEntry entry;
    entry.members.insert(anchor);
    std::vector<int> frontier{anchor};
    while (!frontier.empty()) {
      int member = frontier.back();
      frontier.pop_back();
      const JobView& mv = views.at(member);
      for (const auto& [cand, cv] : views) {
        if (entry.members.count(cand)) continue;
        if (processed_within(cv, mv.release, mv.life_end)) {
          entry.members.insert(cand);
          frontier.push_back(cand);
        }
      }
    }
    entry.window_start = anchor_view.release;
    for (int id : entry.members)
      entry.window_start = std::min(entry.window_start, views.at(id).release);

    // The sanity checks below assume the anchor is still active at t;
    // completed anchors keep their sets but make no window claims.
    if (anchor_view.life_end == t) {
      // Everything processed inside the window belongs to the set.
      for (const auto& [cand, cv] : views) {
        if (!entry.members.count(cand) &&
            processed_within(cv, entry.window_start, t))
          result.violations.push_back(
              "job " + std::to_string(cand) + " processed in the window of " +
              std::to_string(anchor) + " but not in its interference set");
      }
      // The member lifetimes must tile [window_start, t] exactly.
      std::vector<std::pair<Rat, Rat>> lives;
      for (int id : entry.members)
        lives.emplace_back(views.at(id).release, views.at(id).life_end);
      std::sort(lives.begin(), lives.end());
      Rat reach = entry.window_start;
      bool gap = false;
      for (const auto& [a, b] : lives) {
        if (a > reach) {
          gap = true;
          break;
        }
        reach = std::max(reach, b);
      }
      if (gap || reach != t)
        result.violations.push_back(
            "lifetimes of the interference set of job " +
            std::to_string(anchor) + " do not cover its window");
      // No member may have received more work than the anchor.
      for (int id : entry.members)
        if (views.at(id).work > anchor_view.work)
          result.violations.push_back(
              "job " + std::to_string(id) + " outworked anchor " +
              std::to_string(anchor) + " inside its interference set");
    }
    result.sets.emplace(anchor, std::move(entry));
  }
  return result;
}

JobSet gen_example_setf(const Rat& eps, const Rat& delta) {
  if (!(eps > 0 && eps < 1)) throw InvalidInput("need 0 < eps < 1");
  if (!(delta > 0 && delta < eps)) throw InvalidInput("need 0 < delta < eps");
  Int m = floor_to_int(1 / eps) - 1;
  if (m < 1)
    throw InvalidInput("eps too large: the construction needs at least one "
                       "job (floor(1/eps) - 1 >= 1)");
  std::vector<Job> jobs;
  Rat p = 1 + eps + delta;
  for (Int j = 1; j <= m; ++j) {
    int id = j.convert_to<int>();
    jobs.push_back({id, Rat(id - 1), p});
  }
  return make_jobset(std::move(jobs));
}

JobSet gen_random_jobset(std::uint64_t seed, int max_jobs) {
  if (max_jobs < 1) throw InvalidInput("max_jobs must be >= 1");
  std::mt19937_64 gen(seed);
  int m = 1 + static_cast<int>(uniform_below(gen, max_jobs));
  std::vector<Job> jobs;
  for (int id = 1; id <= m; ++id) {
    std::uint64_t rden = 1 + uniform_below(gen, 4);
    std::uint64_t rnum = uniform_below(gen, 12 * rden);
    std::uint64_t pden = 1 + uniform_below(gen, 4);
    std::uint64_t pnum = 1 + uniform_below(gen, 4 * pden);
    jobs.push_back({id, Rat(rnum, rden), Rat(pnum, pden)});
  }
  return make_jobset(std::move(jobs));
}

namespace {

// Preemptive EDF feasibility for deadlines d_j = r_j + p_j/speed + budget.
bool edf_feasible(const JobSet& jobs, const Rat& speed, const Rat& budget) {
  struct Active {
    Rat deadline;
    Rat remaining;
    int id;
  };
  std::vector<Active> active;
  std::size_t next = 0;
  if (jobs.jobs.empty()) return true;
  Rat t = jobs.jobs.front().release;
  auto deadline_of = [&](const Job& j) {
    return j.release + j.processing / speed + budget;
  };
  while (!active.empty() || next < jobs.jobs.size()) {
    while (next < jobs.jobs.size() && jobs.jobs[next].release == t) {
      const Job& j = jobs.jobs[next++];
      active.push_back({deadline_of(j), j.processing, j.id});
    }
    if (active.empty()) {
      t = jobs.jobs[next].release;
      continue;
    }
    std::size_t pick = 0;
    for (std::size_t i = 1; i < active.size(); ++i)
      if (active[i].deadline < active[pick].deadline ||
          (active[i].deadline == active[pick].deadline &&
           active[i].id < active[pick].id))
        pick = i;
    Rat finish = t + active[pick].remaining / speed;
    if (next < jobs.jobs.size() && jobs.jobs[next].release < finish) {
      active[pick].remaining -= (jobs.jobs[next].release - t) * speed;
      t = jobs.jobs[next].release;
    } else {
      if (finish > active[pick].deadline) return false;
      active.erase(active.begin() + pick);
      t = finish;
    }
  }
  return true;
}

}  // namespace

Rat opt_max_idle(const JobSet& input, const Rat& speed) {
  check_speed(speed);
  JobSet jobs = make_jobset(input.jobs);
  if (jobs.jobs.empty()) return 0;

  // With deadlines r_j + p_j/s + T, whether d_j <= d_i does not depend on
  // T, so the binding budgets come from finitely many release/deadline
  // windows. EDF decides feasibility of each candidate.
  std::vector<Rat> keys;
  for (const auto& j : jobs.jobs)
    keys.push_back(j.release + j.processing / speed);
  std::set<Rat> candidates{Rat(0)};
  for (const auto& a : jobs.jobs) {
    for (std::size_t i = 0; i < jobs.jobs.size(); ++i) {
      Rat demand = 0;
      for (std::size_t j = 0; j < jobs.jobs.size(); ++j)
        if (jobs.jobs[j].release >= a.release && keys[j] <= keys[i])
          demand += jobs.jobs[j].processing / speed;
      Rat budget = demand - (keys[i] - a.release);
      if (budget > 0) candidates.insert(budget);
    }
  }
  std::vector<Rat> sorted(candidates.begin(), candidates.end());
  std::size_t lo = 0, hi = sorted.size() - 1;
  if (!edf_feasible(jobs, speed, sorted[hi]))
    throw Error("opt_max_idle: candidate budgets exhausted");
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (edf_feasible(jobs, speed, sorted[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return sorted[lo];
}

namespace {

struct GridInstance {
  std::vector<int> release;  // in slots
  std::vector<int> length;   // in slots
  int first_slot = 0;
};

GridInstance to_grid(const JobSet& jobs, const Rat& grid,
                     const EnumerationGuard& guard) {
  if (!(grid > 0)) throw InvalidInput("grid must be > 0");
  if (jobs.jobs.size() > guard.max_jobs)
    throw GuardExceeded("instance exceeds the " +
                        std::to_string(guard.max_jobs) +
                        "-job enumeration guard");
  GridInstance g;
  int horizon = 0, total = 0;
  for (const auto& j : jobs.jobs) {
    Rat r = j.release / grid, p = j.processing / grid;
    if (denominator(r) != 1 || denominator(p) != 1)
      throw InvalidInput("job " + std::to_string(j.id) +
                         " is not aligned to the grid");
    g.release.push_back(numerator(r).convert_to<int>());
    g.length.push_back(numerator(p).convert_to<int>());
    horizon = std::max(horizon, g.release.back());
    total += g.length.back();
  }
  if (horizon + total > static_cast<int>(guard.max_slots))
    throw GuardExceeded("instance exceeds the " +
                        std::to_string(guard.max_slots) +
                        "-slot enumeration guard");
  if (!g.release.empty())
    g.first_slot = *std::min_element(g.release.begin(), g.release.end());
  return g;
}

std::uint64_t pack_state(int slot, const std::vector<int>& rem) {
  std::uint64_t key = static_cast<std::uint64_t>(slot);
  int shift = 6;
  for (int r : rem) {
    key |= static_cast<std::uint64_t>(r) << shift;
    shift += 6;
  }
  return key;
}

int min_flow_slots(const GridInstance& g, int slot, std::vector<int>& rem,
                   std::unordered_map<std::uint64_t, int>& memo) {
  bool all_done = true;
  int pending_release = -1;
  for (std::size_t j = 0; j < rem.size(); ++j) {
    if (rem[j] > 0) {
      all_done = false;
      if (g.release[j] > slot)
        pending_release = pending_release < 0
                              ? g.release[j]
                              : std::min(pending_release, g.release[j]);
    }
  }
  if (all_done) return 0;
  std::uint64_t key = pack_state(slot, rem);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  int active_count = 0;
  for (std::size_t j = 0; j < rem.size(); ++j)
    if (rem[j] > 0 && g.release[j] <= slot) ++active_count;
  int best;
  if (active_count == 0) {
    best = min_flow_slots(g, pending_release, rem, memo);
  } else {
    best = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < rem.size(); ++j) {
      if (rem[j] <= 0 || g.release[j] > slot) continue;
      --rem[j];
      best = std::min(best,
                      active_count + min_flow_slots(g, slot + 1, rem, memo));
      ++rem[j];
    }
  }
  memo.emplace(key, best);
  return best;
}

int min_max_idle_slots(const GridInstance& g, int slot, std::vector<int>& rem,
                       std::unordered_map<std::uint64_t, int>& memo) {
  bool all_done = true;
  int pending_release = -1;
  for (std::size_t j = 0; j < rem.size(); ++j) {
    if (rem[j] > 0) {
      all_done = false;
      if (g.release[j] > slot)
        pending_release = pending_release < 0
                              ? g.release[j]
                              : std::min(pending_release, g.release[j]);
    }
  }
  if (all_done) return 0;
  std::uint64_t key = pack_state(slot, rem);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  bool any_active = false;
  for (std::size_t j = 0; j < rem.size(); ++j)
    any_active |= rem[j] > 0 && g.release[j] <= slot;
  int best;
  if (!any_active) {
    best = min_max_idle_slots(g, pending_release, rem, memo);
  } else {
    best = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < rem.size(); ++j) {
      if (rem[j] <= 0 || g.release[j] > slot) continue;
      --rem[j];
      int tail = min_max_idle_slots(g, slot + 1, rem, memo);
      if (rem[j] == 0) {
        int idle = (slot + 1) - g.release[j] - g.length[j];
        tail = std::max(tail, idle);
      }
      best = std::min(best, tail);
      ++rem[j];
    }
  }
  memo.emplace(key, best);
  return best;
}

}  // namespace

Rat bruteforce_min_flow(const JobSet& input, const Rat& grid,
                        EnumerationGuard guard) {
  JobSet jobs = make_jobset(input.jobs);
  if (jobs.jobs.empty()) return 0;
  GridInstance g = to_grid(jobs, grid, guard);
  std::vector<int> rem = g.length;
  std::unordered_map<std::uint64_t, int> memo;
  return Rat(min_flow_slots(g, g.first_slot, rem, memo)) * grid;
}

Rat bruteforce_min_max_idle(const JobSet& input, const Rat& grid,
                            EnumerationGuard guard) {
  JobSet jobs = make_jobset(input.jobs);
  if (jobs.jobs.empty()) return 0;
  GridInstance g = to_grid(jobs, grid, guard);
  std::vector<int> rem = g.length;
  std::unordered_map<std::uint64_t, int> memo;
  return Rat(min_max_idle_slots(g, g.first_slot, rem, memo)) * grid;
}

nlohmann::json jobset_to_json(const JobSet& jobs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& j : jobs.jobs)
    arr.push_back({{"id", j.id},
                   {"release", format_rational(j.release)},
                   {"processing", format_rational(j.processing)}});
  return arr;
}

namespace {

Rat rational_field(const nlohmann::json& j, const char* field) {
  if (!j.contains(field))
    throw ParseFailure(std::string("job: missing field '") + field + "'");
  const auto& v = j.at(field);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  throw ParseFailure(std::string("job: field '") + field +
                     "' must be a rational string");
}

}  // namespace

JobSet jobset_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseFailure("job file: expected a JSON list");
  std::vector<Job> jobs;
  for (const auto& je : j) {
    if (!je.contains("id") || !je.at("id").is_number_integer())
      throw ParseFailure("job: field 'id' must be an integer");
    jobs.push_back({je.at("id").get<int>(), rational_field(je, "release"),
                    rational_field(je, "processing")});
  }
  return make_jobset(std::move(jobs));
}

JobSet load_jobset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open job file '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw ParseFailure("job file '" + path + "' is not valid JSON");
  return jobset_from_json(j);
}

void save_jobset_file(const JobSet& jobs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot write job file '" + path + "'");
  out << jobset_to_json(jobs).dump(2) << '\n';
  if (!out) throw IoFailure("write failed for '" + path + "'");
}

nlohmann::json timeline_to_json(const Timeline& tl) {
  nlohmann::json j;
  j["discipline"] = discipline_name(tl.discipline);
  j["speed"] = format_rational(tl.speed);
  j["jobs"] = jobset_to_json(tl.jobs);
  j["events"] = nlohmann::json::array();
  for (const auto& e : tl.event_points())
    j["events"].push_back(format_rational(e));
  j["intervals"] = nlohmann::json::array();
  for (const auto& iv : tl.intervals) {
    nlohmann::json rates = nlohmann::json::array();
    for (const auto& [id, rate] : iv.rates)
      rates.push_back({{"id", id}, {"rate", format_rational(rate)}});
    j["intervals"].push_back({{"begin", format_rational(iv.begin)},
                              {"end", format_rational(iv.end)},
                              {"rates", std::move(rates)}});
  }
  j["completions"] = nlohmann::json::array();
  for (const auto& [id, c] : tl.completion)
    j["completions"].push_back({{"id", id}, {"time", format_rational(c)}});
  return j;
}

}  // namespace auglab::sched
