#include "routing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <random>

namespace auglab::routing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMm1Margin = 1e-6;  // keep f_e <= (1 - margin) * u_e

struct Adjacency {
  std::vector<std::vector<int>> out;  // vertex -> outgoing edge indices
  explicit Adjacency(const Network& net) : out(net.vertices) {
    for (std::size_t e = 0; e < net.edges.size(); ++e)
      out[net.edges[e].tail].push_back(static_cast<int>(e));
  }
};

struct ShortestPath {
  std::vector<double> dist;
  std::vector<int> via_edge;  // edge used to reach each vertex, -1 if none
};

// Label-setting shortest paths; lengths must be nonnegative.
ShortestPath dijkstra(const Network& net, const Adjacency& adj, int source,
                      const std::vector<double>& length,
                      const std::vector<std::uint8_t>* usable = nullptr) {
  ShortestPath sp;
  sp.dist.assign(net.vertices, kInf);
  sp.via_edge.assign(net.vertices, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  sp.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > sp.dist[v]) continue;
    for (int e : adj.out[v]) {
      if (usable && !(*usable)[e]) continue;
      double nd = d + length[e];
      int w = net.edges[e].head;
      if (nd < sp.dist[w]) {
        sp.dist[w] = nd;
        sp.via_edge[w] = e;
        heap.emplace(nd, w);
      }
    }
  }
  return sp;
}

std::vector<int> extract_path(const Network& net, const ShortestPath& sp,
                              int source, int sink) {
  std::vector<int> path;
  int v = sink;
  while (v != source) {
    int e = sp.via_edge[v];
    if (e < 0) return {};
    path.push_back(e);
    v = net.edges[e].tail;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

double edge_cap(const Edge& edge) {
  return edge.cost.has_capacity() ? (1.0 - kMm1Margin) * edge.cost.capacity()
                                  : kInf;
}

// Aggregate max-flow feasibility check for capacitated (mm1) networks:
// total commodity rate must fit through the min cut.
void check_capacity_feasible(const Network& net) {
  bool capacitated = false;
  for (const auto& e : net.edges) capacitated |= e.cost.has_capacity();
  if (!capacitated || net.commodities.empty()) return;

  int n = net.vertices + 2;
  int super_s = net.vertices, super_t = net.vertices + 1;
  struct Arc {
    int head;
    double cap;
    int rev;
  };
  std::vector<std::vector<Arc>> g(n);
  auto add_arc = [&g](int a, int b, double cap) {
    g[a].push_back({b, cap, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0.0, static_cast<int>(g[a].size()) - 1});
  };
  for (const auto& e : net.edges) add_arc(e.tail, e.head, edge_cap(e));
  double total_rate = 0.0;
  for (const auto& c : net.commodities) {
    add_arc(super_s, c.source, c.rate);
    add_arc(c.sink, super_t, c.rate);
    total_rate += c.rate;
  }

  double flow = 0.0;
  for (;;) {
    std::vector<std::pair<int, int>> parent(n, {-1, -1});
    std::queue<int> bfs;
    bfs.push(super_s);
    parent[super_s] = {super_s, -1};
    while (!bfs.empty() && parent[super_t].first < 0) {
      int v = bfs.front();
      bfs.pop();
      for (std::size_t i = 0; i < g[v].size(); ++i) {
        const Arc& a = g[v][i];
        if (a.cap > 1e-12 && parent[a.head].first < 0) {
          parent[a.head] = {v, static_cast<int>(i)};
          bfs.push(a.head);
        }
      }
    }
    if (parent[super_t].first < 0) break;
    double push = kInf;
    for (int v = super_t; v != super_s;) {
      auto [pv, pi] = parent[v];
      push = std::min(push, g[pv][pi].cap);
      v = pv;
    }
    for (int v = super_t; v != super_s;) {
      auto [pv, pi] = parent[v];
      g[pv][pi].cap -= push;
      g[g[pv][pi].head][g[pv][pi].rev].cap += push;
      v = pv;
    }
    flow += push;
  }
  if (flow < total_rate * (1.0 - 1e-9))
    throw InfeasibleNetwork(
        "total rate " + format_double(total_rate) +
        " exceeds the network's capacity " + format_double(flow));
}

double integrand(const CostFunction& cost, double x, bool use_marginal) {
  return use_marginal ? cost.marginal(x) : cost.value(x);
}

double objective_of(const Network& net, const std::vector<double>& flow,
                    bool use_marginal) {
  // Potential for the equilibrium solve, total cost for the optimal solve;
  // both are the integral of the respective edge lengths.
  double acc = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto& c = net.edges[e].cost;
    acc += use_marginal ? (flow[e] > 0.0 ? c.value(flow[e]) * flow[e] : 0.0)
                        : c.primitive(flow[e]);
  }
  return acc;
}

struct PathAtom {
  std::vector<int> edges;
  double weight = 0.0;  // fraction of the commodity's rate
};

struct CommodityState {
  std::vector<PathAtom> atoms;
  std::map<std::vector<int>, std::size_t> index;

  std::size_t intern(const std::vector<int>& path) {
    auto it = index.find(path);
    if (it != index.end()) return it->second;
    atoms.push_back({path, 0.0});
    index.emplace(path, atoms.size() - 1);
    return atoms.size() - 1;
  }
};

// Flow-shifting step between two paths of one commodity. Chooses the step
// size by bisection on the directional derivative, clipped so capacitated
// edges stay strictly inside their asymptote.
void pairwise_shift(const Network& net, std::vector<double>& flow,
                    CommodityState& state, std::size_t toward,
                    std::size_t away, double rate, bool use_marginal) {
  if (toward == away) return;
  std::map<int, int> delta;
  for (int e : state.atoms[toward].edges) delta[e] += 1;
  for (int e : state.atoms[away].edges) delta[e] -= 1;
  for (auto it = delta.begin(); it != delta.end();)
    it = it->second == 0 ? delta.erase(it) : std::next(it);
  if (delta.empty()) return;

  double gamma_max = state.atoms[away].weight * rate;
  for (const auto& [e, d] : delta) {
    if (d > 0) {
      double cap = edge_cap(net.edges[e]);
      if (cap < kInf) gamma_max = std::min(gamma_max, (cap - flow[e]) / d);
    }
  }
  if (gamma_max <= 0.0) return;

  auto slope = [&](double gamma) {
    double s = 0.0;
    for (const auto& [e, d] : delta)
      s += d * integrand(net.edges[e].cost, flow[e] + gamma * d, use_marginal);
    return s;
  };
  if (slope(0.0) >= 0.0) return;

  double gamma = gamma_max;
  if (slope(gamma_max) > 0.0) {
    double lo = 0.0, hi = gamma_max;
    for (int i = 0; i < 100; ++i) {
      double mid = 0.5 * (lo + hi);
      (slope(mid) > 0.0 ? hi : lo) = mid;
    }
    gamma = 0.5 * (lo + hi);
  }
  if (gamma <= 0.0) return;

  double dw = gamma / rate;
  state.atoms[away].weight -= dw;
  state.atoms[toward].weight += dw;
  if (state.atoms[away].weight < 1e-15) {
    state.atoms[toward].weight += state.atoms[away].weight;
    state.atoms[away].weight = 0.0;
  }
  for (const auto& [e, d] : delta) flow[e] += gamma * d;
}

SolveReport solve_core(const Network& input, SolveOptions opts,
                       bool use_marginal) {
  if (!(opts.tol > 0.0)) throw InvalidInput("solver tol must be > 0");
  Network net = canonical(input);
  const std::size_t ne = net.edges.size();
  const std::size_t nc = net.commodities.size();

  SolveReport report;
  report.edge_flow.assign(ne, 0.0);
  report.commodity_flow.assign(nc, std::vector<double>(ne, 0.0));
  if (nc == 0) {
    report.converged = true;
    return report;
  }
  check_capacity_feasible(net);

  Adjacency adj(net);
  std::vector<CommodityState> states(nc);
  std::vector<double> flow(ne, 0.0);

  // Warm start: all-or-nothing on zero-flow shortest paths, split across
  // successively shorter residual paths when a capacitated edge would
  // otherwise be overloaded.
  {
    std::vector<double> zero_len(ne);
    for (std::size_t e = 0; e < ne; ++e)
      zero_len[e] = net.edges[e].cost.value(0.0);
    for (std::size_t i = 0; i < nc; ++i) {
      const auto& com = net.commodities[i];
      double remaining = com.rate;
      while (remaining > 1e-15 * com.rate) {
        std::vector<std::uint8_t> usable(ne, 0);
        for (std::size_t e = 0; e < ne; ++e)
          usable[e] = edge_cap(net.edges[e]) - flow[e] > 1e-12 ? 1 : 0;
        auto sp = dijkstra(net, adj, com.source, zero_len, &usable);
        auto path = extract_path(net, sp, com.source, com.sink);
        if (path.empty())
          throw InfeasibleNetwork(
              "no residual path for commodity " + std::to_string(i));
        double push = remaining;
        for (int e : path)
          push = std::min(push, edge_cap(net.edges[e]) - flow[e]);
        push = std::min(push, remaining);
        std::size_t atom = states[i].intern(path);
        states[i].atoms[atom].weight += push / com.rate;
        for (int e : path) flow[e] += push;
        remaining -= push;
      }
    }
  }

  std::vector<double> length(ne);
  auto refresh_lengths = [&]() {
    for (std::size_t e = 0; e < ne; ++e)
      length[e] = integrand(net.edges[e].cost, flow[e], use_marginal);
  };

  double relgap = kInf;
  std::size_t iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    refresh_lengths();
    double onflow = 0.0, lower = 0.0;
    for (std::size_t e = 0; e < ne; ++e) onflow += length[e] * flow[e];
    std::vector<std::vector<int>> best_paths(nc);
    for (std::size_t i = 0; i < nc; ++i) {
      const auto& com = net.commodities[i];
      auto sp = dijkstra(net, adj, com.source, length);
      best_paths[i] = extract_path(net, sp, com.source, com.sink);
      lower += com.rate * sp.dist[com.sink];
    }
    double objective = objective_of(net, flow, use_marginal);
    relgap = std::max(0.0, onflow - lower) / std::max(1.0, std::abs(objective));
    if (relgap <= opts.tol) break;

    for (std::size_t i = 0; i < nc; ++i) {
      if (best_paths[i].empty()) continue;
      refresh_lengths();
      std::size_t toward = states[i].intern(best_paths[i]);
      std::size_t away = toward;
      double worst = -kInf;
      for (std::size_t a = 0; a < states[i].atoms.size(); ++a) {
        if (states[i].atoms[a].weight <= 0.0) continue;
        double len = 0.0;
        for (int e : states[i].atoms[a].edges) len += length[e];
        if (len > worst) {
          worst = len;
          away = a;
        }
      }
      pairwise_shift(net, flow, states[i], toward, away,
                     net.commodities[i].rate, use_marginal);
    }
  }

  report.edge_flow = flow;
  for (std::size_t i = 0; i < nc; ++i) {
    for (const auto& atom : states[i].atoms) {
      if (atom.weight <= 0.0) continue;
      for (int e : atom.edges)
        report.commodity_flow[i][e] += atom.weight * net.commodities[i].rate;
    }
  }
  refresh_lengths();
  report.commodity_length.resize(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    auto sp = dijkstra(net, adj, net.commodities[i].source, length);
    report.commodity_length[i] = sp.dist[net.commodities[i].sink];
  }
  report.objective = objective_of(net, flow, use_marginal);
  report.cost = total_cost(net, report.edge_flow);
  report.gap = relgap;
  report.iterations = iter;
  report.converged = relgap <= opts.tol;
  return report;
}

double draw_in(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

}  // namespace

void validate(const Network& net) {
  if (net.vertices < 1) throw InvalidInput("network needs >= 1 vertex");
  for (const auto& e : net.edges) {
    if (e.tail < 0 || e.tail >= net.vertices || e.head < 0 ||
        e.head >= net.vertices)
      throw InvalidInput("edge endpoint out of range");
    if (e.tail == e.head) throw InvalidInput("self-loop edges not allowed");
  }
  Adjacency adj(net);
  std::vector<double> zeros(net.edges.size(), 0.0);
  for (std::size_t i = 0; i < net.commodities.size(); ++i) {
    const auto& c = net.commodities[i];
    if (c.source < 0 || c.source >= net.vertices || c.sink < 0 ||
        c.sink >= net.vertices)
      throw InvalidInput("commodity endpoint out of range");
    if (c.source == c.sink)
      throw InvalidInput("commodity source equals sink");
    if (!(c.rate > 0.0) || !std::isfinite(c.rate))
      throw InvalidInput("commodity rate must be > 0");
    auto sp = dijkstra(net, adj, c.source, zeros);
    if (sp.dist[c.sink] == kInf)
      throw InvalidInput("commodity " + std::to_string(i) +
                         ": sink unreachable from source");
  }
}

Network canonical(Network net) {
  auto& cs = net.commodities;
  cs.erase(std::remove_if(cs.begin(), cs.end(),
                          [](const Commodity& c) { return c.rate == 0.0; }),
           cs.end());
  validate(net);
  return net;
}

bool flow_feasible(const Network& net, std::span<const double> edge_flow,
                   double tol) {
  if (edge_flow.size() != net.edges.size()) return false;
  double scale = 1.0;
  for (const auto& c : net.commodities) scale += c.rate;
  std::vector<double> excess(net.vertices, 0.0);
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    if (edge_flow[e] < -tol * scale) return false;
    excess[net.edges[e].tail] += edge_flow[e];
    excess[net.edges[e].head] -= edge_flow[e];
  }
  for (const auto& c : net.commodities) {
    excess[c.source] -= c.rate;
    excess[c.sink] += c.rate;
  }
  for (double x : excess)
    if (std::abs(x) > tol * scale) return false;
  return true;
}

double total_cost(const Network& net, std::span<const double> edge_flow) {
  if (!flow_feasible(net, edge_flow))
    throw InvalidInput("flow is not feasible for the network");
  double acc = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    double f = edge_flow[e];
    if (f <= 0.0) continue;
    double v = net.edges[e].cost.value(f);
    if (!std::isfinite(v)) return kInf;
    acc += v * f;
  }
  return acc;
}

double potential(const Network& net, std::span<const double> edge_flow) {
  if (!flow_feasible(net, edge_flow))
    throw InvalidInput("flow is not feasible for the network");
  double acc = 0.0;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    double p = net.edges[e].cost.primitive(edge_flow[e]);
    if (!std::isfinite(p)) return kInf;
    acc += p;
  }
  return acc;
}

SolveReport solve_equilibrium(const Network& net, SolveOptions opts) {
  return solve_core(net, opts, /*use_marginal=*/false);
}

SolveReport solve_optimal(const Network& net, SolveOptions opts) {
  return solve_core(net, opts, /*use_marginal=*/true);
}

PoaResult price_of_anarchy(const Network& net, SolveOptions opts) {
  auto eq = solve_equilibrium(net, opts);
  auto opt = solve_optimal(net, opts);
  PoaResult out;
  out.equilibrium_cost = eq.cost;
  out.optimal_cost = opt.cost;
  out.exact = eq.converged && opt.converged;
  if (opt.cost <= 1e-12 * std::max(1.0, eq.cost)) {
    out.defined = false;
    return out;
  }
  out.defined = true;
  out.value = eq.cost / opt.cost;
  return out;
}

Network scale_rates(const Network& net, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw InvalidInput("rate factor must be > 0");
  Network out = net;
  for (auto& c : out.commodities) c.rate *= factor;
  return out;
}

Network make_fictitious(const Network& net,
                        std::span<const double> edge_flow) {
  if (!flow_feasible(net, edge_flow))
    throw InvalidInput("flow is not feasible for the network");
  Network out = net;
  for (std::size_t e = 0; e < out.edges.size(); ++e)
    out.edges[e].cost =
        out.edges[e].cost.max_with(out.edges[e].cost.value(edge_flow[e]));
  return out;
}

Network make_slower(const Network& net) {
  Network out = net;
  for (auto& e : out.edges) e.cost = e.cost.slower();
  return out;
}

std::vector<double> parallel_link_equilibrium(const Network& input,
                                              double tol) {
  Network net = canonical(input);
  if (net.commodities.size() != 1)
    throw InvalidInput("parallel-link oracle needs exactly one commodity");
  const auto& com = net.commodities[0];
  for (const auto& e : net.edges) {
    if (e.tail != com.source || e.head != com.sink)
      throw InvalidInput("parallel-link oracle: every edge must join the "
                         "source to the sink");
    if (!e.cost.strictly_increasing())
      throw InvalidInput("parallel-link oracle needs strictly increasing "
                         "cost functions");
  }
  auto supply = [&net](double level) {
    double s = 0.0;
    for (const auto& e : net.edges) s += e.cost.inverse(level);
    return s;
  };
  double lo = kInf, hi = 0.0;
  for (const auto& e : net.edges) {
    lo = std::min(lo, e.cost.value(0.0));
    hi = std::max(hi, std::isfinite(e.cost.value(0.0)) ? e.cost.value(0.0)
                                                       : 1.0);
  }
  hi = std::max(hi, lo) + 1.0;
  int guard = 0;
  while (supply(hi) < com.rate) {
    hi *= 2.0;
    if (++guard > 300)
      throw InfeasibleNetwork("parallel-link oracle: rate exceeds capacity");
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (supply(mid) >= com.rate ? hi : lo) = mid;
    if (hi - lo <= tol * 1e-3 * std::max(1.0, hi)) break;
  }
  double level = 0.5 * (lo + hi);
  std::vector<double> flow;
  flow.reserve(net.edges.size());
  for (const auto& e : net.edges) flow.push_back(e.cost.inverse(level));
  return flow;
}

Network pigou(int degree) {
  Network net;
  net.vertices = 2;
  net.edges.push_back({0, 1, CostFunction::constant(1.0)});
  net.edges.push_back({0, 1, CostFunction::monomial(1.0, degree)});
  net.commodities.push_back({0, 1, 1.0});
  return canonical(std::move(net));
}

Network mm1_single(double capacity, double rate) {
  Network net;
  net.vertices = 2;
  net.edges.push_back({0, 1, CostFunction::mm1(capacity)});
  net.commodities.push_back({0, 1, rate});
  return canonical(std::move(net));
}

Network two_commodity_fixture() {
  Network net;
  net.vertices = 4;
  net.edges.push_back({0, 2, CostFunction::affine(1.0, 0.5)});
  net.edges.push_back({1, 2, CostFunction::affine(0.5, 0.2)});
  net.edges.push_back({2, 3, CostFunction::monomial(1.0, 2)});
  net.edges.push_back({0, 3, CostFunction::constant(2.0)});
  net.edges.push_back({1, 3, CostFunction::constant(1.8)});
  net.commodities.push_back({0, 3, 0.8});
  net.commodities.push_back({1, 3, 0.6});
  return canonical(std::move(net));
}

Network gen_random_network(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Network net;
  net.vertices = 10;
  double rate = draw_in(gen, 0.5, 2.0);
  auto draw_cost = [&gen, rate]() {
    double pick = uniform01(gen);
    if (pick < 0.40)
      return CostFunction::affine(draw_in(gen, 0.5, 3.0),
                                  draw_in(gen, 0.1, 2.0));
    if (pick < 0.70)
      return CostFunction::monomial(
          draw_in(gen, 0.5, 2.0), 2 + static_cast<int>(uniform_below(gen, 3)));
    if (pick < 0.85)
      // Leave generous headroom: the augmentation sweeps triple the rate.
      return CostFunction::mm1(draw_in(gen, 6.0 * rate + 1.0,
                                       9.0 * rate + 1.0));
    return CostFunction::constant(draw_in(gen, 0.5, 2.0));
  };
  for (int v = 0; v + 1 < net.vertices; ++v)
    net.edges.push_back({v, v + 1, draw_cost()});
  for (int i = 0; i < net.vertices; ++i)
    for (int j = i + 2; j < net.vertices; ++j)
      if (uniform01(gen) < 0.35) net.edges.push_back({i, j, draw_cost()});
  net.commodities.push_back({0, net.vertices - 1, rate});
  return canonical(std::move(net));
}

Network gen_parallel_network(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Network net;
  net.vertices = 2;
  int links = 2 + static_cast<int>(uniform_below(gen, 5));
  double rate = draw_in(gen, 0.4, 1.2);
  for (int l = 0; l < links; ++l) {
    CostFunction cost = CostFunction::affine(1.0, 0.0);
    // Keep the first link uncapacitated so the instance is feasible.
    int kind = l == 0 ? 0 : static_cast<int>(uniform_below(gen, 3));
    switch (kind) {
      case 0:
        cost = CostFunction::affine(draw_in(gen, 0.5, 2.0),
                                    draw_in(gen, 0.1, 1.5));
        break;
      case 1:
        cost = CostFunction::monomial(
            draw_in(gen, 0.5, 2.0),
            2 + static_cast<int>(uniform_below(gen, 3)));
        break;
      default:
        cost = CostFunction::mm1(draw_in(gen, 0.5, 2.5));
        break;
    }
    net.edges.push_back({0, 1, cost});
  }
  net.commodities.push_back({0, 1, rate});
  return canonical(std::move(net));
}

nlohmann::json network_to_json(const Network& net) {
  nlohmann::json j;
  j["vertices"] = net.vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : net.edges)
    j["edges"].push_back({{"tail", e.tail},
                          {"head", e.head},
                          {"cost", e.cost.to_json()}});
  j["commodities"] = nlohmann::json::array();
  for (const auto& c : net.commodities)
    j["commodities"].push_back({{"source", c.source},
                                {"sink", c.sink},
                                {"rate", format_double(c.rate)}});
  return j;
}

Network network_from_json(const nlohmann::json& j) {
  Network net;
  if (!j.is_object() || !j.contains("vertices") ||
      !j.at("vertices").is_number_integer())
    throw ParseFailure("network: field 'vertices' must be an integer");
  net.vertices = j.at("vertices").get<int>();
  if (!j.contains("edges") || !j.at("edges").is_array())
    throw ParseFailure("network: field 'edges' must be an array");
  for (const auto& je : j.at("edges")) {
    if (!je.contains("tail") || !je.contains("head") || !je.contains("cost"))
      throw ParseFailure("network: edge needs fields tail, head, cost");
    net.edges.push_back({je.at("tail").get<int>(), je.at("head").get<int>(),
                         CostFunction::from_json(je.at("cost"))});
  }
  if (!j.contains("commodities") || !j.at("commodities").is_array())
    throw ParseFailure("network: field 'commodities' must be an array");
  for (const auto& jc : j.at("commodities")) {
    if (!jc.contains("source") || !jc.contains("sink") || !jc.contains("rate"))
      throw ParseFailure("network: commodity needs source, sink, rate");
    const auto& r = jc.at("rate");
    double rate = r.is_string() ? parse_double(r.get<std::string>())
                                : r.get<double>();
    net.commodities.push_back(
        {jc.at("source").get<int>(), jc.at("sink").get<int>(), rate});
  }
  return canonical(std::move(net));
}

Network load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open network file '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw ParseFailure("network file '" + path + "' is not valid JSON");
  return network_from_json(j);
}

void save_network_file(const Network& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot write network file '" + path + "'");
  out << network_to_json(net).dump(2) << '\n';
  if (!out) throw IoFailure("write failed for '" + path + "'");
}

nlohmann::json solve_report_to_json(const SolveReport& report) {
  nlohmann::json j;
  j["edge_flows"] = nlohmann::json::array();
  for (double f : report.edge_flow)
    j["edge_flows"].push_back(format_double(f));
  j["objective"] = format_double(report.objective);
  j["cost"] = format_double(report.cost);
  j["gap"] = format_double(report.gap);
  j["iterations"] = report.iterations;
  j["lengths"] = nlohmann::json::array();
  for (double l : report.commodity_length)
    j["lengths"].push_back(format_double(l));
  j["converged"] = report.converged;
  return j;
}

}  // namespace auglab::routing
