#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cost_function.hpp"

namespace auglab::routing {

struct Edge {
  int tail = 0;
  int head = 0;
  CostFunction cost = CostFunction::constant(0.0);
};

struct Commodity {
  int source = 0;
  int sink = 0;
  double rate = 0.0;
};

struct Network {
  int vertices = 0;
  std::vector<Edge> edges;
  std::vector<Commodity> commodities;
};

// Drops zero-rate commodities, then validates bounds, self-loops and
// per-commodity reachability.
Network canonical(Network net);
void validate(const Network& net);

double total_cost(const Network& net, std::span<const double> edge_flow);
double potential(const Network& net, std::span<const double> edge_flow);

// Aggregate flow-conservation check against the commodity rates.
bool flow_feasible(const Network& net, std::span<const double> edge_flow,
                   double tol = 1e-6);

struct SolveOptions {
  double tol = 1e-6;             // relative linearization gap
  std::size_t max_iterations = 100000;
};

struct SolveReport {
  std::vector<double> edge_flow;
  std::vector<std::vector<double>> commodity_flow;  // per commodity, per edge
  double objective = 0.0;   // potential (equilibrium) or total cost (optimal)
  double cost = 0.0;        // total cost of the returned flow
  double gap = 0.0;         // relative linearization gap at termination
  std::size_t iterations = 0;
  std::vector<double> commodity_length;  // shortest path length per commodity
  bool converged = false;
};

SolveReport solve_equilibrium(const Network& net, SolveOptions opts = {});
SolveReport solve_optimal(const Network& net, SolveOptions opts = {});

struct PoaResult {
  double value = 0.0;
  bool defined = false;   // false when the optimal cost is zero
  bool exact = false;     // both solves converged to their gap targets
  double equilibrium_cost = 0.0;
  double optimal_cost = 0.0;
};

PoaResult price_of_anarchy(const Network& net, SolveOptions opts = {});

Network scale_rates(const Network& net, double factor);

// Replaces each edge cost by max{c_e(x), c_e(f_e)} for the given flow.
Network make_fictitious(const Network& net, std::span<const double> edge_flow);

// Replaces each edge cost by x -> c(x/2)/2 (mm1 capacity doubles).
Network make_slower(const Network& net);

// Equilibrium flows on a single-commodity network of parallel edges, by
// bisection on the common path length. Independent of the main solver.
std::vector<double> parallel_link_equilibrium(const Network& net,
                                              double tol = 1e-9);

// Fixture and generator networks.
Network pigou(int degree = 1);                    // constant 1 vs x^d, rate 1
Network mm1_single(double capacity, double rate);
Network two_commodity_fixture();
Network gen_random_network(std::uint64_t seed);   // 10 vertices, 1 commodity
Network gen_parallel_network(std::uint64_t seed); // 2..6 parallel links

nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);
Network load_network_file(const std::string& path);
void save_network_file(const Network& net, const std::string& path);

nlohmann::json solve_report_to_json(const SolveReport& report);

}  // namespace auglab::routing
