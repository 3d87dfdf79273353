#pragma once

#include <string>
#include <vector>

#include "blrsa/model.hpp"
#include "blrsa/solvers.hpp"

namespace blrsa {

struct AttackOutcome {
    int attack_id = -1;
    std::vector<char> node_available;                 // per node
    std::vector<char> link_available;                 // per link
    std::vector<std::vector<char>> path_available;    // per demand, per light-path
    std::vector<char> demand_realized;                // per demand
    double lost_gbps = 0.0;
};

// Node available iff not destroyed and (not jammed or bunkered); link needs
// both endpoints; a light-path needs every link; a demand needs one light-path.
AttackOutcome simulate_attack(const Solution& sol, const ProblemInstance& inst,
                              const AttackScenario& attack);

// Constraint checks against the model: path endpoints/chaining, bunker budget,
// one channel per light-path, path length, modulation reach, channel size,
// per-(link,slice) non-overlap with guard bands, grid consistency, and per-demand
// light-path count. Empty report means feasible.
std::vector<std::string> check_feasibility(const Solution& sol, const ProblemInstance& inst);

struct Metrics {
    int max_slice_index = -1;          // MS
    int used_slices = 0;               // count of slice indices used anywhere
    double total_lost_gbps = 0.0;      // sum over attacks
    double avg_lost_flow_gbps = 0.0;   // LF, total / |A|
    double objective = 0.0;            // weighted objective
    double blocked_gbps = 0.0;
    std::vector<double> per_attack_lost;
};

// Throws std::invalid_argument on structurally infeasible solutions (overlaps,
// broken paths, wrong channel sizes). Blocked demands are tolerated and
// reported via blocked_gbps.
Metrics compute_metrics(const Solution& sol, const ProblemInstance& inst);

struct OracleLimits {
    int max_nodes = 6;
    int max_demands = 4;
    int max_slices = 12;
    int max_paths = 2;
    int max_bunkers = 2;
};

// Exhaustive search over bunker subsets, per-demand simple-path tuples and
// channel placements; returns the feasible solution minimizing the weighted
// objective, ties resolved by enumeration order. Throws when the instance
// exceeds the limits or no feasible solution exists.
Solution brute_force_optimal(const ProblemInstance& inst, const OracleLimits& limits = {});

}  // namespace blrsa
