#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blrsa/model.hpp"
#include "blrsa/spectrum.hpp"
#include "blrsa/vulnerability.hpp"

namespace blrsa {

struct SolverConfig {
    int lambda = 30;        // candidate paths per light-path search
    int num_paths = 1;      // |P|
    double c_spec = 1.0;
    double c_res = 0.0;
    int num_slices = 320;   // |S|
    int k_candidates = 40;  // LD-RSA pool size

    static SolverConfig from_instance(const ProblemInstance& inst, int lambda = 30);
};

// Light-path slot the solver could not realize (no modulation or no channel).
struct BlockedLightPath {
    int demand = -1;
    int path_index = -1;
};

struct Solution {
    BunkerSet bunkers;
    // Indexed by demand id; inner vector in selection order, may be shorter
    // than |P| when blocking occurred.
    std::vector<std::vector<LightPath>> lightpaths;
    std::vector<BlockedLightPath> blocked;
    SpectrumGrid grid;

    double blocked_gbps(const ProblemInstance& inst) const;
};

using LinkWeightFn = std::function<double(const Link&)>;

// Up to k loopless paths in nondecreasing weight; ties break by fewer hops,
// then lexicographically smaller node-id sequence. Links listed in
// `banned_links` are removed from the graph.
std::vector<RoutingPath> k_shortest_paths(const Topology& topo, const LinkWeightFn& weight,
                                          int s, int t, int k,
                                          const std::vector<int>& banned_links = {});

using ModifiedVulMatrix = std::vector<std::vector<double>>;

// entry'(i,j) = entry(i,j) * (1 + count of selected paths crossing link i->j).
ModifiedVulMatrix modified_vul_matrix(const std::vector<RoutingPath>& selected,
                                      const VulMatrix& base);

// Up to `count` paths for the demand that avoid every link used by `selected`,
// ranked by vulnerability-matrix weight.
std::vector<RoutingPath> find_sld_paths(const Topology& topo, const Demand& demand,
                                        const std::vector<RoutingPath>& selected,
                                        const VulMatrix& vul, int count);

double path_weight(const RoutingPath& path, const Topology& topo, const ModifiedVulMatrix& vul);

// theta(l) = c_spec * S_MAX/|S| + c_res * LEN/LEN_MAX with LEN_MAX = |A|*|E|.
double lightpath_cost(const Channel& channel, double len_under_vul, const SolverConfig& config,
                      int num_attacks, int num_links);

int path_similarity(const RoutingPath& a, const RoutingPath& b);

Solution solve_1s_rsa(const ProblemInstance& inst, const BunkerSet& bunkers, const SolverConfig& cfg);
Solution solve_2s_rsa(const ProblemInstance& inst, const BunkerSet& bunkers, const SolverConfig& cfg);
Solution solve_ff_rsa(const ProblemInstance& inst, const BunkerSet& bunkers, const SolverConfig& cfg);
Solution solve_ld_rsa(const ProblemInstance& inst, const BunkerSet& bunkers, const SolverConfig& cfg);

enum class Algorithm { OneStepRsa, TwoStepRsa, FirstFitRsa, LinkDisjointRsa };

std::optional<Algorithm> parse_algorithm(std::string name);  // "1s-rsa" etc.
std::string to_string(Algorithm algorithm);

Solution solve(Algorithm algorithm, const ProblemInstance& inst, const BunkerSet& bunkers,
               const SolverConfig& cfg);

}  // namespace blrsa
