#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blrsa/model.hpp"

namespace blrsa {

struct BunkerSet {
    std::vector<int> nodes;  // sorted, unique

    bool contains(int v) const;
    void add(int v);
    int size() const { return static_cast<int>(nodes.size()); }

    friend bool operator==(const BunkerSet&, const BunkerSet&) = default;
};

// |V|x|V| attack-exposure counts: entry(i,j) = number of attacks disabling
// link i->j given the placed bunkers; 0 for node pairs without a link.
using VulMatrix = std::vector<std::vector<int>>;

// Node v is unavailable under attack a iff v is destroyed, or jammed and not
// bunkered. A link is disabled when either endpoint is unavailable.
VulMatrix compute_vul_matrix(const Topology& topo, const std::vector<AttackScenario>& attacks,
                             const BunkerSet& bunkers);

enum class VulMode { Avg, Max };

// Avg or max matrix entry over the node's incident links. Throws on isolated nodes.
double node_vulnerability(const VulMatrix& matrix, const Topology& topo, int v, VulMode mode);

enum class BunkerPolicy { AvgNeighbour, MinNeighbour, NodalDegree, AdaptiveAvg, AdaptiveMax };

std::optional<BunkerPolicy> parse_bunker_policy(std::string name);  // case-insensitive
std::string to_string(BunkerPolicy policy);

// Returns exactly min(budget, |V|) distinct nodes. Ties break to the lowest node id.
BunkerSet place_bunkers(BunkerPolicy policy, const Topology& topo,
                        const std::vector<AttackScenario>& attacks, int budget);

}  // namespace blrsa
