#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blrsa {

struct Node {
    int id = -1;
    std::string name;
    double lat = 0.0;  // degrees
    double lon = 0.0;  // degrees
};

struct Link {
    int id = -1;
    int src = -1;
    int dst = -1;
    double length_km = 0.0;
};

// Directed graph with per-node outgoing/incoming link indices.
// Immutable after construction.
class Topology {
public:
    Topology() = default;
    Topology(std::vector<Node> nodes, std::vector<Link> links);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    const Node& node(int id) const { return nodes_.at(static_cast<size_t>(id)); }
    const Link& link(int id) const { return links_.at(static_cast<size_t>(id)); }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_links() const { return static_cast<int>(links_.size()); }

    const std::vector<int>& out_links(int v) const { return out_.at(static_cast<size_t>(v)); }
    const std::vector<int>& in_links(int v) const { return in_.at(static_cast<size_t>(v)); }
    // E+(v) ∪ E-(v), sorted by link id.
    std::vector<int> incident_links(int v) const;
    // Directed link id for (src,dst), -1 if absent.
    int find_link(int src, int dst) const;

    bool connected_undirected() const;

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

struct Demand {
    int id = -1;
    int src = -1;
    int dst = -1;
    double bitrate_gbps = 0.0;
};

struct AttackScenario {
    int id = -1;
    int target = -1;
    double destructive_km = 0.0;
    double jamming_km = 0.0;
};

struct Modulation {
    std::string name;
    double bitrate_gbps_per_transceiver = 0.0;
    double reach_km = 0.0;
};

// Ordered by decreasing bitrate; reach strictly increases down the table.
class ModulationTable {
public:
    ModulationTable() = default;
    explicit ModulationTable(std::vector<Modulation> entries);

    // 16-QAM 200/600, 32-QAM 150/1200, QPSK 100/3500, BPSK 50/6300.
    static ModulationTable standard();

    const std::vector<Modulation>& entries() const { return entries_; }
    double max_reach_km() const { return entries_.empty() ? 0.0 : entries_.back().reach_km; }

private:
    std::vector<Modulation> entries_;
};

struct ProblemInstance {
    Topology topology;
    std::vector<Demand> demands;
    std::vector<AttackScenario> attacks;
    int num_paths = 1;      // |P|
    int num_bunkers = 0;    // |B|
    int num_slices = 320;   // |S|
    double c_spec = 1.0;
    double c_res = 0.0;
    double max_spec = 0.0;  // 0 = fill from defaults
    double max_loss = 0.0;
    ModulationTable modulations = ModulationTable::standard();

    double total_demand_gbps() const;
    // MAX_SPEC = |S|, MAX_LOSS = |A| * sum h_d (floored at 1 so the objective stays defined).
    void fill_default_limits();
};

// Haversine great-circle distance, Earth radius 6371.0 km.
double geo_distance(const Node& a, const Node& b);

struct AffectedSets {
    std::vector<int> destroyed;  // sorted node ids
    std::vector<int> jammed;     // superset of destroyed
};

// Closed-ball membership: a node at exactly range distance counts as affected.
AffectedSets attack_affected_sets(const Topology& topo, const AttackScenario& attack);

// Violated invariants, empty means valid.
std::vector<std::string> validate_instance(const ProblemInstance& instance);

}  // namespace blrsa
