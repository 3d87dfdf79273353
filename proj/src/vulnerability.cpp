#include "blrsa/vulnerability.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace blrsa {

bool BunkerSet::contains(int v) const {
    return std::binary_search(nodes.begin(), nodes.end(), v);
}

void BunkerSet::add(int v) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v) nodes.insert(it, v);
}

VulMatrix compute_vul_matrix(const Topology& topo, const std::vector<AttackScenario>& attacks,
                             const BunkerSet& bunkers) {
    const int n = topo.num_nodes();
    VulMatrix m(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (const AttackScenario& a : attacks) {
        AffectedSets sets = attack_affected_sets(topo, a);
        std::vector<char> unavailable(static_cast<size_t>(n), 0);
        for (int v : sets.destroyed) unavailable[static_cast<size_t>(v)] = 1;
        for (int v : sets.jammed)
            if (!bunkers.contains(v)) unavailable[static_cast<size_t>(v)] = 1;
        for (const Link& e : topo.links())
            if (unavailable[static_cast<size_t>(e.src)] || unavailable[static_cast<size_t>(e.dst)])
                ++m[static_cast<size_t>(e.src)][static_cast<size_t>(e.dst)];
    }
    return m;
}

double node_vulnerability(const VulMatrix& matrix, const Topology& topo, int v, VulMode mode) {
    std::vector<int> incident = topo.incident_links(v);
    if (incident.empty()) throw std::invalid_argument("node has no incident links");
    double acc = (mode == VulMode::Max) ? -std::numeric_limits<double>::infinity() : 0.0;
    for (int e : incident) {
        const Link& l = topo.link(e);
        const double entry = matrix[static_cast<size_t>(l.src)][static_cast<size_t>(l.dst)];
        if (mode == VulMode::Max)
            acc = std::max(acc, entry);
        else
            acc += entry;
    }
    return mode == VulMode::Max ? acc : acc / static_cast<double>(incident.size());
}

std::optional<BunkerPolicy> parse_bunker_policy(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "avgneighbour") return BunkerPolicy::AvgNeighbour;
    if (name == "minneighbour") return BunkerPolicy::MinNeighbour;
    if (name == "nodaldegree") return BunkerPolicy::NodalDegree;
    if (name == "adaptiveavg") return BunkerPolicy::AdaptiveAvg;
    if (name == "adaptivemax") return BunkerPolicy::AdaptiveMax;
    return std::nullopt;
}

std::string to_string(BunkerPolicy policy) {
    switch (policy) {
        case BunkerPolicy::AvgNeighbour: return "AvgNeighbour";
        case BunkerPolicy::MinNeighbour: return "MinNeighbour";
        case BunkerPolicy::NodalDegree: return "NodalDegree";
        case BunkerPolicy::AdaptiveAvg: return "AdaptiveAvg";
        case BunkerPolicy::AdaptiveMax: return "AdaptiveMax";
    }
    return "?";
}

namespace {

// Picks the budget best nodes by (criterion, node id); smaller criterion wins.
BunkerSet pick_by_criterion(const Topology& topo, int budget,
                            const std::vector<double>& criterion) {
    std::vector<int> order(static_cast<size_t>(topo.num_nodes()));
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return criterion[static_cast<size_t>(a)] < criterion[static_cast<size_t>(b)];
    });
    BunkerSet out;
    for (int i = 0; i < budget; ++i) out.add(order[static_cast<size_t>(i)]);
    return out;
}

// Neighbour distances use link length_km; both directions count as neighbours.
std::vector<double> neighbour_distances(const Topology& topo, int v) {
    std::vector<double> out;
    for (int e : topo.incident_links(v)) out.push_back(topo.link(e).length_km);
    return out;
}

BunkerSet place_adaptive(const Topology& topo, const std::vector<AttackScenario>& attacks,
                         int budget, VulMode mode) {
    BunkerSet bunkers;
    for (int iter = 0; iter < budget; ++iter) {
        VulMatrix m = compute_vul_matrix(topo, attacks, bunkers);
        int best = -1;
        double best_metric = -std::numeric_limits<double>::infinity();
        for (int v = 0; v < topo.num_nodes(); ++v) {
            if (bunkers.contains(v)) continue;
            if (topo.incident_links(v).empty()) continue;
            const double metric = node_vulnerability(m, topo, v, mode);
            if (metric > best_metric) { best_metric = metric; best = v; }
        }
        if (best < 0) {
            // only isolated nodes remain; keep the cardinality contract
            for (int v = 0; v < topo.num_nodes() && best < 0; ++v)
                if (!bunkers.contains(v)) best = v;
            if (best < 0) break;
        }
        bunkers.add(best);
    }
    return bunkers;
}

}  // namespace

BunkerSet place_bunkers(BunkerPolicy policy, const Topology& topo,
                        const std::vector<AttackScenario>& attacks, int budget) {
    if (budget < 0) throw std::invalid_argument("bunker budget must be nonnegative");
    budget = std::min(budget, topo.num_nodes());
    if (budget == 0) return {};

    const int n = topo.num_nodes();
    std::vector<double> criterion(static_cast<size_t>(n), 0.0);
    switch (policy) {
        case BunkerPolicy::AvgNeighbour:
            for (int v = 0; v < n; ++v) {
                auto d = neighbour_distances(topo, v);
                criterion[static_cast<size_t>(v)] =
                    d.empty() ? std::numeric_limits<double>::infinity()
                              : std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
            }
            return pick_by_criterion(topo, budget, criterion);
        case BunkerPolicy::MinNeighbour:
            for (int v = 0; v < n; ++v) {
                auto d = neighbour_distances(topo, v);
                criterion[static_cast<size_t>(v)] =
                    d.empty() ? std::numeric_limits<double>::infinity()
                              : *std::min_element(d.begin(), d.end());
            }
            return pick_by_criterion(topo, budget, criterion);
        case BunkerPolicy::NodalDegree:
            for (int v = 0; v < n; ++v)
                criterion[static_cast<size_t>(v)] =
                    -static_cast<double>(topo.incident_links(v).size());
            return pick_by_criterion(topo, budget, criterion);
        case BunkerPolicy::AdaptiveAvg:
            return place_adaptive(topo, attacks, budget, VulMode::Avg);
        case BunkerPolicy::AdaptiveMax:
            return place_adaptive(topo, attacks, budget, VulMode::Max);
    }
    throw std::logic_error("unreachable");
}

}  // namespace blrsa
