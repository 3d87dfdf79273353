#include "blrsa/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace blrsa {

Topology::Topology(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
    const int n = static_cast<int>(nodes_.size());
    for (int i = 0; i < n; ++i) {
        if (nodes_[static_cast<size_t>(i)].id != i)
            throw std::invalid_argument("node ids must be contiguous from 0");
    }
    out_.assign(static_cast<size_t>(n), {});
    in_.assign(static_cast<size_t>(n), {});
    std::set<std::pair<int, int>> seen;
    for (size_t i = 0; i < links_.size(); ++i) {
        const Link& e = links_[i];
        if (e.id != static_cast<int>(i))
            throw std::invalid_argument("link ids must be contiguous from 0");
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw std::invalid_argument("link endpoint out of range");
        if (e.src == e.dst) throw std::invalid_argument("self-loop link");
        if (!seen.insert({e.src, e.dst}).second)
            throw std::invalid_argument("duplicate directed link");
        if (!(e.length_km > 0.0)) throw std::invalid_argument("link length must be positive");
        out_[static_cast<size_t>(e.src)].push_back(e.id);
        in_[static_cast<size_t>(e.dst)].push_back(e.id);
    }
}

std::vector<int> Topology::incident_links(int v) const {
    std::vector<int> ids = out_links(v);
    const auto& in = in_links(v);
    ids.insert(ids.end(), in.begin(), in.end());
    std::sort(ids.begin(), ids.end());
    return ids;
}

int Topology::find_link(int src, int dst) const {
    for (int e : out_links(src))
        if (link(e).dst == dst) return e;
    return -1;
}

bool Topology::connected_undirected() const {
    if (nodes_.empty()) return true;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : out_links(v)) {
            int w = link(e).dst;
            if (!seen[static_cast<size_t>(w)]) { seen[static_cast<size_t>(w)] = 1; stack.push_back(w); }
        }
        for (int e : in_links(v)) {
            int w = link(e).src;
            if (!seen[static_cast<size_t>(w)]) { seen[static_cast<size_t>(w)] = 1; stack.push_back(w); }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

ModulationTable::ModulationTable(std::vector<Modulation> entries) : entries_(std::move(entries)) {
    for (size_t i = 1; i < entries_.size(); ++i) {
        if (!(entries_[i].bitrate_gbps_per_transceiver < entries_[i - 1].bitrate_gbps_per_transceiver))
            throw std::invalid_argument("modulation bitrates must strictly decrease");
        if (!(entries_[i].reach_km > entries_[i - 1].reach_km))
            throw std::invalid_argument("modulation reach must strictly increase");
    }
}

ModulationTable ModulationTable::standard() {
    return ModulationTable({
        {"16-QAM", 200.0, 600.0},
        {"32-QAM", 150.0, 1200.0},
        {"QPSK", 100.0, 3500.0},
        {"BPSK", 50.0, 6300.0},
    });
}

double ProblemInstance::total_demand_gbps() const {
    double t = 0.0;
    for (const Demand& d : demands) t += d.bitrate_gbps;
    return t;
}

void ProblemInstance::fill_default_limits() {
    if (max_spec <= 0.0) max_spec = static_cast<double>(num_slices);
    if (max_loss <= 0.0) {
        max_loss = static_cast<double>(attacks.size()) * total_demand_gbps();
        if (max_loss <= 0.0) max_loss = 1.0;
    }
}

double geo_distance(const Node& a, const Node& b) {
    constexpr double kEarthRadiusKm = 6371.0;
    constexpr double kDegToRad = std::numbers::pi / 180.0;
    const double lat1 = a.lat * kDegToRad, lat2 = b.lat * kDegToRad;
    const double dlat = (b.lat - a.lat) * kDegToRad;
    const double dlon = (b.lon - a.lon) * kDegToRad;
    const double sl = std::sin(dlat / 2.0), so = std::sin(dlon / 2.0);
    const double h = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

AffectedSets attack_affected_sets(const Topology& topo, const AttackScenario& attack) {
    if (attack.target < 0 || attack.target >= topo.num_nodes())
        throw std::invalid_argument("attack target is not a valid node");
    AffectedSets out;
    const Node& target = topo.node(attack.target);
    for (const Node& v : topo.nodes()) {
        const double d = geo_distance(v, target);
        if (d <= attack.destructive_km) out.destroyed.push_back(v.id);
        // Destruction implies unavailability, so jammed stays a superset even
        // if the jamming radius is the smaller of the two.
        if (d <= attack.jamming_km || d <= attack.destructive_km) out.jammed.push_back(v.id);
    }
    return out;
}

std::vector<std::string> validate_instance(const ProblemInstance& inst) {
    std::vector<std::string> report;
    const int n = inst.topology.num_nodes();
    for (const Node& v : inst.topology.nodes()) {
        if (v.lat < -90.0 || v.lat > 90.0)
            report.push_back("node " + std::to_string(v.id) + ": latitude out of [-90,90]");
        if (v.lon < -180.0 || v.lon > 180.0)
            report.push_back("node " + std::to_string(v.id) + ": longitude out of [-180,180]");
    }
    for (const Link& e : inst.topology.links()) {
        if (!(e.length_km > 0.0))
            report.push_back("link " + std::to_string(e.id) + ": length must be positive");
    }
    if (!inst.topology.connected_undirected())
        report.push_back("topology is not connected (directions ignored)");
    for (const Demand& d : inst.demands) {
        if (d.src == d.dst)
            report.push_back("demand " + std::to_string(d.id) + ": src == dst");
        if (d.src < 0 || d.src >= n || d.dst < 0 || d.dst >= n)
            report.push_back("demand " + std::to_string(d.id) + ": endpoint out of range");
        if (!(d.bitrate_gbps > 0.0))
            report.push_back("demand " + std::to_string(d.id) + ": bitrate must be positive");
    }
    for (const AttackScenario& a : inst.attacks) {
        if (a.target < 0 || a.target >= n)
            report.push_back("attack " + std::to_string(a.id) + ": target out of range");
        if (a.destructive_km < 0.0)
            report.push_back("attack " + std::to_string(a.id) + ": destructive range negative");
        if (a.jamming_km < a.destructive_km)
            report.push_back("attack " + std::to_string(a.id) + ": jamming range below destructive range");
    }
    if (inst.c_spec < 0.0 || inst.c_spec > 1.0 || inst.c_res < 0.0 || inst.c_res > 1.0 ||
        std::abs(inst.c_spec + inst.c_res - 1.0) > 1e-9)
        report.push_back("weights must sum to 1 with 0 <= c_spec,c_res <= 1");
    if (inst.num_paths < 1) report.push_back("|P| must be >= 1");
    if (inst.num_bunkers < 0 || inst.num_bunkers > n)
        report.push_back("|B| must lie in [0,|V|]");
    if (inst.num_slices < 1) report.push_back("|S| must be >= 1");
    if (inst.max_spec < 0.0) report.push_back("MAX_SPEC must be positive");
    if (inst.max_loss < 0.0) report.push_back("MAX_LOSS must be positive");
    return report;
}

}  // namespace blrsa
