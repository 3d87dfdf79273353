#include "blrsa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace blrsa {

bool RoutingPath::uses_link(int link_id) const {
    return std::find(link_ids.begin(), link_ids.end(), link_id) != link_ids.end();
}

RoutingPath make_path(const Topology& topo, int demand, const std::vector<int>& link_ids) {
    if (link_ids.empty()) throw std::invalid_argument("empty path");
    RoutingPath p;
    p.demand = demand;
    p.link_ids = link_ids;
    p.node_ids.push_back(topo.link(link_ids.front()).src);
    for (int e : link_ids) {
        const Link& l = topo.link(e);
        if (l.src != p.node_ids.back()) throw std::invalid_argument("links do not chain");
        p.node_ids.push_back(l.dst);
        p.length_km += l.length_km;
    }
    std::set<int> uniq(p.node_ids.begin(), p.node_ids.end());
    if (uniq.size() != p.node_ids.size()) throw std::invalid_argument("path is not simple");
    return p;
}

RoutingPath make_path_from_nodes(const Topology& topo, int demand, const std::vector<int>& node_ids) {
    if (node_ids.size() < 2) throw std::invalid_argument("path needs at least two nodes");
    std::vector<int> links;
    for (size_t i = 0; i + 1 < node_ids.size(); ++i) {
        int e = topo.find_link(node_ids[i], node_ids[i + 1]);
        if (e < 0) throw std::invalid_argument("no link between consecutive path nodes");
        links.push_back(e);
    }
    return make_path(topo, demand, links);
}

SpectrumGrid::SpectrumGrid(int num_links, int num_slices) : num_slices_(num_slices) {
    owner_.assign(static_cast<size_t>(num_links), std::vector<int>(static_cast<size_t>(num_slices), -1));
}

int SpectrumGrid::owner(int link_id, int slice) const {
    return owner_.at(static_cast<size_t>(link_id)).at(static_cast<size_t>(slice));
}

bool SpectrumGrid::fits(const RoutingPath& path, const Channel& ch) const {
    if (ch.first_slice < 0 || ch.last_slice() >= num_slices_) return false;
    for (int e : path.link_ids) {
        const auto& row = owner_[static_cast<size_t>(e)];
        for (int s = ch.first_slice; s <= ch.last_slice(); ++s)
            if (row[static_cast<size_t>(s)] != -1) return false;
    }
    return true;
}

std::optional<Channel> SpectrumGrid::first_fit(const RoutingPath& path, int size) const {
    if (size < 1) throw std::invalid_argument("channel size must be >= 1");
    for (int first = 0; first + size < num_slices_; ++first) {
        Channel ch{first, size};
        if (fits(path, ch)) return ch;
    }
    return std::nullopt;
}

void SpectrumGrid::allocate(const RoutingPath& path, const Channel& ch, int owner_id) {
    if (!fits(path, ch)) throw std::logic_error("allocation overlaps or exceeds grid");
    for (int e : path.link_ids)
        for (int s = ch.first_slice; s <= ch.last_slice(); ++s)
            owner_[static_cast<size_t>(e)][static_cast<size_t>(s)] = owner_id;
}

void SpectrumGrid::release(const RoutingPath& path, const Channel& ch, int owner_id) {
    for (int e : path.link_ids)
        for (int s = ch.first_slice; s <= ch.last_slice(); ++s) {
            int& cell = owner_[static_cast<size_t>(e)][static_cast<size_t>(s)];
            if (cell != owner_id) throw std::logic_error("release of slices not owned by caller");
            cell = -1;
        }
}

int SpectrumGrid::max_slice_index() const {
    int ms = -1;
    for (const auto& row : owner_)
        for (int s = static_cast<int>(row.size()) - 1; s > ms; --s)
            if (row[static_cast<size_t>(s)] != -1) { ms = s; break; }
    return ms;
}

int SpectrumGrid::used_slice_count() const {
    int count = 0;
    for (int s = 0; s < num_slices_; ++s) {
        for (const auto& row : owner_)
            if (row[static_cast<size_t>(s)] != -1) { ++count; break; }
    }
    return count;
}

const Modulation* select_modulation(double path_len_km, const ModulationTable& table) {
    for (const Modulation& m : table.entries())
        if (m.reach_km >= path_len_km) return &m;
    return nullptr;
}

int required_slices(double bitrate_gbps, const Modulation& mod) {
    if (!(bitrate_gbps > 0.0)) throw std::invalid_argument("bitrate must be positive");
    return 3 * static_cast<int>(std::ceil(bitrate_gbps / mod.bitrate_gbps_per_transceiver));
}

}  // namespace blrsa
