#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blrsa/model.hpp"

namespace blrsa {

// Contiguous slice block: body [first_slice, first_slice+size), guard slice at
// first_slice+size. The guard slice is owned by the light-path that allocated it.
struct Channel {
    int first_slice = 0;
    int size = 1;  // body slices, guard band excluded

    int guard_slice() const { return first_slice + size; }
    // Highest slice index the allocation occupies (guard included).
    int last_slice() const { return first_slice + size; }

    friend bool operator==(const Channel&, const Channel&) = default;
};

struct RoutingPath {
    int demand = -1;
    std::vector<int> link_ids;  // chained src->dst
    std::vector<int> node_ids;  // link_ids.size()+1 entries
    double length_km = 0.0;

    int hops() const { return static_cast<int>(link_ids.size()); }
    bool uses_link(int link_id) const;

    friend bool operator==(const RoutingPath& a, const RoutingPath& b) {
        return a.demand == b.demand && a.link_ids == b.link_ids;
    }
};

// Builds a path from a link sequence, filling nodes and km length.
// Throws if links do not chain or the path revisits a node.
RoutingPath make_path(const Topology& topo, int demand, const std::vector<int>& link_ids);
RoutingPath make_path_from_nodes(const Topology& topo, int demand, const std::vector<int>& node_ids);

struct LightPath {
    RoutingPath path;
    std::string modulation;
    Channel channel;
};

// Per-link slice occupancy. Each slice is free (-1) or owned by one light-path id.
class SpectrumGrid {
public:
    SpectrumGrid() = default;
    SpectrumGrid(int num_links, int num_slices);

    int num_slices() const { return num_slices_; }
    int num_links() const { return static_cast<int>(owner_.size()); }
    int owner(int link_id, int slice) const;

    bool fits(const RoutingPath& path, const Channel& ch) const;
    // Smallest first_slice such that body plus guard slice are free on every
    // path link; nullopt if nothing fits within |S|.
    std::optional<Channel> first_fit(const RoutingPath& path, int size) const;

    // Throws std::logic_error on double allocation / foreign release.
    void allocate(const RoutingPath& path, const Channel& ch, int owner_id);
    void release(const RoutingPath& path, const Channel& ch, int owner_id);

    // Highest occupied slice index anywhere, -1 if empty.
    int max_slice_index() const;
    // Count of slice indices occupied on at least one link (the y_s sum).
    int used_slice_count() const;

    friend bool operator==(const SpectrumGrid&, const SpectrumGrid&) = default;

private:
    int num_slices_ = 0;
    std::vector<std::vector<int>> owner_;
};

// Highest-bitrate entry whose reach covers the path; nullptr when the path
// exceeds every reach.
const Modulation* select_modulation(double path_len_km, const ModulationTable& table);

// 3-slice transceivers: 3 * ceil(bitrate / per-transceiver bitrate), guard excluded.
int required_slices(double bitrate_gbps, const Modulation& mod);

}  // namespace blrsa
