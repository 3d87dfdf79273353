#include "blrsa/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace blrsa {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

template <typename T>
void check_unique_contiguous_ids(std::vector<T>& items, const char* what) {
    std::set<int> ids;
    for (const T& item : items)
        if (!ids.insert(item.id).second)
            throw std::runtime_error(std::string("duplicate ") + what + " id " +
                                     std::to_string(item.id));
    std::sort(items.begin(), items.end(), [](const T& a, const T& b) { return a.id < b.id; });
    for (size_t i = 0; i < items.size(); ++i)
        if (items[i].id != static_cast<int>(i))
            throw std::runtime_error(std::string(what) + " ids must be contiguous from 0");
}

}  // namespace

Topology load_topology(const std::filesystem::path& path) {
    const json j = read_json(path);
    std::vector<Node> nodes;
    for (const json& n : j.at("nodes"))
        nodes.push_back({n.at("id").get<int>(), n.at("name").get<std::string>(),
                         n.at("lat").get<double>(), n.at("lon").get<double>()});
    std::vector<Link> links;
    for (const json& l : j.at("links"))
        links.push_back({l.at("id").get<int>(), l.at("src").get<int>(), l.at("dst").get<int>(),
                         l.at("length_km").get<double>()});
    check_unique_contiguous_ids(nodes, "node");
    check_unique_contiguous_ids(links, "link");
    return Topology(std::move(nodes), std::move(links));
}

void save_topology(const Topology& topo, const std::filesystem::path& path) {
    json j;
    j["nodes"] = json::array();
    for (const Node& n : topo.nodes())
        j["nodes"].push_back({{"id", n.id}, {"name", n.name}, {"lat", n.lat}, {"lon", n.lon}});
    j["links"] = json::array();
    for (const Link& l : topo.links())
        j["links"].push_back(
            {{"id", l.id}, {"src", l.src}, {"dst", l.dst}, {"length_km", l.length_km}});
    write_json(j, path);
}

Scenario load_scenario(const std::filesystem::path& path) {
    const json j = read_json(path);
    Scenario s;
    for (const json& d : j.at("demands"))
        s.demands.push_back({d.at("id").get<int>(), d.at("src").get<int>(), d.at("dst").get<int>(),
                             d.at("bitrate_gbps").get<double>()});
    for (const json& a : j.at("attacks"))
        s.attacks.push_back({a.at("id").get<int>(), a.at("target").get<int>(),
                             a.at("destructive_km").get<double>(), a.at("jamming_km").get<double>()});
    check_unique_contiguous_ids(s.demands, "demand");
    check_unique_contiguous_ids(s.attacks, "attack");
    const json& meta = j.at("meta");
    s.seed = meta.at("seed").get<std::uint64_t>();
    const auto group = parse_group(meta.at("group").get<std::string>());
    if (!group) throw std::runtime_error("unknown scenario group in " + path.string());
    s.group = *group;
    s.x_km = meta.at("X_km").get<double>();
    s.topology_name = meta.at("topology").get<std::string>();
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    json j;
    j["demands"] = json::array();
    for (const Demand& d : s.demands)
        j["demands"].push_back(
            {{"id", d.id}, {"src", d.src}, {"dst", d.dst}, {"bitrate_gbps", d.bitrate_gbps}});
    j["attacks"] = json::array();
    for (const AttackScenario& a : s.attacks)
        j["attacks"].push_back({{"id", a.id},
                                {"target", a.target},
                                {"destructive_km", a.destructive_km},
                                {"jamming_km", a.jamming_km}});
    j["meta"] = {{"seed", s.seed},
                 {"group", to_string(s.group)},
                 {"X_km", s.x_km},
                 {"topology", s.topology_name}};
    write_json(j, path);
}

Solution load_solution(const std::filesystem::path& path, const Topology& topo, int num_slices,
                       int num_demands) {
    const json j = read_json(path);
    Solution sol;
    for (const json& b : j.at("bunkers")) sol.bunkers.add(b.get<int>());
    sol.lightpaths.resize(static_cast<size_t>(num_demands));
    sol.grid = SpectrumGrid(topo.num_links(), num_slices);
    int owner = 0;
    for (const json& lpj : j.at("lightpaths")) {
        const int demand = lpj.at("demand").get<int>();
        if (demand < 0 || demand >= num_demands)
            throw std::runtime_error("light-path references unknown demand");
        LightPath lp;
        lp.path = make_path_from_nodes(topo, demand, lpj.at("nodes").get<std::vector<int>>());
        lp.modulation = lpj.at("modulation").get<std::string>();
        lp.channel.first_slice = lpj.at("channel").at("first_slice").get<int>();
        lp.channel.size = lpj.at("channel").at("size").get<int>();
        sol.grid.allocate(lp.path, lp.channel, owner++);
        sol.lightpaths[static_cast<size_t>(demand)].push_back(std::move(lp));
    }
    if (j.contains("blocked"))
        for (const json& b : j.at("blocked"))
            sol.blocked.push_back({b.at("demand").get<int>(), b.at("path_index").get<int>()});
    return sol;
}

void save_solution(const Solution& sol, const std::filesystem::path& path) {
    json j;
    j["bunkers"] = sol.bunkers.nodes;
    j["lightpaths"] = json::array();
    for (const auto& lps : sol.lightpaths)
        for (const LightPath& lp : lps)
            j["lightpaths"].push_back({{"demand", lp.path.demand},
                                       {"nodes", lp.path.node_ids},
                                       {"modulation", lp.modulation},
                                       {"channel",
                                        {{"first_slice", lp.channel.first_slice},
                                         {"size", lp.channel.size}}}});
    j["blocked"] = json::array();
    for (const BlockedLightPath& b : sol.blocked)
        j["blocked"].push_back({{"demand", b.demand}, {"path_index", b.path_index}});
    write_json(j, path);
}

std::string csv_header() {
    return "instance_id,algorithm,policy,paths,bunkers,x_km,lambda,c_spec,c_res,ms,used_slices,"
           "lf_gbps,objective,runtime_ms";
}

std::string format_fixed(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string to_csv(const MetricsRow& r) {
    std::string out;
    out += r.instance_id + ',' + r.algorithm + ',' + r.policy + ',';
    out += std::to_string(r.num_paths) + ',' + std::to_string(r.num_bunkers) + ',';
    out += format_fixed(r.x_km) + ',' + std::to_string(r.lambda) + ',';
    out += format_fixed(r.c_spec) + ',' + format_fixed(r.c_res) + ',';
    out += std::to_string(r.max_slice_index) + ',' + std::to_string(r.used_slices) + ',';
    out += format_fixed(r.lf_gbps) + ',' + format_fixed(r.objective) + ',';
    out += format_fixed(r.runtime_ms);
    return out;
}

}  // namespace blrsa
