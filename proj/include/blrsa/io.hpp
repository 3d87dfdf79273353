#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "blrsa/model.hpp"
#include "blrsa/scenario.hpp"
#include "blrsa/solvers.hpp"

namespace blrsa {

// Topology file: {"nodes":[{id,name,lat,lon}], "links":[{id,src,dst,length_km}]}.
// Ids must be unique and contiguous from 0; entries may appear out of order.
Topology load_topology(const std::filesystem::path& path);
void save_topology(const Topology& topo, const std::filesystem::path& path);

// Scenario file: {"demands":[...], "attacks":[...], "meta":{seed,group,X_km,topology}}.
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

// Solution file: {"bunkers":[ids], "lightpaths":[{demand,nodes,modulation,
// channel:{first_slice,size}}], "blocked":[{demand,path_index}]}. The loader
// rebuilds the spectrum grid from the light-paths.
Solution load_solution(const std::filesystem::path& path, const Topology& topo, int num_slices,
                       int num_demands);
void save_solution(const Solution& sol, const std::filesystem::path& path);

struct MetricsRow {
    std::string instance_id;
    std::string algorithm;
    std::string policy;
    int num_paths = 0;
    int num_bunkers = 0;
    double x_km = 0.0;
    int lambda = 0;
    double c_spec = 0.0;
    double c_res = 0.0;
    int max_slice_index = -1;
    int used_slices = 0;
    double lf_gbps = 0.0;
    double objective = 0.0;
    double runtime_ms = 0.0;
};

// Fixed 6-decimal floats, schema versioned via the header line.
std::string csv_header();
std::string to_csv(const MetricsRow& row);
std::string format_fixed(double value);  // 6 decimals

}  // namespace blrsa
