#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "blrsa/evaluation.hpp"
#include "blrsa/io.hpp"
#include "blrsa/scenario.hpp"
#include "blrsa/solvers.hpp"
#include "blrsa/vulnerability.hpp"

namespace blrsa {

// Tuned lambda for the bundled topologies ("pl12"/"dt14"/"euro16"), keyed by
// bunker policy and the c_spec weight rounded to one decimal; 30 elsewhere.
int recommended_lambda(const std::string& topology_name, BunkerPolicy policy, double c_spec);

struct SweepSpec {
    std::vector<std::filesystem::path> topologies;
    std::vector<Algorithm> algorithms;
    std::vector<BunkerPolicy> policies;
    std::vector<int> paths_list;
    std::vector<int> bunkers_list;
    std::vector<double> x_list;
    std::vector<int> lambda_list;  // 0 = auto (recommended_lambda)
    std::vector<std::pair<double, double>> weights;  // (c_spec, c_res)
    std::vector<std::uint64_t> seeds;
    ScenarioGroup group = ScenarioGroup::Large;
    int num_slices = 320;
    int workers = 1;
};

// JSON sweep file; missing grid keys fall back to single-element defaults.
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepCell {
    std::string topology;
    Algorithm algorithm = Algorithm::OneStepRsa;
    BunkerPolicy policy = BunkerPolicy::AdaptiveAvg;
    int num_paths = 1;
    int num_bunkers = 0;
    double x_km = 0.0;
    int lambda = 0;
    double c_spec = 1.0;
    double c_res = 0.0;

    // averaged over seeds
    double avg_max_slice_index = 0.0;
    double avg_used_slices = 0.0;
    double avg_lf_gbps = 0.0;
    double avg_objective = 0.0;
    double avg_runtime_ms = 0.0;
    int seeds_ok = 0;
    std::vector<std::string> failures;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // deterministic key order
};

// Runs every grid cell (topology, algorithm, policy, |P|, |B|, X, lambda,
// weights in that key order), averaging metrics over seeds. Cells run on a
// bounded worker pool; results merge in cell order. Per-cell failures are
// recorded and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec);

// cells.csv plus derived gain/ratio tables:
//   gain_paths:     1 - LF(P,B)/LF(1,B)
//   gain_bunkers:   1 - LF(P,B)/LF(P,0)
//   spectrum_ratio: used(P,B)/used(1,B)
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& out_dir);

}  // namespace blrsa
