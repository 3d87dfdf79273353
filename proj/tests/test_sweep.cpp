#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blrsa/evaluation.hpp"
#include "blrsa/sweep.hpp"

using namespace blrsa;
namespace fs = std::filesystem;

namespace {

fs::path data_file(const std::string& name) {
    return fs::path(BLRSA_DATA_DIR) / (name + ".json");
}

fs::path temp_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "blrsa_sweep_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

SweepSpec tiny_spec(int workers) {
    SweepSpec spec;
    spec.topologies = {data_file("pl12")};
    spec.algorithms = {Algorithm::FirstFitRsa, Algorithm::TwoStepRsa};
    spec.policies = {BunkerPolicy::AdaptiveAvg};
    spec.paths_list = {1, 2};
    spec.bunkers_list = {0, 2};
    spec.x_list = {150.0};
    spec.lambda_list = {10};
    spec.weights = {{0.0, 1.0}};
    spec.seeds = {1, 2};
    spec.group = ScenarioGroup::Small;
    spec.num_slices = 320;
    spec.workers = workers;
    return spec;
}

}  // namespace

TEST_CASE("tuned lambda defaults") {
    // Unknown topologies always get 30.
    CHECK(recommended_lambda("nsfnet", BunkerPolicy::AdaptiveAvg, 0.3) == 30);
    // The 12-node network is insensitive: 30 across the ladder.
    for (double cs : {0.0, 0.2, 0.5, 0.8, 1.0})
        CHECK(recommended_lambda("pl12", BunkerPolicy::MinNeighbour, cs) == 30);
    // Spot checks across the tuned table.
    CHECK(recommended_lambda("dt14", BunkerPolicy::AdaptiveAvg, 1.0) == 30);
    CHECK(recommended_lambda("dt14", BunkerPolicy::AdaptiveMax, 0.1) == 5);
    CHECK(recommended_lambda("dt14", BunkerPolicy::AdaptiveMax, 0.3) == 20);
    CHECK(recommended_lambda("dt14", BunkerPolicy::NodalDegree, 0.3) == 25);
    CHECK(recommended_lambda("dt14", BunkerPolicy::AvgNeighbour, 0.2) == 20);
    CHECK(recommended_lambda("euro16", BunkerPolicy::AdaptiveAvg, 1.0) == 30);
    CHECK(recommended_lambda("euro16", BunkerPolicy::AdaptiveAvg, 0.8) == 25);
    CHECK(recommended_lambda("euro16", BunkerPolicy::AvgNeighbour, 0.6) == 15);
    CHECK(recommended_lambda("euro16", BunkerPolicy::AdaptiveMax, 0.6) == 25);
    CHECK(recommended_lambda("euro16", BunkerPolicy::NodalDegree, 0.5) == 15);
    CHECK(recommended_lambda("euro16", BunkerPolicy::AdaptiveMax, 0.5) == 5);
    CHECK(recommended_lambda("euro16", BunkerPolicy::MinNeighbour, 0.0) == 5);
}

TEST_CASE("sweep spec loads from json with defaults") {
    const fs::path dir = temp_dir("spec");
    const fs::path p = dir / "sweep.json";
    {
        std::ofstream out(p);
        out << R"({"topologies":[")" << data_file("pl12").string() << R"("],
                   "algorithms":["ff-rsa"],
                   "paths":[1,2],
                   "seeds":[1,2,3],
                   "group":"small",
                   "weights":[[1.0,0.0],[0.0,1.0]],
                   "workers":2})";
    }
    SweepSpec spec = load_sweep_spec(p);
    CHECK(spec.topologies.size() == 1);
    CHECK(spec.algorithms == std::vector<Algorithm>{Algorithm::FirstFitRsa});
    CHECK(spec.policies == std::vector<BunkerPolicy>{BunkerPolicy::AdaptiveAvg});  // default
    CHECK(spec.paths_list == std::vector<int>{1, 2});
    CHECK(spec.bunkers_list == std::vector<int>{0});  // default
    CHECK(spec.x_list == std::vector<double>{100.0});  // default
    CHECK(spec.weights.size() == 2);
    CHECK(spec.seeds.size() == 3);
    CHECK(spec.group == ScenarioGroup::Small);
    CHECK(spec.workers == 2);
}

TEST_CASE("sweep cells enumerate deterministically and parallel equals serial") {
    SweepResult serial = run_sweep(tiny_spec(1));
    SweepResult parallel = run_sweep(tiny_spec(4));
    REQUIRE(serial.cells.size() == 8);  // 2 algs * 2 paths * 2 bunkers
    REQUIRE(parallel.cells.size() == serial.cells.size());
    for (size_t i = 0; i < serial.cells.size(); ++i) {
        const SweepCell& a = serial.cells[i];
        const SweepCell& b = parallel.cells[i];
        CHECK(a.topology == b.topology);
        CHECK(a.algorithm == b.algorithm);
        CHECK(a.num_paths == b.num_paths);
        CHECK(a.num_bunkers == b.num_bunkers);
        CHECK(a.seeds_ok == 2);
        CHECK(a.avg_lf_gbps == b.avg_lf_gbps);
        CHECK(a.avg_used_slices == b.avg_used_slices);
        CHECK(a.avg_objective == b.avg_objective);
        CHECK(a.failures.empty());
    }
    // Key order: algorithm varies slower than paths, which varies slower than bunkers.
    CHECK(serial.cells[0].algorithm == Algorithm::FirstFitRsa);
    CHECK(serial.cells[0].num_paths == 1);
    CHECK(serial.cells[0].num_bunkers == 0);
    CHECK(serial.cells[1].num_bunkers == 2);
    CHECK(serial.cells[2].num_paths == 2);
    CHECK(serial.cells[4].algorithm == Algorithm::TwoStepRsa);
}

TEST_CASE("sweep outputs csv files with derived tables") {
    SweepResult result = run_sweep(tiny_spec(2));
    const fs::path dir = temp_dir("out");
    write_sweep_outputs(result, dir);
    REQUIRE(fs::exists(dir / "cells.csv"));
    REQUIRE(fs::exists(dir / "gain_paths.csv"));
    REQUIRE(fs::exists(dir / "gain_bunkers.csv"));
    REQUIRE(fs::exists(dir / "spectrum_ratio.csv"));

    // cells.csv: header + 8 rows
    std::istringstream cells(slurp(dir / "cells.csv"));
    std::string line;
    int rows = 0;
    std::getline(cells, line);
    CHECK(line.rfind("topology,algorithm,policy", 0) == 0);
    while (std::getline(cells, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 8);

    // Derived values must match the manual ratio on the merged cells.
    auto find_cell = [&](Algorithm alg, int paths, int bunkers) -> const SweepCell& {
        for (const SweepCell& c : result.cells)
            if (c.algorithm == alg && c.num_paths == paths && c.num_bunkers == bunkers) return c;
        FAIL("cell not found");
        return result.cells.front();
    };
    const SweepCell& base = find_cell(Algorithm::FirstFitRsa, 1, 0);
    const SweepCell& multi = find_cell(Algorithm::FirstFitRsa, 2, 0);
    if (base.avg_lf_gbps > 0.0) {
        const double gain = 1.0 - multi.avg_lf_gbps / base.avg_lf_gbps;
        std::istringstream gp(slurp(dir / "gain_paths.csv"));
        bool found = false;
        while (std::getline(gp, line)) {
            if (line.rfind("pl12,ff-rsa", 0) == 0 && line.find(",2,0,") != std::string::npos) {
                const double v = std::stod(line.substr(line.rfind(',') + 1));
                CHECK(v == doctest::Approx(gain).epsilon(1e-5));
                found = true;
            }
        }
        CHECK(found);
    }

    // identical rerun -> identical bytes (modulo the wall-clock runtime column)
    auto strip_runtime = [](const std::string& csv) {
        std::istringstream in(csv);
        std::string out, row;
        while (std::getline(in, row)) {
            // runtime_ms is the second-to-last column of cells.csv
            const size_t last = row.rfind(',');
            const size_t prev = row.rfind(',', last - 1);
            out += row.substr(0, prev) + row.substr(last) + '\n';
        }
        return out;
    };
    const fs::path dir2 = temp_dir("out2");
    write_sweep_outputs(run_sweep(tiny_spec(3)), dir2);
    CHECK(strip_runtime(slurp(dir / "cells.csv")) == strip_runtime(slurp(dir2 / "cells.csv")));
    CHECK(slurp(dir / "gain_paths.csv") == slurp(dir2 / "gain_paths.csv"));
    CHECK(slurp(dir / "gain_bunkers.csv") == slurp(dir2 / "gain_bunkers.csv"));
    CHECK(slurp(dir / "spectrum_ratio.csv") == slurp(dir2 / "spectrum_ratio.csv"));
}

TEST_CASE("single-cell sweep equals a direct solve") {
    SweepSpec spec = tiny_spec(1);
    spec.algorithms = {Algorithm::FirstFitRsa};
    spec.paths_list = {2};
    spec.bunkers_list = {2};
    spec.seeds = {7};
    SweepResult result = run_sweep(spec);
    REQUIRE(result.cells.size() == 1);

    Topology topo = load_topology(data_file("pl12"));
    Scenario s = generate_scenario({ScenarioGroup::Small, 7, 150.0}, topo, "pl12");
    ProblemInstance inst;
    inst.topology = topo;
    inst.demands = s.demands;
    inst.attacks = s.attacks;
    inst.num_paths = 2;
    inst.num_bunkers = 2;
    inst.num_slices = 320;
    inst.c_spec = 0.0;
    inst.c_res = 1.0;
    inst.fill_default_limits();
    BunkerSet bunkers = place_bunkers(BunkerPolicy::AdaptiveAvg, topo, inst.attacks, 2);
    Solution sol = solve_ff_rsa(inst, bunkers, SolverConfig::from_instance(inst, 10));
    Metrics m = compute_metrics(sol, inst);
    CHECK(result.cells[0].avg_lf_gbps == doctest::Approx(m.avg_lost_flow_gbps));
    CHECK(result.cells[0].avg_used_slices == doctest::Approx(m.used_slices));
    CHECK(result.cells[0].avg_objective == doctest::Approx(m.objective));
    CHECK(result.cells[0].avg_max_slice_index == doctest::Approx(m.max_slice_index));
}
