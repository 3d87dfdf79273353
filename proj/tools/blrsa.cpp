// blrsa: bunkers-location, routing and spectrum allocation toolkit.
// Subcommands: generate | solve | evaluate | sweep | bunkers.
// Exit codes: 0 success, 1 usage, 2 infeasible/partial, 3 I/O.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blrsa/evaluation.hpp"
#include "blrsa/io.hpp"
#include "blrsa/scenario.hpp"
#include "blrsa/solvers.hpp"
#include "blrsa/sweep.hpp"
#include "blrsa/vulnerability.hpp"

namespace fs = std::filesystem;
using namespace blrsa;

namespace {

constexpr int kOk = 0, kUsage = 1, kPartial = 2, kIoError = 3;

struct SolveOptions {
    std::string topology_path;
    std::string scenario_path;
    std::string algorithm = "1s-rsa";
    std::string policy = "AdaptiveAvg";
    int lambda = 0;  // 0 = auto
    int paths = 1;
    int bunkers = 0;
    int slices = 320;
    double c_spec = 1.0;
    double c_res = 0.0;
    std::string out_solution;
    std::string out_csv;
};

ProblemInstance build_instance(const Topology& topo, const Scenario& scenario,
                               const SolveOptions& opt) {
    ProblemInstance inst;
    inst.topology = topo;
    inst.demands = scenario.demands;
    inst.attacks = scenario.attacks;
    inst.num_paths = opt.paths;
    inst.num_bunkers = opt.bunkers;
    inst.num_slices = opt.slices;
    inst.c_spec = opt.c_spec;
    inst.c_res = opt.c_res;
    inst.fill_default_limits();
    return inst;
}

void append_csv(const fs::path& path, const MetricsRow& row) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (fresh) out << csv_header() << '\n';
    out << to_csv(row) << '\n';
}

int cmd_generate(const std::string& topology_path, const std::string& group_name, double x_km,
                 const std::vector<std::uint64_t>& seeds, const std::string& out_dir) {
    const auto group = parse_group(group_name);
    if (!group) {
        std::cerr << "unknown group '" << group_name << "' (small|large)\n";
        return kUsage;
    }
    const Topology topo = load_topology(topology_path);
    const std::string name = fs::path(topology_path).stem().string();
    fs::create_directories(out_dir);
    for (std::uint64_t seed : seeds) {
        const Scenario s = generate_scenario({*group, seed, x_km}, topo, name);
        const fs::path out = fs::path(out_dir) / (name + "_" + group_name + "_x" +
                                                  std::to_string(static_cast<int>(x_km)) + "_s" +
                                                  std::to_string(seed) + ".json");
        save_scenario(s, out);
        std::cout << out.string() << '\n';
    }
    return kOk;
}

int cmd_solve(const SolveOptions& opt) {
    const Topology topo = load_topology(opt.topology_path);
    const Scenario scenario = load_scenario(opt.scenario_path);
    const auto algorithm = parse_algorithm(opt.algorithm);
    if (!algorithm) {
        std::cerr << "unknown algorithm '" << opt.algorithm << "'\n";
        return kUsage;
    }
    const auto policy = parse_bunker_policy(opt.policy);
    if (!policy) {
        std::cerr << "unknown bunker policy '" << opt.policy << "'\n";
        return kUsage;
    }
    const ProblemInstance inst = build_instance(topo, scenario, opt);
    if (auto report = validate_instance(inst); !report.empty()) {
        for (const auto& r : report) std::cerr << "invalid instance: " << r << '\n';
        return kUsage;
    }

    const std::string topo_name = fs::path(opt.topology_path).stem().string();
    const int lambda =
        opt.lambda > 0 ? opt.lambda : recommended_lambda(topo_name, *policy, inst.c_spec);

    const auto t0 = std::chrono::steady_clock::now();
    const BunkerSet bunkers = place_bunkers(*policy, topo, inst.attacks, inst.num_bunkers);
    const Solution sol = solve(*algorithm, inst, bunkers, SolverConfig::from_instance(inst, lambda));
    const auto t1 = std::chrono::steady_clock::now();
    const Metrics m = compute_metrics(sol, inst);

    if (!opt.out_solution.empty()) save_solution(sol, opt.out_solution);

    MetricsRow row;
    row.instance_id = topo_name + "|" + to_string(scenario.group) + "|s" +
                      std::to_string(scenario.seed) + "|x" + format_fixed(scenario.x_km);
    row.algorithm = to_string(*algorithm);
    row.policy = to_string(*policy);
    row.num_paths = inst.num_paths;
    row.num_bunkers = inst.num_bunkers;
    row.x_km = scenario.x_km;
    row.lambda = lambda;
    row.c_spec = inst.c_spec;
    row.c_res = inst.c_res;
    row.max_slice_index = m.max_slice_index;
    row.used_slices = m.used_slices;
    row.lf_gbps = m.avg_lost_flow_gbps;
    row.objective = m.objective;
    row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!opt.out_csv.empty()) append_csv(opt.out_csv, row);
    std::cout << csv_header() << '\n' << to_csv(row) << '\n';

    if (!sol.blocked.empty()) {
        std::cerr << sol.blocked.size() << " light-path(s) blocked, "
                  << format_fixed(sol.blocked_gbps(inst)) << " Gbps affected\n";
        return kPartial;
    }
    return kOk;
}

int cmd_evaluate(const SolveOptions& opt, const std::string& solution_path) {
    const Topology topo = load_topology(opt.topology_path);
    const Scenario scenario = load_scenario(opt.scenario_path);
    const ProblemInstance inst = build_instance(topo, scenario, opt);
    const Solution sol =
        load_solution(solution_path, topo, inst.num_slices, static_cast<int>(inst.demands.size()));

    const std::vector<std::string> violations = check_feasibility(sol, inst);
    for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
    if (violations.empty()) {
        const Metrics m = compute_metrics(sol, inst);
        MetricsRow row;
        row.instance_id = fs::path(opt.topology_path).stem().string() + "|" +
                          to_string(scenario.group) + "|s" + std::to_string(scenario.seed) + "|x" +
                          format_fixed(scenario.x_km);
        row.algorithm = "evaluate";
        row.policy = "-";
        row.num_paths = inst.num_paths;
        row.num_bunkers = inst.num_bunkers;
        row.x_km = scenario.x_km;
        row.lambda = 0;
        row.c_spec = inst.c_spec;
        row.c_res = inst.c_res;
        row.max_slice_index = m.max_slice_index;
        row.used_slices = m.used_slices;
        row.lf_gbps = m.avg_lost_flow_gbps;
        row.objective = m.objective;
        if (!opt.out_csv.empty()) append_csv(opt.out_csv, row);
        std::cout << csv_header() << '\n' << to_csv(row) << '\n';
        return kOk;
    }
    return kPartial;
}

int cmd_bunkers(const std::string& topology_path, const std::string& scenario_path,
                const std::string& policy_name, int budget) {
    const auto policy = parse_bunker_policy(policy_name);
    if (!policy) {
        std::cerr << "unknown bunker policy '" << policy_name << "'\n";
        return kUsage;
    }
    const Topology topo = load_topology(topology_path);
    std::vector<AttackScenario> attacks;
    if (!scenario_path.empty()) attacks = load_scenario(scenario_path).attacks;
    const BunkerSet bunkers = place_bunkers(*policy, topo, attacks, budget);
    for (int v : bunkers.nodes) std::cout << v << ' ' << topo.node(v).name << '\n';
    return kOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, int workers) {
    SweepSpec spec = load_sweep_spec(spec_path);
    if (workers > 0) spec.workers = workers;
    const SweepResult result = run_sweep(spec);
    write_sweep_outputs(result, out_dir);
    size_t failures = 0;
    for (const SweepCell& c : result.cells) failures += c.failures.size();
    std::cout << result.cells.size() << " cells, " << failures << " failed seed runs\n";
    return failures == 0 ? kOk : kPartial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BLRSA solver toolkit for elastic optical networks"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate seeded demand/attack scenarios");
    std::string gen_topology, gen_group = "small", gen_out = ".";
    double gen_x = 100.0;
    std::vector<std::uint64_t> gen_seeds;
    gen->add_option("--topology", gen_topology, "Topology JSON file")->required();
    gen->add_option("--group", gen_group, "small|large");
    gen->add_option("--x", gen_x, "Jamming range upper bound X [km]");
    gen->add_option("--seeds", gen_seeds, "Seeds, one scenario file per seed");
    gen->add_option("--out", gen_out, "Output directory");

    // solve
    SolveOptions sopt;
    auto* solve_cmd = app.add_subcommand("solve", "Place bunkers and solve the RSA problem");
    solve_cmd->add_option("--topology", sopt.topology_path)->required();
    solve_cmd->add_option("--scenario", sopt.scenario_path)->required();
    solve_cmd->add_option("--algorithm", sopt.algorithm, "1s-rsa|2s-rsa|ff-rsa|ld-rsa");
    solve_cmd->add_option("--bunker-policy", sopt.policy,
                          "AvgNeighbour|MinNeighbour|NodalDegree|AdaptiveAvg|AdaptiveMax");
    solve_cmd->add_option("--lambda", sopt.lambda, "Candidate paths per search (0 = tuned default)");
    solve_cmd->add_option("--paths", sopt.paths, "|P| light-paths per demand");
    solve_cmd->add_option("--bunkers", sopt.bunkers, "|B| bunker budget");
    solve_cmd->add_option("--slices", sopt.slices, "|S| slices per link");
    solve_cmd->add_option("--cspec", sopt.c_spec, "Spectrum weight");
    solve_cmd->add_option("--cres", sopt.c_res, "Resilience weight");
    solve_cmd->add_option("--out", sopt.out_solution, "Solution JSON output");
    solve_cmd->add_option("--csv", sopt.out_csv, "Metrics CSV to append to");

    // evaluate
    SolveOptions eopt;
    std::string eval_solution;
    auto* eval_cmd = app.add_subcommand("evaluate", "Check a solution and compute metrics");
    eval_cmd->add_option("--topology", eopt.topology_path)->required();
    eval_cmd->add_option("--scenario", eopt.scenario_path)->required();
    eval_cmd->add_option("--solution", eval_solution)->required();
    eval_cmd->add_option("--paths", eopt.paths, "|P| light-paths per demand");
    eval_cmd->add_option("--bunkers", eopt.bunkers, "|B| bunker budget");
    eval_cmd->add_option("--slices", eopt.slices, "|S| slices per link");
    eval_cmd->add_option("--cspec", eopt.c_spec);
    eval_cmd->add_option("--cres", eopt.c_res);
    eval_cmd->add_option("--csv", eopt.out_csv, "Metrics CSV to append to");

    // bunkers
    std::string b_topology, b_scenario, b_policy = "AdaptiveAvg";
    int b_budget = 0;
    auto* bunkers_cmd = app.add_subcommand("bunkers", "Run a bunker-location policy only");
    bunkers_cmd->add_option("--topology", b_topology)->required();
    bunkers_cmd->add_option("--scenario", b_scenario, "Scenario JSON (for adaptive policies)");
    bunkers_cmd->add_option("--bunker-policy", b_policy);
    bunkers_cmd->add_option("--bunkers", b_budget, "|B| bunker budget")->required();

    // sweep
    std::string sweep_spec, sweep_out = "sweep_out";
    int sweep_workers = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment grid");
    sweep_cmd->add_option("--config", sweep_spec, "Sweep spec JSON")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output directory");
    sweep_cmd->add_option("--workers", sweep_workers, "Worker threads (0 = from config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kOk : kUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_topology, gen_group, gen_x, gen_seeds, gen_out);
        if (solve_cmd->parsed()) return cmd_solve(sopt);
        if (eval_cmd->parsed()) return cmd_evaluate(eopt, eval_solution);
        if (bunkers_cmd->parsed()) return cmd_bunkers(b_topology, b_scenario, b_policy, b_budget);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_spec, sweep_out, sweep_workers);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
