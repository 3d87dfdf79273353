#include "blrsa/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace blrsa {

namespace {

enum Topo { PL = 0, DT = 1, EURO = 2 };

int topo_index(const std::string& name) {
    if (name == "pl12") return PL;
    if (name == "dt14") return DT;
    if (name == "euro16") return EURO;
    return -1;
}

}  // namespace

int recommended_lambda(const std::string& topology_name, BunkerPolicy policy, double c_spec) {
    const int ti = topo_index(topology_name);
    if (ti < 0) return 30;
    const int row = static_cast<int>(std::lround(c_spec * 10.0));
    // Per-topology tuned values, indexed [row 0..10][policy] -> {pl12, dt14, euro16}.
    const auto pick = [&](int pl, int dt, int euro) { return ti == PL ? pl : ti == DT ? dt : euro; };
    switch (row) {
        case 10: return pick(30, 30, 30);
        case 9:
        case 8:
        case 7: return pick(30, 30, 25);
        case 6:
            switch (policy) {
                case BunkerPolicy::AdaptiveAvg:
                case BunkerPolicy::AvgNeighbour: return pick(30, 30, 15);
                default: return pick(30, 30, 25);
            }
        case 5:
            return policy == BunkerPolicy::NodalDegree ? pick(30, 30, 15) : pick(30, 30, 5);
        case 4: return pick(30, 30, 5);
        case 3:
            switch (policy) {
                case BunkerPolicy::AdaptiveMax: return pick(30, 20, 5);
                case BunkerPolicy::NodalDegree: return pick(30, 25, 5);
                default: return pick(30, 30, 5);
            }
        case 2:
            switch (policy) {
                case BunkerPolicy::AdaptiveAvg: return pick(30, 30, 5);
                case BunkerPolicy::AvgNeighbour:
                case BunkerPolicy::NodalDegree: return pick(30, 20, 5);
                default: return pick(30, 5, 5);
            }
        case 1:
        case 0: return pick(30, 5, 5);
        default: return 30;
    }
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    in >> j;

    SweepSpec spec;
    for (const auto& t : j.at("topologies")) spec.topologies.emplace_back(t.get<std::string>());
    for (const auto& a : j.value("algorithms", nlohmann::json::array({"1s-rsa"}))) {
        auto alg = parse_algorithm(a.get<std::string>());
        if (!alg) throw std::runtime_error("unknown algorithm " + a.get<std::string>());
        spec.algorithms.push_back(*alg);
    }
    for (const auto& p : j.value("policies", nlohmann::json::array({"AdaptiveAvg"}))) {
        auto pol = parse_bunker_policy(p.get<std::string>());
        if (!pol) throw std::runtime_error("unknown bunker policy " + p.get<std::string>());
        spec.policies.push_back(*pol);
    }
    spec.paths_list = j.value("paths", std::vector<int>{1});
    spec.bunkers_list = j.value("bunkers", std::vector<int>{0});
    spec.x_list = j.value("x_km", std::vector<double>{100.0});
    spec.lambda_list = j.value("lambda", std::vector<int>{0});
    if (j.contains("weights")) {
        for (const auto& w : j.at("weights"))
            spec.weights.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
    } else {
        spec.weights = {{1.0, 0.0}};
    }
    for (const auto& s : j.value("seeds", std::vector<std::uint64_t>{1}))
        spec.seeds.push_back(s);
    if (j.contains("group")) {
        auto g = parse_group(j.at("group").get<std::string>());
        if (!g) throw std::runtime_error("unknown scenario group");
        spec.group = *g;
    }
    spec.num_slices = j.value("slices", 320);
    spec.workers = j.value("workers", 1);
    return spec;
}

namespace {

void run_cell(SweepCell& cell, const Topology& topo, const SweepSpec& spec) {
    double ms = 0, used = 0, lf = 0, obj = 0, rt = 0;
    for (std::uint64_t seed : spec.seeds) {
        try {
            GenSpec gen{spec.group, seed, cell.x_km};
            const Scenario scenario = generate_scenario(gen, topo, cell.topology);

            ProblemInstance inst;
            inst.topology = topo;
            inst.demands = scenario.demands;
            inst.attacks = scenario.attacks;
            inst.num_paths = cell.num_paths;
            inst.num_bunkers = cell.num_bunkers;
            inst.num_slices = spec.num_slices;
            inst.c_spec = cell.c_spec;
            inst.c_res = cell.c_res;
            inst.fill_default_limits();

            const int lambda = cell.lambda > 0
                                   ? cell.lambda
                                   : recommended_lambda(cell.topology, cell.policy, cell.c_spec);
            const auto t0 = std::chrono::steady_clock::now();
            const BunkerSet bunkers =
                place_bunkers(cell.policy, topo, inst.attacks, cell.num_bunkers);
            const Solution sol =
                solve(cell.algorithm, inst, bunkers, SolverConfig::from_instance(inst, lambda));
            const auto t1 = std::chrono::steady_clock::now();
            const Metrics m = compute_metrics(sol, inst);

            ms += m.max_slice_index;
            used += m.used_slices;
            lf += m.avg_lost_flow_gbps;
            obj += m.objective;
            rt += std::chrono::duration<double, std::milli>(t1 - t0).count();
            ++cell.seeds_ok;
        } catch (const std::exception& e) {
            cell.failures.push_back("seed " + std::to_string(seed) + ": " + e.what());
        }
    }
    if (cell.seeds_ok > 0) {
        const double n = cell.seeds_ok;
        cell.avg_max_slice_index = ms / n;
        cell.avg_used_slices = used / n;
        cell.avg_lf_gbps = lf / n;
        cell.avg_objective = obj / n;
        cell.avg_runtime_ms = rt / n;
    }
}

std::string cell_prefix(const SweepCell& c) {
    return c.topology + ',' + to_string(c.algorithm) + ',' + to_string(c.policy) + ',' +
           format_fixed(c.x_km) + ',' + std::to_string(c.lambda) + ',' + format_fixed(c.c_spec) +
           ',' + format_fixed(c.c_res);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    SweepResult result;
    std::vector<Topology> topologies;
    std::vector<std::string> names;
    for (const auto& path : spec.topologies) {
        topologies.push_back(load_topology(path));
        names.push_back(path.stem().string());
    }

    // Cartesian product in documented key order.
    for (size_t ti = 0; ti < topologies.size(); ++ti)
        for (Algorithm alg : spec.algorithms)
            for (BunkerPolicy pol : spec.policies)
                for (int paths : spec.paths_list)
                    for (int bunkers : spec.bunkers_list)
                        for (double x : spec.x_list)
                            for (int lambda : spec.lambda_list)
                                for (auto [cs, cr] : spec.weights) {
                                    SweepCell cell;
                                    cell.topology = names[ti];
                                    cell.algorithm = alg;
                                    cell.policy = pol;
                                    cell.num_paths = paths;
                                    cell.num_bunkers = bunkers;
                                    cell.x_km = x;
                                    cell.lambda = lambda;
                                    cell.c_spec = cs;
                                    cell.c_res = cr;
                                    result.cells.push_back(std::move(cell));
                                }

    std::map<std::string, size_t> topo_by_name;
    for (size_t i = 0; i < names.size(); ++i) topo_by_name[names[i]] = i;

    const int workers = std::max(1, spec.workers);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < result.cells.size(); i = next.fetch_add(1))
            run_cell(result.cells[i], topologies[topo_by_name[result.cells[i].topology]], spec);
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return result;
}

void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream out(out_dir / "cells.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write cells.csv");
        out << "topology,algorithm,policy,x_km,lambda,c_spec,c_res,paths,bunkers,seeds_ok,"
               "avg_ms,avg_used_slices,avg_lf_gbps,avg_objective,avg_runtime_ms,failures\n";
        for (const SweepCell& c : result.cells) {
            out << cell_prefix(c) << ',' << c.num_paths << ',' << c.num_bunkers << ','
                << c.seeds_ok << ',' << format_fixed(c.avg_max_slice_index) << ','
                << format_fixed(c.avg_used_slices) << ',' << format_fixed(c.avg_lf_gbps) << ','
                << format_fixed(c.avg_objective) << ',' << format_fixed(c.avg_runtime_ms) << ','
                << c.failures.size() << '\n';
        }
    }

    // Derived tables relative to the (P=1, same B) and (same P, B=0) baselines.
    std::map<std::string, const SweepCell*> index;
    for (const SweepCell& c : result.cells)
        index[cell_prefix(c) + '|' + std::to_string(c.num_paths) + '|' +
              std::to_string(c.num_bunkers)] = &c;
    auto find_cell = [&](const SweepCell& c, int paths, int bunkers) -> const SweepCell* {
        auto it = index.find(cell_prefix(c) + '|' + std::to_string(paths) + '|' +
                             std::to_string(bunkers));
        return it == index.end() ? nullptr : it->second;
    };

    std::ofstream gp(out_dir / "gain_paths.csv", std::ios::binary);
    std::ofstream gb(out_dir / "gain_bunkers.csv", std::ios::binary);
    std::ofstream sr(out_dir / "spectrum_ratio.csv", std::ios::binary);
    const std::string head =
        "topology,algorithm,policy,x_km,lambda,c_spec,c_res,paths,bunkers,value\n";
    gp << head;
    gb << head;
    sr << head;
    for (const SweepCell& c : result.cells) {
        if (c.seeds_ok == 0) continue;
        const std::string prefix =
            cell_prefix(c) + ',' + std::to_string(c.num_paths) + ',' + std::to_string(c.num_bunkers);
        if (c.num_paths > 1) {
            if (const SweepCell* base = find_cell(c, 1, c.num_bunkers);
                base && base->seeds_ok > 0 && base->avg_lf_gbps > 0.0)
                gp << prefix << ',' << format_fixed(1.0 - c.avg_lf_gbps / base->avg_lf_gbps) << '\n';
            if (const SweepCell* base = find_cell(c, 1, c.num_bunkers);
                base && base->seeds_ok > 0 && base->avg_used_slices > 0.0)
                sr << prefix << ',' << format_fixed(c.avg_used_slices / base->avg_used_slices)
                   << '\n';
        }
        if (c.num_bunkers > 0) {
            if (const SweepCell* base = find_cell(c, c.num_paths, 0);
                base && base->seeds_ok > 0 && base->avg_lf_gbps > 0.0)
                gb << prefix << ',' << format_fixed(1.0 - c.avg_lf_gbps / base->avg_lf_gbps) << '\n';
        }
    }
}

}  // namespace blrsa
