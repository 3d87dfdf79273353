#include "blrsa/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <stdexcept>

namespace blrsa {

SolverConfig SolverConfig::from_instance(const ProblemInstance& inst, int lambda) {
    SolverConfig cfg;
    cfg.lambda = lambda;
    cfg.num_paths = inst.num_paths;
    cfg.c_spec = inst.c_spec;
    cfg.c_res = inst.c_res;
    cfg.num_slices = inst.num_slices;
    cfg.k_candidates = std::max(cfg.k_candidates, inst.num_paths);
    return cfg;
}

double Solution::blocked_gbps(const ProblemInstance& inst) const {
    double total = 0.0;
    for (const BlockedLightPath& b : blocked)
        total += inst.demands.at(static_cast<size_t>(b.demand)).bitrate_gbps;
    return total;
}

namespace {

struct SearchPath {
    double weight = 0.0;
    std::vector<int> nodes;
    std::vector<int> links;
};

// Min-heap ordering on (weight, hops, node sequence).
struct SearchPathGreater {
    bool operator()(const SearchPath& a, const SearchPath& b) const {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() > b.nodes.size();
        return a.nodes > b.nodes;
    }
};

void require_contiguous_demand_ids(const ProblemInstance& inst) {
    for (size_t i = 0; i < inst.demands.size(); ++i)
        if (inst.demands[i].id != static_cast<int>(i))
            throw std::invalid_argument("demand ids must be contiguous from 0");
}

// Demand processing order: decreasing bitrate, ties by lower id.
std::vector<int> demand_order(const std::vector<Demand>& demands) {
    std::vector<int> order(demands.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return demands[static_cast<size_t>(a)].bitrate_gbps >
               demands[static_cast<size_t>(b)].bitrate_gbps;
    });
    return order;
}

}  // namespace

std::vector<RoutingPath> k_shortest_paths(const Topology& topo, const LinkWeightFn& weight,
                                          int s, int t, int k,
                                          const std::vector<int>& banned_links) {
    if (s == t) throw std::invalid_argument("source equals target");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::vector<char> banned(static_cast<size_t>(topo.num_links()), 0);
    for (int e : banned_links) banned[static_cast<size_t>(e)] = 1;

    // Best-first enumeration of simple paths. The key (weight, hops, node
    // sequence) is monotone under extension, so target paths pop in the
    // required order.
    std::priority_queue<SearchPath, std::vector<SearchPath>, SearchPathGreater> queue;
    queue.push({0.0, {s}, {}});
    std::vector<RoutingPath> out;
    constexpr long kPopCap = 4'000'000;
    long pops = 0;
    while (!queue.empty() && static_cast<int>(out.size()) < k && pops < kPopCap) {
        SearchPath cur = queue.top();
        queue.pop();
        ++pops;
        const int v = cur.nodes.back();
        if (v == t) {
            RoutingPath p = make_path(topo, -1, cur.links);
            out.push_back(std::move(p));
            continue;
        }
        for (int e : topo.out_links(v)) {
            if (banned[static_cast<size_t>(e)]) continue;
            const Link& l = topo.link(e);
            if (std::find(cur.nodes.begin(), cur.nodes.end(), l.dst) != cur.nodes.end()) continue;
            const double w = weight(l);
            if (w < 0.0) throw std::invalid_argument("link weights must be nonnegative");
            SearchPath next = cur;
            next.weight += w;
            next.nodes.push_back(l.dst);
            next.links.push_back(e);
            queue.push(std::move(next));
        }
    }
    return out;
}

ModifiedVulMatrix modified_vul_matrix(const std::vector<RoutingPath>& selected,
                                      const VulMatrix& base) {
    const size_t n = base.size();
    ModifiedVulMatrix out(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = static_cast<double>(base[i][j]);
    // Popularity factor: 1 + number of selected paths crossing link (i,j).
    for (const RoutingPath& p : selected)
        for (size_t i = 0; i + 1 < p.node_ids.size(); ++i) {
            const auto a = static_cast<size_t>(p.node_ids[i]);
            const auto b = static_cast<size_t>(p.node_ids[i + 1]);
            out[a][b] += static_cast<double>(base[a][b]);
        }
    return out;
}

std::vector<RoutingPath> find_sld_paths(const Topology& topo, const Demand& demand,
                                        const std::vector<RoutingPath>& selected,
                                        const VulMatrix& vul, int count) {
    std::vector<int> banned;
    for (const RoutingPath& p : selected)
        banned.insert(banned.end(), p.link_ids.begin(), p.link_ids.end());
    auto weight = [&](const Link& l) {
        return static_cast<double>(vul[static_cast<size_t>(l.src)][static_cast<size_t>(l.dst)]);
    };
    std::vector<RoutingPath> paths =
        k_shortest_paths(topo, weight, demand.src, demand.dst, count, banned);
    for (RoutingPath& p : paths) p.demand = demand.id;
    return paths;
}

double path_weight(const RoutingPath& path, const Topology& topo, const ModifiedVulMatrix& vul) {
    double w = 0.0;
    for (int e : path.link_ids) {
        const Link& l = topo.link(e);
        w += vul[static_cast<size_t>(l.src)][static_cast<size_t>(l.dst)];
    }
    return w;
}

double lightpath_cost(const Channel& channel, double len_under_vul, const SolverConfig& config,
                      int num_attacks, int num_links) {
    const double len_max = static_cast<double>(num_attacks) * static_cast<double>(num_links);
    const double spec_term =
        static_cast<double>(channel.last_slice()) / static_cast<double>(config.num_slices);
    const double res_term = len_max > 0.0 ? len_under_vul / len_max : 0.0;
    return config.c_spec * spec_term + config.c_res * res_term;
}

int path_similarity(const RoutingPath& a, const RoutingPath& b) {
    int common = 0;
    for (int e : a.link_ids)
        if (b.uses_link(e)) ++common;
    return common;
}

namespace {

// Modulation + first-fit channel against the current grid, nothing allocated.
std::optional<LightPath> build_candidate(const RoutingPath& path, const Demand& demand,
                                         const ProblemInstance& inst, const SpectrumGrid& grid) {
    const Modulation* mod = select_modulation(path.length_km, inst.modulations);
    if (mod == nullptr) return std::nullopt;
    const int size = required_slices(demand.bitrate_gbps, *mod);
    std::optional<Channel> ch = grid.first_fit(path, size);
    if (!ch) return std::nullopt;
    return LightPath{path, mod->name, *ch};
}

std::vector<RoutingPath> selected_routing_paths(const std::vector<LightPath>& lps) {
    std::vector<RoutingPath> out;
    out.reserve(lps.size());
    for (const LightPath& lp : lps) out.push_back(lp.path);
    return out;
}

}  // namespace

Solution solve_1s_rsa(const ProblemInstance& inst, const BunkerSet& bunkers,
                      const SolverConfig& cfg) {
    require_contiguous_demand_ids(inst);
    Solution sol;
    sol.bunkers = bunkers;
    sol.lightpaths.resize(inst.demands.size());
    sol.grid = SpectrumGrid(inst.topology.num_links(), cfg.num_slices);
    const VulMatrix vul = compute_vul_matrix(inst.topology, inst.attacks, bunkers);
    int next_owner = 0;

    for (int di : demand_order(inst.demands)) {
        const Demand& d = inst.demands[static_cast<size_t>(di)];
        std::vector<LightPath>& chosen = sol.lightpaths[static_cast<size_t>(di)];
        for (int pi = 0; pi < cfg.num_paths; ++pi) {
            const std::vector<RoutingPath> selected = selected_routing_paths(chosen);
            std::vector<RoutingPath> candidates =
                find_sld_paths(inst.topology, d, selected, vul, cfg.lambda);
            const ModifiedVulMatrix vul_mod = modified_vul_matrix(selected, vul);
            if (static_cast<int>(candidates.size()) < cfg.lambda) {
                auto weight = [&](const Link& l) {
                    return vul_mod[static_cast<size_t>(l.src)][static_cast<size_t>(l.dst)];
                };
                for (RoutingPath& p :
                     k_shortest_paths(inst.topology, weight, d.src, d.dst, cfg.lambda)) {
                    if (static_cast<int>(candidates.size()) >= cfg.lambda) break;
                    p.demand = d.id;
                    if (std::find(candidates.begin(), candidates.end(), p) == candidates.end())
                        candidates.push_back(std::move(p));
                }
            }

            std::optional<LightPath> best;
            double best_cost = 0.0;
            for (const RoutingPath& p : candidates) {
                std::optional<LightPath> cand = build_candidate(p, d, inst, sol.grid);
                if (!cand) continue;
                const double len = path_weight(p, inst.topology, vul_mod);
                const double cost =
                    lightpath_cost(cand->channel, len, cfg,
                                   static_cast<int>(inst.attacks.size()), inst.topology.num_links());
                if (!best || cost < best_cost) { best = std::move(cand); best_cost = cost; }
            }
            if (!best) {
                sol.blocked.push_back({d.id, pi});
                continue;
            }
            sol.grid.allocate(best->path, best->channel, next_owner++);
            chosen.push_back(std::move(*best));
        }
    }
    return sol;
}

Solution solve_2s_rsa(const ProblemInstance& inst, const BunkerSet& bunkers,
                      const SolverConfig& cfg) {
    require_contiguous_demand_ids(inst);
    Solution sol;
    sol.bunkers = bunkers;
    sol.lightpaths.resize(inst.demands.size());
    sol.grid = SpectrumGrid(inst.topology.num_links(), cfg.num_slices);
    const VulMatrix vul = compute_vul_matrix(inst.topology, inst.attacks, bunkers);
    const std::vector<int> order = demand_order(inst.demands);

    // Routing assignment.
    std::vector<std::vector<RoutingPath>> routes(inst.demands.size());
    std::vector<std::vector<char>> routed(inst.demands.size());
    for (int di : order) {
        const Demand& d = inst.demands[static_cast<size_t>(di)];
        auto& paths = routes[static_cast<size_t>(di)];
        routed[static_cast<size_t>(di)].assign(static_cast<size_t>(cfg.num_paths), 0);
        for (int pi = 0; pi < cfg.num_paths; ++pi) {
            std::vector<RoutingPath> sld = find_sld_paths(inst.topology, d, paths, vul, 1);
            if (!sld.empty()) {
                paths.push_back(std::move(sld.front()));
                routed[static_cast<size_t>(di)][static_cast<size_t>(pi)] = 1;
                continue;
            }
            const ModifiedVulMatrix vul_mod = modified_vul_matrix(paths, vul);
            auto weight = [&](const Link& l) {
                return vul_mod[static_cast<size_t>(l.src)][static_cast<size_t>(l.dst)];
            };
            std::vector<RoutingPath> found =
                k_shortest_paths(inst.topology, weight, d.src, d.dst, 1);
            if (found.empty()) {
                sol.blocked.push_back({d.id, pi});
                continue;
            }
            found.front().demand = d.id;
            paths.push_back(std::move(found.front()));
            routed[static_cast<size_t>(di)][static_cast<size_t>(pi)] = 1;
        }
    }

    // Spectrum assignment, same demand order.
    int next_owner = 0;
    for (int di : order) {
        const Demand& d = inst.demands[static_cast<size_t>(di)];
        int pi = 0;
        for (const RoutingPath& p : routes[static_cast<size_t>(di)]) {
            std::optional<LightPath> lp = build_candidate(p, d, inst, sol.grid);
            if (!lp) {
                sol.blocked.push_back({d.id, pi++});
                continue;
            }
            sol.grid.allocate(lp->path, lp->channel, next_owner++);
            sol.lightpaths[static_cast<size_t>(di)].push_back(std::move(*lp));
            ++pi;
        }
    }
    return sol;
}

Solution solve_ff_rsa(const ProblemInstance& inst, const BunkerSet& bunkers,
                      const SolverConfig& cfg) {
    require_contiguous_demand_ids(inst);
    Solution sol;
    sol.bunkers = bunkers;
    sol.lightpaths.resize(inst.demands.size());
    sol.grid = SpectrumGrid(inst.topology.num_links(), cfg.num_slices);
    auto km = [](const Link& l) { return l.length_km; };
    int next_owner = 0;

    for (int di : demand_order(inst.demands)) {
        const Demand& d = inst.demands[static_cast<size_t>(di)];
        std::vector<RoutingPath> paths =
            k_shortest_paths(inst.topology, km, d.src, d.dst, cfg.num_paths);
        for (int pi = 0; pi < cfg.num_paths; ++pi) {
            if (pi >= static_cast<int>(paths.size())) {
                sol.blocked.push_back({d.id, pi});
                continue;
            }
            RoutingPath p = paths[static_cast<size_t>(pi)];
            p.demand = d.id;
            std::optional<LightPath> lp = build_candidate(p, d, inst, sol.grid);
            if (!lp) {
                sol.blocked.push_back({d.id, pi});
                continue;
            }
            sol.grid.allocate(lp->path, lp->channel, next_owner++);
            sol.lightpaths[static_cast<size_t>(di)].push_back(std::move(*lp));
        }
    }
    return sol;
}

Solution solve_ld_rsa(const ProblemInstance& inst, const BunkerSet& bunkers,
                      const SolverConfig& cfg) {
    require_contiguous_demand_ids(inst);
    Solution sol;
    sol.bunkers = bunkers;
    sol.lightpaths.resize(inst.demands.size());
    sol.grid = SpectrumGrid(inst.topology.num_links(), cfg.num_slices);
    auto km = [](const Link& l) { return l.length_km; };
    int next_owner = 0;

    for (int di : demand_order(inst.demands)) {
        const Demand& d = inst.demands[static_cast<size_t>(di)];
        std::vector<RoutingPath> pool =
            k_shortest_paths(inst.topology, km, d.src, d.dst, cfg.k_candidates);
        for (RoutingPath& p : pool) p.demand = d.id;

        std::vector<RoutingPath> picked;
        if (!pool.empty()) {
            picked.push_back(pool.front());
            pool.erase(pool.begin());
        }
        while (static_cast<int>(picked.size()) < cfg.num_paths && !pool.empty()) {
            size_t best = 0;
            int best_sim = 0;
            for (size_t i = 0; i < pool.size(); ++i) {
                int sim = 0;
                for (const RoutingPath& q : picked) sim += path_similarity(pool[i], q);
                if (i == 0 || sim < best_sim ||
                    (sim == best_sim && pool[i].length_km < pool[best].length_km)) {
                    best = i;
                    best_sim = sim;
                }
            }
            picked.push_back(pool[best]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        }

        for (int pi = 0; pi < cfg.num_paths; ++pi) {
            if (pi >= static_cast<int>(picked.size())) {
                sol.blocked.push_back({d.id, pi});
                continue;
            }
            std::optional<LightPath> lp =
                build_candidate(picked[static_cast<size_t>(pi)], d, inst, sol.grid);
            if (!lp) {
                sol.blocked.push_back({d.id, pi});
                continue;
            }
            sol.grid.allocate(lp->path, lp->channel, next_owner++);
            sol.lightpaths[static_cast<size_t>(di)].push_back(std::move(*lp));
        }
    }
    return sol;
}

std::optional<Algorithm> parse_algorithm(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "1s-rsa") return Algorithm::OneStepRsa;
    if (name == "2s-rsa") return Algorithm::TwoStepRsa;
    if (name == "ff-rsa") return Algorithm::FirstFitRsa;
    if (name == "ld-rsa") return Algorithm::LinkDisjointRsa;
    return std::nullopt;
}

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::OneStepRsa: return "1s-rsa";
        case Algorithm::TwoStepRsa: return "2s-rsa";
        case Algorithm::FirstFitRsa: return "ff-rsa";
        case Algorithm::LinkDisjointRsa: return "ld-rsa";
    }
    return "?";
}

Solution solve(Algorithm algorithm, const ProblemInstance& inst, const BunkerSet& bunkers,
               const SolverConfig& cfg) {
    switch (algorithm) {
        case Algorithm::OneStepRsa: return solve_1s_rsa(inst, bunkers, cfg);
        case Algorithm::TwoStepRsa: return solve_2s_rsa(inst, bunkers, cfg);
        case Algorithm::FirstFitRsa: return solve_ff_rsa(inst, bunkers, cfg);
        case Algorithm::LinkDisjointRsa: return solve_ld_rsa(inst, bunkers, cfg);
    }
    throw std::logic_error("unreachable");
}

}  // namespace blrsa
