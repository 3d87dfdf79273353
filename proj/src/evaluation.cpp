#include "blrsa/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

namespace blrsa {

namespace {

std::vector<char> node_availability(const Topology& topo, const AttackScenario& attack,
                                    const BunkerSet& bunkers) {
    std::vector<char> avail(static_cast<size_t>(topo.num_nodes()), 1);
    const AffectedSets sets = attack_affected_sets(topo, attack);
    for (int v : sets.jammed)
        if (!bunkers.contains(v)) avail[static_cast<size_t>(v)] = 0;
    for (int v : sets.destroyed) avail[static_cast<size_t>(v)] = 0;  // bunkers do not help
    return avail;
}

std::pair<double, double> effective_limits(const ProblemInstance& inst) {
    ProblemInstance tmp = inst;
    tmp.fill_default_limits();
    return {tmp.max_spec, tmp.max_loss};
}

}  // namespace

AttackOutcome simulate_attack(const Solution& sol, const ProblemInstance& inst,
                              const AttackScenario& attack) {
    AttackOutcome out;
    out.attack_id = attack.id;
    out.node_available = node_availability(inst.topology, attack, sol.bunkers);
    out.link_available.resize(static_cast<size_t>(inst.topology.num_links()));
    for (const Link& e : inst.topology.links())
        out.link_available[static_cast<size_t>(e.id)] =
            out.node_available[static_cast<size_t>(e.src)] &&
            out.node_available[static_cast<size_t>(e.dst)];

    out.path_available.resize(inst.demands.size());
    out.demand_realized.assign(inst.demands.size(), 0);
    for (size_t di = 0; di < inst.demands.size(); ++di) {
        const auto& lps = di < sol.lightpaths.size() ? sol.lightpaths[di] : std::vector<LightPath>{};
        auto& flags = out.path_available[di];
        for (const LightPath& lp : lps) {
            char ok = 1;
            for (int e : lp.path.link_ids)
                if (!out.link_available[static_cast<size_t>(e)]) { ok = 0; break; }
            flags.push_back(ok);
            if (ok) out.demand_realized[di] = 1;
        }
        if (!out.demand_realized[di]) out.lost_gbps += inst.demands[di].bitrate_gbps;
    }
    return out;
}

namespace {

std::vector<std::string> collect_violations(const Solution& sol, const ProblemInstance& inst,
                                            bool include_completeness) {
    std::vector<std::string> report;
    const Topology& topo = inst.topology;

    if (sol.bunkers.size() > inst.num_bunkers)
        report.push_back("bunker count exceeds |B|");
    for (int v : sol.bunkers.nodes)
        if (v < 0 || v >= topo.num_nodes()) report.push_back("bunker on unknown node");

    if (sol.lightpaths.size() != inst.demands.size()) {
        report.push_back("solution does not cover the demand set");
        return report;
    }

    SpectrumGrid rebuilt(topo.num_links(), inst.num_slices);
    int owner = 0;
    for (size_t di = 0; di < inst.demands.size(); ++di) {
        const Demand& d = inst.demands[di];
        const auto& lps = sol.lightpaths[di];
        const std::string tag = "demand " + std::to_string(d.id);
        if (include_completeness && static_cast<int>(lps.size()) != inst.num_paths)
            report.push_back(tag + ": has " + std::to_string(lps.size()) + " light-paths, expected " +
                             std::to_string(inst.num_paths));
        for (const LightPath& lp : lps) {
            const RoutingPath& p = lp.path;
            if (p.demand != d.id) report.push_back(tag + ": light-path carries wrong demand id");
            if (p.link_ids.empty()) { report.push_back(tag + ": empty path"); continue; }

            bool chained = true;
            double length = 0.0;
            int at = topo.link(p.link_ids.front()).src;
            std::set<int> visited = {at};
            for (int e : p.link_ids) {
                if (e < 0 || e >= topo.num_links()) { chained = false; break; }
                const Link& l = topo.link(e);
                if (l.src != at) { chained = false; break; }
                at = l.dst;
                if (!visited.insert(at).second) { chained = false; break; }
                length += l.length_km;
            }
            if (!chained) {
                report.push_back(tag + ": path links do not form a simple chain");
                continue;
            }
            if (topo.link(p.link_ids.front()).src != d.src || at != d.dst)
                report.push_back(tag + ": path endpoints do not match the demand");
            if (std::abs(length - p.length_km) > 1e-6)
                report.push_back(tag + ": stored path length disagrees with link lengths");

            const Modulation* mod = nullptr;
            for (const Modulation& m : inst.modulations.entries())
                if (m.name == lp.modulation) { mod = &m; break; }
            if (mod == nullptr) {
                report.push_back(tag + ": unknown modulation '" + lp.modulation + "'");
                continue;
            }
            if (mod->reach_km < length - 1e-9)
                report.push_back(tag + ": modulation reach shorter than path length");
            if (lp.channel.size < required_slices(d.bitrate_gbps, *mod))
                report.push_back(tag + ": channel smaller than the required slice count");
            if (lp.channel.first_slice < 0 || lp.channel.last_slice() >= inst.num_slices) {
                report.push_back(tag + ": channel outside the slice range");
                continue;
            }
            if (rebuilt.fits(p, lp.channel)) {
                rebuilt.allocate(p, lp.channel, owner++);
            } else {
                report.push_back(tag + ": channel overlaps another allocation (guard band included)");
            }
        }
    }

    if (sol.grid.num_links() == rebuilt.num_links() && sol.grid.num_slices() == rebuilt.num_slices()) {
        bool same = true;
        for (int e = 0; e < rebuilt.num_links() && same; ++e)
            for (int s = 0; s < rebuilt.num_slices(); ++s)
                if ((sol.grid.owner(e, s) == -1) != (rebuilt.owner(e, s) == -1)) { same = false; break; }
        if (!same) report.push_back("solution grid inconsistent with its light-paths");
    } else if (sol.grid.num_links() != 0) {
        report.push_back("solution grid has wrong dimensions");
    }
    return report;
}

}  // namespace

std::vector<std::string> check_feasibility(const Solution& sol, const ProblemInstance& inst) {
    return collect_violations(sol, inst, /*include_completeness=*/true);
}

Metrics compute_metrics(const Solution& sol, const ProblemInstance& inst) {
    std::vector<std::string> hard = collect_violations(sol, inst, /*include_completeness=*/false);
    if (!hard.empty())
        throw std::invalid_argument("infeasible solution: " + hard.front());

    Metrics m;
    SpectrumGrid grid(inst.topology.num_links(), inst.num_slices);
    int owner = 0;
    for (const auto& lps : sol.lightpaths)
        for (const LightPath& lp : lps) grid.allocate(lp.path, lp.channel, owner++);
    m.max_slice_index = grid.max_slice_index();
    m.used_slices = grid.used_slice_count();

    for (const AttackScenario& a : inst.attacks) {
        const AttackOutcome outcome = simulate_attack(sol, inst, a);
        m.per_attack_lost.push_back(outcome.lost_gbps);
        m.total_lost_gbps += outcome.lost_gbps;
    }
    m.avg_lost_flow_gbps =
        inst.attacks.empty() ? 0.0 : m.total_lost_gbps / static_cast<double>(inst.attacks.size());
    m.blocked_gbps = sol.blocked_gbps(inst);

    const auto [max_spec, max_loss] = effective_limits(inst);
    m.objective = inst.c_spec * static_cast<double>(m.used_slices) / max_spec +
                  inst.c_res * m.total_lost_gbps / max_loss;
    return m;
}

namespace {

struct OraclePath {
    std::vector<int> link_ids;
    int channel_size = 0;        // body slices for this demand's bitrate
    std::string modulation;
    std::uint64_t survives = 0;  // bit a set when the path survives attack a
};

// All simple s->t paths, DFS in ascending neighbour order (lexicographic).
void enumerate_paths(const Topology& topo, int t, std::vector<int>& nodes, std::vector<int>& links,
                     std::vector<std::vector<int>>& out) {
    const int v = nodes.back();
    if (v == t) { out.push_back(links); return; }
    std::vector<int> edges = topo.out_links(v);
    std::sort(edges.begin(), edges.end(),
              [&](int a, int b) { return topo.link(a).dst < topo.link(b).dst; });
    for (int e : edges) {
        const int w = topo.link(e).dst;
        if (std::find(nodes.begin(), nodes.end(), w) != nodes.end()) continue;
        nodes.push_back(w);
        links.push_back(e);
        enumerate_paths(topo, t, nodes, links, out);
        nodes.pop_back();
        links.pop_back();
    }
}

// Minimum used-slice-count channel assignment for the fixed light-path list,
// exhaustive over first-slice placements with union-count pruning.
struct ChannelSearch {
    const std::vector<const OraclePath*>& paths;
    int num_slices;
    int best_used = std::numeric_limits<int>::max();
    std::vector<int> best_firsts;
    std::vector<int> firsts;
    std::vector<std::uint32_t> occ;  // per link bitmask, guard included
    bool feasibility_only;           // stop at the first feasible leaf

    bool run(size_t i, int used_bound) {
        if (i == paths.size()) {
            std::uint32_t all = 0;
            for (std::uint32_t o : occ) all |= o;
            const int used = std::popcount(all);
            if (used < best_used) { best_used = used; best_firsts = firsts; }
            return feasibility_only;
        }
        const OraclePath& p = *paths[i];
        const int span = p.channel_size + 1;  // body + guard
        for (int first = 0; first + span <= num_slices; ++first) {
            const std::uint32_t mask = ((1u << span) - 1u) << first;
            bool free = true;
            for (int e : p.link_ids)
                if (occ[static_cast<size_t>(e)] & mask) { free = false; break; }
            if (!free) continue;
            for (int e : p.link_ids) occ[static_cast<size_t>(e)] |= mask;
            std::uint32_t all = 0;
            for (std::uint32_t o : occ) all |= o;
            firsts.push_back(first);
            bool stop = false;
            if (std::popcount(all) < std::min(best_used, used_bound + 1))
                stop = run(i + 1, used_bound);
            firsts.pop_back();
            for (int e : p.link_ids) occ[static_cast<size_t>(e)] &= ~mask;
            if (stop) return true;
        }
        return false;
    }
};

}  // namespace

Solution brute_force_optimal(const ProblemInstance& inst, const OracleLimits& limits) {
    if (inst.topology.num_nodes() > limits.max_nodes ||
        static_cast<int>(inst.demands.size()) > limits.max_demands ||
        inst.num_slices > limits.max_slices || inst.num_paths > limits.max_paths ||
        inst.num_bunkers > limits.max_bunkers)
        throw std::invalid_argument("instance exceeds the brute-force limits");
    if (inst.attacks.size() > 64)
        throw std::invalid_argument("brute force supports at most 64 attacks");

    const Topology& topo = inst.topology;
    const int n = topo.num_nodes();
    const auto [max_spec, max_loss] = effective_limits(inst);
    const int num_attacks = static_cast<int>(inst.attacks.size());

    // Candidate simple paths per demand with modulation and slice needs.
    std::vector<std::vector<OraclePath>> cand(inst.demands.size());
    for (size_t di = 0; di < inst.demands.size(); ++di) {
        const Demand& d = inst.demands[di];
        std::vector<std::vector<int>> raw;
        std::vector<int> nodes = {d.src}, links;
        enumerate_paths(topo, d.dst, nodes, links, raw);
        for (const auto& link_seq : raw) {
            double len = 0.0;
            for (int e : link_seq) len += topo.link(e).length_km;
            const Modulation* mod = select_modulation(len, inst.modulations);
            if (mod == nullptr) continue;
            OraclePath p;
            p.link_ids = link_seq;
            p.modulation = mod->name;
            p.channel_size = required_slices(d.bitrate_gbps, *mod);
            if (p.channel_size + 1 > inst.num_slices) continue;
            cand[di].push_back(std::move(p));
        }
        if (cand[di].empty())
            throw std::runtime_error("no feasible path for demand " + std::to_string(d.id));
    }

    // Bunker subsets of size <= |B|, smaller sizes first, lexicographic within a size.
    std::vector<BunkerSet> bunker_sets;
    std::vector<std::vector<int>> subsets = {{}};
    for (size_t i = 0; i < subsets.size(); ++i) {
        std::vector<int> cur = subsets[i];
        if (static_cast<int>(cur.size()) < inst.num_bunkers) {
            const int start = cur.empty() ? 0 : cur.back() + 1;
            for (int v = start; v < n; ++v) {
                std::vector<int> next = cur;
                next.push_back(v);
                subsets.push_back(std::move(next));
            }
        }
    }
    for (const auto& s : subsets) {
        BunkerSet bs;
        for (int v : s) bs.add(v);
        bunker_sets.push_back(bs);
    }

    double best_obj = std::numeric_limits<double>::infinity();
    bool have_best = false;
    BunkerSet best_bunkers;
    std::vector<int> best_tuple_choice;                  // per demand: candidate-combination index
    std::vector<std::vector<std::vector<int>>> tuples(inst.demands.size());
    std::vector<int> best_firsts;

    // Combinations with repetition of candidate indices, size |P|, lexicographic.
    for (size_t di = 0; di < inst.demands.size(); ++di) {
        std::vector<int> combo;
        auto gen = [&](auto&& self, int start) -> void {
            if (static_cast<int>(combo.size()) == inst.num_paths) {
                tuples[di].push_back(combo);
                return;
            }
            for (int i = start; i < static_cast<int>(cand[di].size()); ++i) {
                combo.push_back(i);
                self(self, i);
                combo.pop_back();
            }
        };
        gen(gen, 0);
    }

    for (const BunkerSet& bunkers : bunker_sets) {
        // Per-attack path survival under this bunker set.
        std::vector<std::vector<char>> link_ok(static_cast<size_t>(num_attacks));
        for (int a = 0; a < num_attacks; ++a) {
            const std::vector<char> node_ok =
                node_availability(topo, inst.attacks[static_cast<size_t>(a)], bunkers);
            auto& row = link_ok[static_cast<size_t>(a)];
            row.resize(static_cast<size_t>(topo.num_links()));
            for (const Link& e : topo.links())
                row[static_cast<size_t>(e.id)] = node_ok[static_cast<size_t>(e.src)] &&
                                                 node_ok[static_cast<size_t>(e.dst)];
        }
        for (auto& dc : cand)
            for (OraclePath& p : dc) {
                p.survives = 0;
                for (int a = 0; a < num_attacks; ++a) {
                    bool ok = true;
                    for (int e : p.link_ids)
                        if (!link_ok[static_cast<size_t>(a)][static_cast<size_t>(e)]) { ok = false; break; }
                    if (ok) p.survives |= (std::uint64_t{1} << a);
                }
            }

        // Per-demand loss of each tuple under this bunker set.
        std::vector<std::vector<double>> tuple_loss(inst.demands.size());
        for (size_t di = 0; di < inst.demands.size(); ++di) {
            tuple_loss[di].reserve(tuples[di].size());
            for (const auto& combo : tuples[di]) {
                std::uint64_t realized = 0;
                for (int ci : combo) realized |= cand[di][static_cast<size_t>(ci)].survives;
                const int lost_attacks = num_attacks - std::popcount(realized);
                tuple_loss[di].push_back(inst.demands[di].bitrate_gbps *
                                         static_cast<double>(lost_attacks));
            }
        }

        std::vector<int> choice(inst.demands.size(), 0);
        auto recurse = [&](auto&& self, size_t di, double loss_so_far) -> void {
            if (inst.c_res * loss_so_far / max_loss >= best_obj) return;
            if (di == inst.demands.size()) {
                // Fix light-paths, then minimize the spectrum term.
                std::vector<const OraclePath*> lps;
                for (size_t k = 0; k < inst.demands.size(); ++k)
                    for (int ci : tuples[k][static_cast<size_t>(choice[k])])
                        lps.push_back(&cand[k][static_cast<size_t>(ci)]);
                const double res_term = inst.c_res * loss_so_far / max_loss;
                int used_bound = inst.num_slices;
                if (inst.c_spec > 0.0 && std::isfinite(best_obj)) {
                    const double cap = (best_obj - res_term) * max_spec / inst.c_spec;
                    if (cap < static_cast<double>(inst.num_slices))
                        used_bound = static_cast<int>(std::ceil(std::max(0.0, cap)));
                }
                ChannelSearch search{lps, inst.num_slices, std::numeric_limits<int>::max(),
                                     {}, {}, std::vector<std::uint32_t>(
                                                 static_cast<size_t>(topo.num_links()), 0),
                                     inst.c_spec == 0.0};
                search.run(0, used_bound);
                if (search.best_used == std::numeric_limits<int>::max())
                    return;  // no channel assignment fits
                const double obj =
                    inst.c_spec * static_cast<double>(search.best_used) / max_spec + res_term;
                if (obj < best_obj) {
                    best_obj = obj;
                    have_best = true;
                    best_bunkers = bunkers;
                    best_tuple_choice = choice;
                    best_firsts = search.best_firsts;
                }
                return;
            }
            for (size_t ti = 0; ti < tuples[di].size(); ++ti) {
                choice[di] = static_cast<int>(ti);
                self(self, di + 1, loss_so_far + tuple_loss[di][ti]);
            }
        };
        recurse(recurse, 0, 0.0);
    }

    if (!have_best) throw std::runtime_error("no feasible solution within the slice budget");

    Solution sol;
    sol.bunkers = best_bunkers;
    sol.lightpaths.resize(inst.demands.size());
    sol.grid = SpectrumGrid(topo.num_links(), inst.num_slices);
    size_t flat = 0;
    int owner = 0;
    for (size_t di = 0; di < inst.demands.size(); ++di) {
        for (int ci : tuples[di][static_cast<size_t>(best_tuple_choice[di])]) {
            const OraclePath& op = cand[di][static_cast<size_t>(ci)];
            LightPath lp;
            lp.path = make_path(topo, inst.demands[di].id, op.link_ids);
            lp.modulation = op.modulation;
            lp.channel = Channel{best_firsts[flat++], op.channel_size};
            sol.grid.allocate(lp.path, lp.channel, owner++);
            sol.lightpaths[di].push_back(std::move(lp));
        }
    }
    return sol;
}

}  // namespace blrsa
