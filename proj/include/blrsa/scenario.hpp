#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "blrsa/model.hpp"

namespace blrsa {

enum class ScenarioGroup { Small, Large };

std::optional<ScenarioGroup> parse_group(std::string name);
std::string to_string(ScenarioGroup group);

// Small: 1 Tbps total, bitrates U[50,400], one attack per node.
// Large: 40 Tbps total, bitrates U[50,500], 3|V| attacks with uniform targets.
// Destructive range is always 0 km (an attack destroys exactly its target).
struct GenSpec {
    ScenarioGroup group = ScenarioGroup::Small;
    std::uint64_t seed = 0;
    double x_km = 100.0;  // jamming upper bound, >= 10
};

struct Scenario {
    std::vector<Demand> demands;
    std::vector<AttackScenario> attacks;
    // meta
    std::uint64_t seed = 0;
    ScenarioGroup group = ScenarioGroup::Small;
    double x_km = 0.0;
    std::string topology_name;
};

// Deterministic stream per (seed, purpose). The engine is the fully specified
// std::mt19937_64; uniform mappings are explicit because the standard
// distributions are not portable across library implementations.
class ScenarioRng {
public:
    ScenarioRng(std::uint64_t seed, std::uint64_t purpose);
    std::uint64_t next_u64();
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }  // [0,1)
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
    // Unbiased integer in [0, n) via rejection.
    std::uint64_t uniform_int(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

std::vector<Demand> generate_demands(const GenSpec& spec, const Topology& topo);
std::vector<AttackScenario> generate_attacks(const GenSpec& spec, const Topology& topo);
Scenario generate_scenario(const GenSpec& spec, const Topology& topo, std::string topology_name);

}  // namespace blrsa
