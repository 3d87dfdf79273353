#include "blrsa/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace blrsa {

namespace {
constexpr std::uint64_t kDemandStream = 0x64656d616e647331ULL;
constexpr std::uint64_t kAttackStream = 0x61747461636b7331ULL;

// splitmix64, the usual seed mixer.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

std::optional<ScenarioGroup> parse_group(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "small") return ScenarioGroup::Small;
    if (name == "large") return ScenarioGroup::Large;
    return std::nullopt;
}

std::string to_string(ScenarioGroup group) {
    return group == ScenarioGroup::Small ? "small" : "large";
}

ScenarioRng::ScenarioRng(std::uint64_t seed, std::uint64_t purpose)
    : engine_(mix(seed ^ mix(purpose))) {}

std::uint64_t ScenarioRng::next_u64() { return engine_(); }

std::uint64_t ScenarioRng::uniform_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int over empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do { x = next_u64(); } while (x >= limit);
    return x % n;
}

std::vector<Demand> generate_demands(const GenSpec& spec, const Topology& topo) {
    if (topo.num_nodes() < 2) throw std::invalid_argument("topology needs at least two nodes");
    const bool small = spec.group == ScenarioGroup::Small;
    const double target_gbps = small ? 1000.0 : 40000.0;
    const double lo = 50.0, hi = small ? 400.0 : 500.0;

    ScenarioRng rng(spec.seed, kDemandStream);
    std::vector<Demand> demands;
    double total = 0.0;
    while (total < target_gbps) {
        Demand d;
        d.id = static_cast<int>(demands.size());
        d.src = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(topo.num_nodes())));
        do {
            d.dst = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(topo.num_nodes())));
        } while (d.dst == d.src);
        d.bitrate_gbps = rng.uniform(lo, hi);
        if (total + d.bitrate_gbps >= target_gbps) {
            d.bitrate_gbps = target_gbps - total;  // truncate to hit the target exactly
        }
        total += d.bitrate_gbps;
        demands.push_back(d);
    }
    return demands;
}

std::vector<AttackScenario> generate_attacks(const GenSpec& spec, const Topology& topo) {
    if (spec.x_km < 10.0) throw std::invalid_argument("jamming upper bound must be >= 10 km");
    ScenarioRng rng(spec.seed, kAttackStream);
    std::vector<AttackScenario> attacks;
    if (spec.group == ScenarioGroup::Small) {
        for (int v = 0; v < topo.num_nodes(); ++v)
            attacks.push_back({v, v, 0.0, rng.uniform(10.0, spec.x_km)});
    } else {
        const int count = 3 * topo.num_nodes();
        for (int i = 0; i < count; ++i) {
            const int target =
                static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(topo.num_nodes())));
            attacks.push_back({i, target, 0.0, rng.uniform(10.0, spec.x_km)});
        }
    }
    return attacks;
}

Scenario generate_scenario(const GenSpec& spec, const Topology& topo, std::string topology_name) {
    Scenario s;
    s.demands = generate_demands(spec, topo);
    s.attacks = generate_attacks(spec, topo);
    s.seed = spec.seed;
    s.group = spec.group;
    s.x_km = spec.x_km;
    s.topology_name = std::move(topology_name);
    return s;
}

}  // namespace blrsa
