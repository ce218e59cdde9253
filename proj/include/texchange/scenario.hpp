#ifndef TEXCHANGE_SCENARIO_HPP
#define TEXCHANGE_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "texchange/matching.hpp"
#include "texchange/model.hpp"
#include "texchange/simnet.hpp"

// Scenario files: JSON with explicit "nodes", "links" and "settings" keys.
// Omitted slot counts default to an equal share of the horizon (83 slots per
// node for the default 3-node, 3-second, 0.012 s/slot setup).

namespace te {

struct Scenario {
    std::vector<NodeConfig> nodes;
    ChannelModel channel;
    double horizon_seconds = 3.0;
    double slot_seconds = 0.012;
    Objective objective = Objective::kSum;
    ForwardPolicy policy = ForwardPolicy::kBudgeted;
    double epsilon = 0.5;
    int trials = 10000;
    std::uint64_t seed = 1;

    int total_slots() const;
};

/// Parses and validates a scenario file. Every validation failure throws
/// std::invalid_argument with a diagnostic naming the offending field.
Scenario load_scenario(const std::filesystem::path& path);

/// Same, from an in-memory JSON document.
Scenario parse_scenario(const std::string& json_text);

/// Re-checks all scenario invariants (probability ranges, direct links,
/// slot/horizon consistency). Called by the loaders.
void validate_scenario(const Scenario& scenario);

/// Serializes a scenario so that parse_scenario(serialize_scenario(s))
/// reproduces s exactly.
std::string serialize_scenario(const Scenario& scenario);

std::string to_string(Objective objective);
std::string to_string(ForwardPolicy policy);
Objective objective_from_string(const std::string& text);
ForwardPolicy policy_from_string(const std::string& text);

}  // namespace te

#endif  // TEXCHANGE_SCENARIO_HPP
