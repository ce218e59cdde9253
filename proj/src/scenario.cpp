#include "texchange/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace te {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& what) {
    throw std::invalid_argument("scenario: " + what);
}

int require_int(const ordered_json& j, const std::string& field) {
    if (!j.is_number_integer()) {
        invalid(field + " must be an integer");
    }
    return j.get<int>();
}

double require_number(const ordered_json& j, const std::string& field) {
    if (!j.is_number()) invalid(field + " must be a number");
    return j.get<double>();
}

}  // namespace

std::string to_string(Objective objective) {
    return objective == Objective::kSum ? "sum" : "proportional_fair";
}

std::string to_string(ForwardPolicy policy) {
    return policy == ForwardPolicy::kForwardAll ? "forward_all" : "budgeted";
}

Objective objective_from_string(const std::string& text) {
    if (text == "sum") return Objective::kSum;
    if (text == "proportional_fair") return Objective::kProportionalFair;
    invalid("objective '" + text + "' is not 'sum' or 'proportional_fair'");
}

ForwardPolicy policy_from_string(const std::string& text) {
    if (text == "forward_all") return ForwardPolicy::kForwardAll;
    if (text == "budgeted") return ForwardPolicy::kBudgeted;
    invalid("policy '" + text + "' is not 'forward_all' or 'budgeted'");
}

int Scenario::total_slots() const {
    int total = 0;
    for (const NodeConfig& n : nodes) total += n.k_in;
    return total;
}

void validate_scenario(const Scenario& scenario) {
    if (scenario.nodes.empty()) invalid("node list is empty");
    std::set<NodeId> ids;
    for (const NodeConfig& n : scenario.nodes) {
        if (n.id == kBaseStation) {
            invalid("node id 0 is reserved for the base station");
        }
        if (n.id < 0) invalid("node ids must be positive");
        if (!ids.insert(n.id).second) {
            std::ostringstream os;
            os << "duplicate node id " << n.id;
            invalid(os.str());
        }
        if (n.k_in < 0) {
            std::ostringstream os;
            os << "node " << n.id << ": k_in must be >= 0";
            invalid(os.str());
        }
    }
    scenario.channel.validate(scenario.nodes);
    for (const auto& [link, pe] : scenario.channel.links()) {
        if (!ids.count(link.first)) {
            std::ostringstream os;
            os << "link (" << link.first << ", " << link.second
               << "): unknown source node";
            invalid(os.str());
        }
        if (link.second != kBaseStation && !ids.count(link.second)) {
            std::ostringstream os;
            os << "link (" << link.first << ", " << link.second
               << "): unknown destination node";
            invalid(os.str());
        }
    }
    if (scenario.slot_seconds <= 0.0) invalid("slot_seconds must be > 0");
    if (scenario.horizon_seconds <= 0.0) invalid("horizon_seconds must be > 0");
    if (scenario.epsilon < 0.0) invalid("epsilon must be >= 0");
    if (scenario.trials < 1) invalid("trials must be >= 1");

    // Slot accounting: the per-node allotments fill the horizon to within one
    // slot of rounding per node.
    const double capacity = scenario.horizon_seconds / scenario.slot_seconds;
    const double total = scenario.total_slots();
    if (std::abs(total - capacity) >= static_cast<double>(scenario.nodes.size())) {
        std::ostringstream os;
        os << "slot budget " << total << " inconsistent with horizon capacity "
           << capacity << " (" << scenario.horizon_seconds << " s / "
           << scenario.slot_seconds << " s per slot)";
        invalid(os.str());
    }
}

Scenario parse_scenario(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        invalid(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) invalid("top level must be an object");
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
        invalid("'nodes' must be an array");
    }

    Scenario scenario;
    const ordered_json settings =
        doc.contains("settings") ? doc["settings"] : ordered_json::object();
    if (!settings.is_object()) invalid("'settings' must be an object");
    if (settings.contains("slot_seconds")) {
        scenario.slot_seconds =
            require_number(settings["slot_seconds"], "settings.slot_seconds");
    }
    const bool horizon_given = settings.contains("horizon_seconds");
    if (horizon_given) {
        scenario.horizon_seconds = require_number(settings["horizon_seconds"],
                                                  "settings.horizon_seconds");
    }
    if (settings.contains("objective")) {
        if (!settings["objective"].is_string()) {
            invalid("settings.objective must be a string");
        }
        scenario.objective =
            objective_from_string(settings["objective"].get<std::string>());
    }
    if (settings.contains("policy")) {
        if (!settings["policy"].is_string()) {
            invalid("settings.policy must be a string");
        }
        scenario.policy =
            policy_from_string(settings["policy"].get<std::string>());
    }
    if (settings.contains("epsilon")) {
        scenario.epsilon = require_number(settings["epsilon"], "settings.epsilon");
    }
    if (settings.contains("trials")) {
        scenario.trials = require_int(settings["trials"], "settings.trials");
    }
    if (settings.contains("seed")) {
        if (!settings["seed"].is_number_integer()) {
            invalid("settings.seed must be an integer");
        }
        scenario.seed = settings["seed"].get<std::uint64_t>();
    }

    // Nodes; omitted k_in defaults to an equal share of the horizon.
    bool any_k_missing = false;
    for (const auto& jn : doc["nodes"]) {
        if (!jn.is_object() || !jn.contains("id")) {
            invalid("every node needs an 'id'");
        }
        NodeConfig cfg;
        cfg.id = require_int(jn["id"], "node id");
        if (jn.contains("k_in")) {
            std::ostringstream field;
            field << "node " << cfg.id << ": k_in";
            cfg.k_in = require_int(jn["k_in"], field.str());
        } else {
            cfg.k_in = -1;
            any_k_missing = true;
        }
        scenario.nodes.push_back(cfg);
    }
    if (scenario.nodes.empty()) invalid("node list is empty");

    if (any_k_missing) {
        if (scenario.slot_seconds <= 0.0) invalid("slot_seconds must be > 0");
        const int share = static_cast<int>(std::floor(
            scenario.horizon_seconds /
                (scenario.slot_seconds * scenario.nodes.size()) +
            kFeasTol));
        for (NodeConfig& n : scenario.nodes) {
            if (n.k_in < 0) n.k_in = share;
        }
    }
    if (!horizon_given && !any_k_missing) {
        // Explicit allotments with no horizon: derive it so the slot
        // accounting is consistent by construction.
        scenario.horizon_seconds = scenario.total_slots() * scenario.slot_seconds;
    }

    if (doc.contains("links")) {
        if (!doc["links"].is_array()) invalid("'links' must be an array");
        for (const auto& jl : doc["links"]) {
            if (!jl.is_object() || !jl.contains("from") || !jl.contains("to") ||
                !jl.contains("pe")) {
                invalid("every link needs 'from', 'to' and 'pe'");
            }
            const int from = require_int(jl["from"], "link from");
            const int to = require_int(jl["to"], "link to");
            std::ostringstream field;
            field << "link (" << from << ", " << to << "): pe";
            const double pe = require_number(jl["pe"], field.str());
            scenario.channel.set(from, to, pe);
            if (jl.value("symmetric", false)) {
                scenario.channel.set(to, from, pe);
            }
        }
    }

    validate_scenario(scenario);
    return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("scenario: cannot open file '" +
                                    path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& scenario) {
    ordered_json doc;
    doc["nodes"] = ordered_json::array();
    for (const NodeConfig& n : scenario.nodes) {
        doc["nodes"].push_back({{"id", n.id}, {"k_in", n.k_in}});
    }
    doc["links"] = ordered_json::array();
    for (const auto& [link, pe] : scenario.channel.links()) {
        doc["links"].push_back(
            {{"from", link.first}, {"to", link.second}, {"pe", pe}});
    }
    doc["settings"] = {{"horizon_seconds", scenario.horizon_seconds},
                       {"slot_seconds", scenario.slot_seconds},
                       {"objective", to_string(scenario.objective)},
                       {"policy", to_string(scenario.policy)},
                       {"epsilon", scenario.epsilon},
                       {"trials", scenario.trials},
                       {"seed", scenario.seed}};
    return doc.dump(2) + "\n";
}

}  // namespace te
