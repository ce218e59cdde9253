#include "texchange/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "texchange/pair_opt.hpp"
#include "texchange/protocol.hpp"

namespace te {

namespace {

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

PairProblem problem_for(const PairAllocation& alloc,
                        std::span<const NodeConfig> nodes,
                        const ChannelModel& channel) {
    PairProblem p;
    for (const NodeConfig& n : nodes) {
        if (n.id == alloc.sender) p.k_s_in = n.k_in;
        if (n.id == alloc.forwarder) p.k_f_in = n.k_in;
    }
    p.pe_s0 = channel.at(alloc.sender, kBaseStation);
    p.pe_f0 = channel.at(alloc.forwarder, kBaseStation);
    p.pe_sf = channel.at(alloc.sender, alloc.forwarder);
    return p;
}

}  // namespace

std::string to_string(NodeRole role) {
    switch (role) {
        case NodeRole::kDirect: return "direct";
        case NodeRole::kSender: return "sender";
        case NodeRole::kForwarder: return "forwarder";
    }
    return "?";
}

ExperimentReport run_experiment(const Scenario& scenario) {
    validate_scenario(scenario);

    ExperimentReport report;
    report.objective = scenario.objective;
    report.policy = scenario.policy;
    report.trials = scenario.trials;
    report.seed = scenario.seed;
    report.epsilon = scenario.epsilon;

    ControlBus bus;
    const ConvergenceReport conv =
        run_negotiation(scenario.nodes, scenario.channel, scenario.objective,
                        scenario.epsilon, bus);
    report.message_count = conv.message_count;
    report.rounds = conv.rounds;
    report.trace = bus.trace();

    NetworkPlan plan;
    for (const GainEdge& edge : conv.pairing.matched) {
        plan.pairs.push_back(edge.allocation);
    }
    plan.direct = conv.pairing.unmatched;
    plan.objective_value =
        network_objective(plan, scenario.nodes, scenario.channel);
    report.plan = plan;

    for (const PairAllocation& pair : plan.pairs) {
        const BoundResult bounds =
            rounding_lower_bound(problem_for(pair, scenario.nodes,
                                             scenario.channel));
        report.bound_gaps.push_back(
            {pair.sender, pair.forwarder, bounds.upper, bounds.lower});
    }

    const SimReport sim =
        monte_carlo(plan, scenario.nodes, scenario.channel, scenario.policy,
                    scenario.trials, scenario.seed);

    std::vector<NodeConfig> ordered(scenario.nodes.begin(),
                                    scenario.nodes.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const NodeConfig& x, const NodeConfig& y) {
                  return x.id < y.id;
              });
    for (const NodeConfig& n : ordered) {
        NodeReport nr;
        nr.id = n.id;
        nr.k_in = n.k_in;
        nr.k_te = n.k_in;
        nr.goodput_initial =
            direct_goodput(n.k_in, scenario.channel.at(n.id, kBaseStation));
        nr.goodput_planned = nr.goodput_initial;
        for (const PairAllocation& pair : plan.pairs) {
            if (pair.sender == n.id) {
                nr.role = NodeRole::kSender;
                nr.partner = pair.forwarder;
                nr.k_te = pair.k_s_te;
                nr.goodput_planned = pair.r_s_te;
            } else if (pair.forwarder == n.id) {
                nr.role = NodeRole::kForwarder;
                nr.partner = pair.sender;
                nr.k_te = pair.k_f_te;
                nr.goodput_planned = pair.r_f_te;
            }
        }
        nr.goodput_empirical_mean = sim.node(n.id).mean;
        nr.goodput_empirical_stderr = sim.node(n.id).stderr_mean;
        nr.gain_pct = nr.goodput_initial > 0.0
                          ? 100.0 * (nr.goodput_planned - nr.goodput_initial) /
                                nr.goodput_initial
                          : 0.0;
        report.objective_initial += nr.goodput_initial;
        report.objective_empirical += nr.goodput_empirical_mean;
        report.nodes.push_back(nr);
    }
    report.objective_planned = plan.objective_value;
    return report;
}

std::string report_to_csv(const ExperimentReport& report) {
    std::string csv =
        "node_id,k_in,k_te,role,partner,goodput_initial,goodput_planned,"
        "goodput_empirical_mean,goodput_empirical_stderr,gain_pct\n";
    for (const NodeReport& n : report.nodes) {
        std::ostringstream row;
        row << n.id << ',' << n.k_in << ',' << n.k_te << ','
            << to_string(n.role) << ',';
        if (n.partner != kBroadcast) row << n.partner;
        row << ',' << fmt(n.goodput_initial) << ',' << fmt(n.goodput_planned)
            << ',' << fmt(n.goodput_empirical_mean) << ','
            << fmt(n.goodput_empirical_stderr) << ',' << fmt(n.gain_pct)
            << '\n';
        csv += row.str();
    }
    return csv;
}

std::string report_to_json(const ExperimentReport& report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["settings"] = {{"objective", to_string(report.objective)},
                       {"policy", to_string(report.policy)},
                       {"trials", report.trials},
                       {"seed", report.seed},
                       {"epsilon", report.epsilon}};
    doc["nodes"] = ordered_json::array();
    for (const NodeReport& n : report.nodes) {
        ordered_json jn = {{"node_id", n.id},
                           {"k_in", n.k_in},
                           {"k_te", n.k_te},
                           {"role", to_string(n.role)},
                           {"goodput_initial", n.goodput_initial},
                           {"goodput_planned", n.goodput_planned},
                           {"goodput_empirical_mean", n.goodput_empirical_mean},
                           {"goodput_empirical_stderr",
                            n.goodput_empirical_stderr},
                           {"gain_pct", n.gain_pct}};
        if (n.partner != kBroadcast) {
            jn["partner"] = n.partner;
        } else {
            jn["partner"] = nullptr;
        }
        doc["nodes"].push_back(jn);
    }
    doc["pairing"] = ordered_json::object();
    doc["pairing"]["pairs"] = ordered_json::array();
    for (const PairAllocation& p : report.plan.pairs) {
        doc["pairing"]["pairs"].push_back({{"sender", p.sender},
                                           {"forwarder", p.forwarder},
                                           {"k_s_te", p.k_s_te},
                                           {"k_f_te", p.k_f_te},
                                           {"r_c", p.r_c},
                                           {"r_s_te", p.r_s_te},
                                           {"r_f_te", p.r_f_te},
                                           {"gain", p.gain}});
    }
    doc["pairing"]["direct"] = report.plan.direct;
    doc["bounds"] = ordered_json::array();
    for (const PairBound& b : report.bound_gaps) {
        doc["bounds"].push_back({{"sender", b.sender},
                                 {"forwarder", b.forwarder},
                                 {"upper", b.upper},
                                 {"lower", b.lower},
                                 {"gap", b.gap()}});
    }
    doc["objective"] = {{"initial", report.objective_initial},
                        {"planned", report.objective_planned},
                        {"empirical", report.objective_empirical}};
    doc["protocol"] = {{"messages", report.message_count},
                       {"rounds", report.rounds}};
    doc["trace"] = report.trace;
    return doc.dump(2) + "\n";
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("report: cannot open '" + path.string() +
                                 "' for writing");
    }
    out << (format == ReportFormat::kCsv ? report_to_csv(report)
                                         : report_to_json(report));
    if (!out) {
        throw std::runtime_error("report: write to '" + path.string() +
                                 "' failed");
    }
}

}  // namespace te
