#ifndef TEXCHANGE_EXPERIMENT_HPP
#define TEXCHANGE_EXPERIMENT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "texchange/protocol.hpp"
#include "texchange/scenario.hpp"

// Experiment orchestration: negotiate the pairing, solve the per-pair slot
// exchange, simulate the data plane, and report planned vs. empirical
// goodput against the direct-transmission baseline.

namespace te {

enum class NodeRole { kDirect, kSender, kForwarder };

struct NodeReport {
    NodeId id = 0;
    int k_in = 0;
    int k_te = 0;
    NodeRole role = NodeRole::kDirect;
    NodeId partner = kBroadcast;  // kBroadcast when direct
    double goodput_initial = 0.0;
    double goodput_planned = 0.0;
    double goodput_empirical_mean = 0.0;
    double goodput_empirical_stderr = 0.0;
    double gain_pct = 0.0;  // 100 * (planned - initial) / initial
};

struct PairBound {
    NodeId sender = 0;
    NodeId forwarder = 0;
    double upper = 0.0;
    double lower = 0.0;
    double gap() const { return upper - lower; }
};

struct ExperimentReport {
    std::vector<NodeReport> nodes;  // sorted by id
    NetworkPlan plan;
    std::vector<PairBound> bound_gaps;  // one per matched pair
    int message_count = 0;
    int rounds = 0;
    double objective_initial = 0.0;
    double objective_planned = 0.0;
    double objective_empirical = 0.0;
    std::string trace;  // control-plane trace log
    Objective objective = Objective::kSum;
    ForwardPolicy policy = ForwardPolicy::kBudgeted;
    int trials = 0;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
};

/// Full pipeline: initial goodputs, distributed negotiation, per-pair
/// allocations under the scenario's objective, Monte Carlo validation.
ExperimentReport run_experiment(const Scenario& scenario);

enum class ReportFormat { kCsv, kJson };

/// CSV columns: node_id,k_in,k_te,role,partner,goodput_initial,
/// goodput_planned,goodput_empirical_mean,goodput_empirical_stderr,gain_pct.
std::string report_to_csv(const ExperimentReport& report);

/// JSON mirror of the CSV fields plus pairing, bounds and trace metadata.
std::string report_to_json(const ExperimentReport& report);

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path);

std::string to_string(NodeRole role);

}  // namespace te

#endif  // TEXCHANGE_EXPERIMENT_HPP
