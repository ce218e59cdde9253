#ifndef TEXCHANGE_SIMNET_HPP
#define TEXCHANGE_SIMNET_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "texchange/model.hpp"

// Packet-level TDMA data-plane simulator: coupled Bernoulli losses on the
// sender's broadcasts, lossless ACK overhearing at the forwarder, and a
// forwarding pass that relays the sender packets the base station missed.
// Monte Carlo aggregation validates the analytic goodput model.

namespace te {

enum class ForwardPolicy {
    kForwardAll,  // relay the entire queue of lost packets, then own data
    kBudgeted     // relay at the plan's expected rate r_c, then own data
};

struct LinkTally {
    long sent = 0;
    long lost = 0;
};

struct TrialOutcome {
    // Distinct own packets delivered to the BS, per node.
    std::map<NodeId, int> delivered;
    // Relayed sender packets delivered, per pair (keyed by sender id).
    std::map<NodeId, int> relayed_delivered;
    // Relay slots actually spent, per pair (keyed by sender id).
    std::map<NodeId, int> relay_slots;
    std::map<ChannelModel::LinkKey, LinkTally> link_tallies;
};

struct SimReport {
    struct PerNode {
        NodeId id = 0;
        double analytic = 0.0;
        double mean = 0.0;
        double variance = 0.0;  // sample variance of per-trial goodput
        double stderr_mean = 0.0;
        double delta() const { return mean - analytic; }
    };
    int trials = 0;
    ForwardPolicy policy = ForwardPolicy::kBudgeted;
    std::vector<PerNode> nodes;  // sorted by id

    const PerNode& node(NodeId id) const;
};

/// Simulates one horizon. Each sender packet takes a single uniform draw u:
/// the forwarder receives it iff u >= pe_sf and the BS iff u >= pe_s0, so a
/// BS success always implies forwarder possession (degradedness coupling).
/// The BS ACKs losslessly; the forwarder overhears the ACKs and relays the
/// packets the BS lacks, then fills its remaining slots with own data.
/// Duplicate deliveries of a sender packet count once.
TrialOutcome run_trial(const NetworkPlan& plan,
                       std::span<const NodeConfig> nodes,
                       const ChannelModel& channel, ForwardPolicy policy,
                       std::uint64_t seed);

/// Aggregates run_trial over trials with distinct derived seeds (never
/// reusing a seed within one report). Throws std::invalid_argument when
/// trials < 1.
SimReport monte_carlo(const NetworkPlan& plan,
                      std::span<const NodeConfig> nodes,
                      const ChannelModel& channel, ForwardPolicy policy,
                      int trials, std::uint64_t base_seed);

}  // namespace te

#endif  // TEXCHANGE_SIMNET_HPP
