#ifndef TEXCHANGE_MODEL_HPP
#define TEXCHANGE_MODEL_HPP

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

// Domain quantities and the analytic goodput model for a TDMA uplink with
// time-exchange (TE) cooperation: a sender delegates transmission slots to a
// forwarder as the incentive for decode-and-forward relaying of its packets.

namespace te {

using NodeId = int;

// The base station is node 0 by convention.
inline constexpr NodeId kBaseStation = 0;

// Tolerance for all real-valued feasibility checks; absorbs round-off, never
// model slack.
inline constexpr double kFeasTol = 1e-9;

struct NodeConfig {
    NodeId id = 0;
    int k_in = 0;  // initial slot allotment per horizon
};

/// Packet error probabilities per ordered link (i, j) with i a user node and
/// j a user node or the base station.
class ChannelModel {
public:
    using LinkKey = std::pair<NodeId, NodeId>;

    void set(NodeId from, NodeId to, double pe);
    bool has(NodeId from, NodeId to) const;
    double at(NodeId from, NodeId to) const;  // throws if the link is absent
    std::optional<double> get(NodeId from, NodeId to) const;

    const std::map<LinkKey, double>& links() const { return per_; }

    // Every node must have a direct link to the base station.
    void validate(std::span<const NodeConfig> nodes) const;

private:
    std::map<LinkKey, double> per_;
};

/// One sender-forwarder pair's slot split, relay budget and analytic goodputs.
struct PairAllocation {
    NodeId sender = 0;
    NodeId forwarder = 0;
    int k_s_te = 0;
    int k_f_te = 0;
    double r_c = 0.0;     // expected relayed packets delivered by the forwarder
    double r_sf = 0.0;    // expected sender packets received at the forwarder
    double r_s0 = 0.0;    // expected sender packets received directly at the BS
    double r_s_te = 0.0;  // sender goodput under TE
    double r_f_te = 0.0;  // forwarder's own goodput under TE
    double gain = 0.0;    // (r_s_te + r_f_te) - (initial sum)
};

/// Matching outcome: cooperative pairs plus the set transmitting direct.
struct NetworkPlan {
    std::vector<PairAllocation> pairs;
    std::vector<NodeId> direct;
    double objective_value = 0.0;
};

/// Initial (direct-path) goodput: k * (1 - pe) expected error-free packets.
double direct_goodput(int slots, double pe);

struct TePairGoodputs {
    double r_s_te = 0.0;
    double r_f_te = 0.0;
    double r_sf = 0.0;
    double r_s0 = 0.0;
};

/// Goodputs of a cooperating pair for a fixed slot split and relay budget.
/// The sender achieves the cut bound min(r_sf, r_s0 + r_c) with equality.
/// Requires the degradedness assumption pe_sf <= pe_s0.
TePairGoodputs te_pair_goodputs(int k_s_te, int k_f_te, double r_c,
                                double pe_s0, double pe_f0, double pe_sf);

/// Network sum goodput: direct nodes at their initial allocation plus the
/// TE goodputs of every cooperative pair. Rejects malformed plans (a node in
/// two pairs, in a pair and the direct set, or missing from both).
double network_objective(const NetworkPlan& plan,
                         std::span<const NodeConfig> nodes,
                         const ChannelModel& channel);

/// Re-derives a pair allocation's goodputs through the model equations and
/// checks every pair-level constraint. Throws std::invalid_argument naming
/// the violated constraint. Used as the independent cross-check on solver
/// output.
void check_pair_allocation(const PairAllocation& alloc, int k_s_in, int k_f_in,
                           double pe_s0, double pe_f0, double pe_sf,
                           double tol = kFeasTol);

}  // namespace te

#endif  // TEXCHANGE_MODEL_HPP
