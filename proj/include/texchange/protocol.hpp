#ifndef TEXCHANGE_PROTOCOL_HPP
#define TEXCHANGE_PROTOCOL_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "texchange/matching.hpp"
#include "texchange/model.hpp"

// Distributed time-exchange negotiation over a reliable control plane:
// every node advertises its direct-path error rate and slot allotment,
// computes the cooperation gain for each neighbour, and locks pairs through
// add/drop requests until all nodes are matched or exhausted. The converged
// pairing equals the centralized local-greedy matching.

namespace te {

inline constexpr NodeId kBroadcast = -1;

enum class MsgKind { kAdvertise, kAdd, kDrop };

struct ControlMessage {
    MsgKind kind = MsgKind::kAdvertise;
    NodeId from = 0;
    NodeId to = kBroadcast;  // ADD/DROP are unicast; ADVERTISE is broadcast
    double pe_to_bs = 0.0;   // ADVERTISE payload
    int k_in = 0;            // ADVERTISE payload
};

enum class NodeStatus { kUnmatched, kMatched, kExhausted };

struct NeighborInfo {
    double pe_ij = 1.0;   // this node -> neighbour
    double pe_ji = 1.0;   // neighbour -> this node
    double pe_j0 = 1.0;   // neighbour -> base station (from its ADVERTISE)
    int k_j_in = 0;
    bool advertised = false;
    bool live = false;    // positive-gain edge not yet dropped
    double gain = 0.0;
    PairAllocation allocation;  // gain-achieving allocation, orientation inside
};

struct NodeState {
    NodeId id = 0;
    int k_in = 0;
    double pe_to_bs = 0.0;
    Objective objective = Objective::kSum;
    double epsilon = 0.0;
    std::map<NodeId, NeighborInfo> neighbor_table;
    int adverts_pending = 0;   // neighbours not heard from yet
    NodeId candidate = kBroadcast;  // heaviest live edge, kBroadcast when none
    NodeStatus status = NodeStatus::kUnmatched;
    NodeId partner = kBroadcast;
    std::vector<NodeId> pending_adds;  // proposals received off-candidate
    int pair_opt_calls = 0;
    int anomalies = 0;

    int neighbor_count() const { return static_cast<int>(neighbor_table.size()); }
};

struct ConvergenceReport {
    int message_count = 0;
    int rounds = 0;
    MatchingResult pairing;
    int pair_opt_calls = 0;
    int anomalies = 0;
};

/// Reliable control plane: one FIFO queue per sender, delivered with a
/// deterministic round-robin interleaving across senders. Records one trace
/// line per delivered message: "<seq> <KIND> <from> -> <to|*> <digest>".
class ControlBus {
public:
    void post(const ControlMessage& msg);
    bool empty() const;
    // Delivers at most one message per sender queue, in ascending sender id.
    // Returns the delivered messages in delivery order.
    std::vector<ControlMessage> sweep();
    int delivered_count() const { return delivered_; }
    const std::string& trace() const { return trace_; }

private:
    std::map<NodeId, std::vector<ControlMessage>> queues_;
    std::map<NodeId, std::size_t> heads_;
    int delivered_ = 0;
    int seq_ = 0;
    std::string trace_;
};

/// Applies one delivered message to a node's state machine and returns the
/// messages the node emits in response. Deterministic for a given
/// (state, message).
std::vector<ControlMessage> handle_message(NodeState& state,
                                           const ControlMessage& msg);

/// Initializes a node's state from the scenario: neighbour ids are the nodes
/// reachable over an inter-node link; link error rates come from the channel
/// model (standing in for the paper's on-air measurement step).
NodeState make_node_state(const NodeConfig& self,
                          std::span<const NodeConfig> all_nodes,
                          const ChannelModel& channel, Objective objective,
                          double epsilon);

/// Runs the full negotiation until the control plane drains. Every node ends
/// matched or exhausted; the pairing equals greedy_mwm on the same gain
/// graph; message count stays within N^2. Throws std::runtime_error on a
/// protocol fault (no convergence within N^2 + N messages).
ConvergenceReport run_negotiation(std::span<const NodeConfig> nodes,
                                  const ChannelModel& channel,
                                  Objective objective, double epsilon,
                                  ControlBus& bus);

}  // namespace te

#endif  // TEXCHANGE_PROTOCOL_HPP
