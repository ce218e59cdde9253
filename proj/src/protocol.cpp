#include "texchange/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace te {

namespace {

const char* kind_name(MsgKind kind) {
    switch (kind) {
        case MsgKind::kAdvertise: return "ADVERTISE";
        case MsgKind::kAdd: return "ADD";
        case MsgKind::kDrop: return "DROP";
    }
    return "?";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string payload_digest(const ControlMessage& msg) {
    if (msg.kind != MsgKind::kAdvertise) return "-";
    char payload[64];
    std::snprintf(payload, sizeof(payload), "pe=%.17g;k=%d", msg.pe_to_bs,
                  msg.k_in);
    char digest[17];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(payload)));
    return digest;
}

// Recomputes a node's candidate (heaviest live edge, ties to the smaller
// neighbour id) and emits the resulting ADD, or the match sequence when the
// new candidate has already proposed to us. With no live edges left the node
// is exhausted.
void pick_candidate(NodeState& st, std::vector<ControlMessage>& out) {
    NodeId pick = kBroadcast;
    double pick_gain = 0.0;
    for (const auto& [j, nb] : st.neighbor_table) {
        if (!nb.live) continue;
        if (pick == kBroadcast || nb.gain > pick_gain) {
            pick = j;
            pick_gain = nb.gain;
        }
    }
    if (pick == kBroadcast) {
        st.status = NodeStatus::kExhausted;
        st.candidate = kBroadcast;
        return;
    }
    st.candidate = pick;

    const bool partner_proposed =
        std::find(st.pending_adds.begin(), st.pending_adds.end(), pick) !=
        st.pending_adds.end();
    out.push_back({MsgKind::kAdd, st.id, pick, 0.0, 0});
    if (partner_proposed) {
        // The proposal is binding: the partner's candidate is still us, so
        // both sides lock the pair.
        st.status = NodeStatus::kMatched;
        st.partner = pick;
        for (auto& [j, nb] : st.neighbor_table) {
            if (j == pick || !nb.live) continue;
            nb.live = false;
            out.push_back({MsgKind::kDrop, st.id, j, 0.0, 0});
        }
    }
}

void match_with(NodeState& st, NodeId partner,
                std::vector<ControlMessage>& out) {
    st.status = NodeStatus::kMatched;
    st.partner = partner;
    for (auto& [j, nb] : st.neighbor_table) {
        if (j == partner || !nb.live) continue;
        nb.live = false;
        out.push_back({MsgKind::kDrop, st.id, j, 0.0, 0});
    }
}

}  // namespace

void ControlBus::post(const ControlMessage& msg) {
    queues_[msg.from].push_back(msg);
}

bool ControlBus::empty() const {
    for (const auto& [id, q] : queues_) {
        auto head = heads_.find(id);
        const std::size_t consumed = head == heads_.end() ? 0 : head->second;
        if (consumed < q.size()) return false;
    }
    return true;
}

std::vector<ControlMessage> ControlBus::sweep() {
    std::vector<ControlMessage> delivered;
    for (auto& [id, q] : queues_) {
        std::size_t& head = heads_[id];
        if (head >= q.size()) continue;
        const ControlMessage msg = q[head];
        ++head;
        ++delivered_;
        ++seq_;
        char line[96];
        if (msg.to == kBroadcast) {
            std::snprintf(line, sizeof(line), "%04d %s %d -> *", seq_,
                          kind_name(msg.kind), msg.from);
        } else {
            std::snprintf(line, sizeof(line), "%04d %s %d -> %d", seq_,
                          kind_name(msg.kind), msg.from, msg.to);
        }
        trace_ += line;
        trace_ += ' ';
        trace_ += payload_digest(msg);
        trace_ += '\n';
        delivered.push_back(msg);
    }
    return delivered;
}

std::vector<ControlMessage> handle_message(NodeState& st,
                                           const ControlMessage& msg) {
    std::vector<ControlMessage> out;
    auto it = st.neighbor_table.find(msg.from);
    if (it == st.neighbor_table.end()) {
        ++st.anomalies;
        return out;
    }
    NeighborInfo& nb = it->second;

    switch (msg.kind) {
        case MsgKind::kAdvertise: {
            if (nb.advertised) {
                ++st.anomalies;
                break;
            }
            nb.advertised = true;
            nb.pe_j0 = msg.pe_to_bs;
            nb.k_j_in = msg.k_in;
            --st.adverts_pending;

            // Solve the pair problem for this neighbour; the edge weight is
            // computed identically at both endpoints.
            ++st.pair_opt_calls;
            auto edge = evaluate_pair_edge(
                st.id, st.k_in, st.pe_to_bs, msg.from, nb.k_j_in, nb.pe_j0,
                nb.pe_ij, nb.pe_ji, st.objective, st.epsilon);
            if (edge) {
                nb.gain = edge->weight;
                nb.allocation = edge->allocation;
                // Settled nodes never revive edges from late adverts.
                nb.live = st.status == NodeStatus::kUnmatched;
            }
            if (st.adverts_pending == 0 && st.status == NodeStatus::kUnmatched) {
                pick_candidate(st, out);
            }
            break;
        }
        case MsgKind::kAdd: {
            if (st.status == NodeStatus::kMatched) break;  // DROP already sent
            if (!nb.advertised || st.status == NodeStatus::kExhausted) {
                ++st.anomalies;
                break;
            }
            if (st.adverts_pending > 0 || msg.from != st.candidate) {
                if (std::find(st.pending_adds.begin(), st.pending_adds.end(),
                              msg.from) == st.pending_adds.end()) {
                    st.pending_adds.push_back(msg.from);
                }
                break;
            }
            match_with(st, msg.from, out);
            break;
        }
        case MsgKind::kDrop: {
            nb.live = false;
            std::erase(st.pending_adds, msg.from);
            if (st.status != NodeStatus::kUnmatched) break;
            if (msg.from == st.candidate) pick_candidate(st, out);
            break;
        }
    }
    return out;
}

NodeState make_node_state(const NodeConfig& self,
                          std::span<const NodeConfig> all_nodes,
                          const ChannelModel& channel, Objective objective,
                          double epsilon) {
    NodeState st;
    st.id = self.id;
    st.k_in = self.k_in;
    st.pe_to_bs = channel.at(self.id, kBaseStation);
    st.objective = objective;
    st.epsilon = epsilon;
    for (const NodeConfig& other : all_nodes) {
        if (other.id == self.id) continue;
        const bool linked =
            channel.has(self.id, other.id) || channel.has(other.id, self.id);
        if (!linked) continue;
        NeighborInfo nb;
        if (auto pe = channel.get(self.id, other.id)) nb.pe_ij = *pe;
        if (auto pe = channel.get(other.id, self.id)) nb.pe_ji = *pe;
        st.neighbor_table[other.id] = nb;
    }
    st.adverts_pending = st.neighbor_count();
    return st;
}

ConvergenceReport run_negotiation(std::span<const NodeConfig> nodes,
                                  const ChannelModel& channel,
                                  Objective objective, double epsilon,
                                  ControlBus& bus) {
    channel.validate(nodes);
    std::map<NodeId, NodeState> states;
    for (const NodeConfig& n : nodes) {
        states[n.id] = make_node_state(n, nodes, channel, objective, epsilon);
    }

    const int n_nodes = static_cast<int>(nodes.size());
    const int message_budget = n_nodes * n_nodes + n_nodes;

    // Step 3: every node advertises its direct error rate and allotment.
    for (auto& [id, st] : states) {
        bus.post({MsgKind::kAdvertise, id, kBroadcast, st.pe_to_bs, st.k_in});
        if (st.adverts_pending == 0) {
            // No neighbours to hear from; the node settles immediately.
            std::vector<ControlMessage> out;
            pick_candidate(st, out);
            for (const ControlMessage& m : out) bus.post(m);
        }
    }

    int rounds = 0;
    while (!bus.empty()) {
        ++rounds;
        for (const ControlMessage& msg : bus.sweep()) {
            if (bus.delivered_count() > message_budget) {
                std::ostringstream os;
                os << "protocol fault: no convergence within " << message_budget
                   << " messages";
                throw std::runtime_error(os.str());
            }
            if (msg.to == kBroadcast) {
                for (auto& [id, st] : states) {
                    if (id == msg.from || !st.neighbor_table.count(msg.from)) {
                        continue;
                    }
                    for (const ControlMessage& m : handle_message(st, msg)) {
                        bus.post(m);
                    }
                }
            } else {
                auto it = states.find(msg.to);
                if (it == states.end()) continue;
                for (const ControlMessage& m : handle_message(it->second, msg)) {
                    bus.post(m);
                }
            }
        }
    }

    ConvergenceReport report;
    report.message_count = bus.delivered_count();
    report.rounds = rounds;
    if (report.message_count > n_nodes * n_nodes) {
        std::ostringstream os;
        os << "protocol fault: " << report.message_count
           << " messages exceed the N^2 bound of " << n_nodes * n_nodes;
        throw std::runtime_error(os.str());
    }

    for (const auto& [id, st] : states) {
        report.pair_opt_calls += st.pair_opt_calls;
        report.anomalies += st.anomalies;
        if (st.status == NodeStatus::kUnmatched) {
            throw std::runtime_error(
                "protocol fault: node left in a non-terminal status");
        }
        if (st.status == NodeStatus::kExhausted) {
            report.pairing.unmatched.push_back(id);
            continue;
        }
        if (st.partner == kBroadcast || id >= st.partner) continue;
        const auto& partner = states.at(st.partner);
        if (partner.status != NodeStatus::kMatched || partner.partner != id) {
            throw std::runtime_error("protocol fault: asymmetric match");
        }
        GainEdge edge;
        edge.a = id;
        edge.b = st.partner;
        const NeighborInfo& nb = st.neighbor_table.at(st.partner);
        edge.weight = nb.gain;
        edge.sender = nb.allocation.sender;
        edge.allocation = nb.allocation;
        report.pairing.matched.push_back(edge);
        report.pairing.total_weight += edge.weight;
    }
    return report;
}

}  // namespace te
