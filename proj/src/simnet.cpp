#include "texchange/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace te {

namespace {

// SplitMix64: portable, seedable, and cheap; one instance per purpose keeps
// the draw streams of the two forwarding policies aligned packet-for-packet.
struct Stream {
    std::uint64_t state;

    explicit Stream(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

enum StreamTag : std::uint64_t {
    kTagTrial = 1,
    kTagDirect = 2,
    kTagSender = 3,
    kTagThin = 4,
    kTagRelay = 5,
    kTagOwn = 6,
};

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b) {
    Stream s(base ^ (a * 0xA24BAED4963EE407ull) ^ (b * 0x9FB21C651E98DF25ull));
    return s.next();
}

const NodeConfig& find_node(std::span<const NodeConfig> nodes, NodeId id) {
    for (const NodeConfig& n : nodes) {
        if (n.id == id) return n;
    }
    std::ostringstream os;
    os << "simulation: node " << id << " is not in the node set";
    throw std::invalid_argument(os.str());
}

// Probability that a queued packet gets a relay slot under the budgeted
// policy. The budget r_c is an expected delivered count; admitting each
// queued packet with probability (r_c / (1-pe_f0)) / E[queue] spends
// r_c / (1-pe_f0) slots on relaying in expectation, which delivers r_c.
double relay_admission_probability(const PairAllocation& pair, double pe_s0,
                                   double pe_f0, double pe_sf) {
    const double expected_queue = pair.k_s_te * (pe_s0 - pe_sf);
    if (expected_queue <= kFeasTol) return 0.0;
    const double slots_needed =
        pe_f0 < 1.0 ? pair.r_c / (1.0 - pe_f0) : 0.0;
    return std::min(1.0, slots_needed / expected_queue);
}

}  // namespace

const SimReport::PerNode& SimReport::node(NodeId id) const {
    for (const PerNode& n : nodes) {
        if (n.id == id) return n;
    }
    throw std::invalid_argument("sim report: unknown node id");
}

TrialOutcome run_trial(const NetworkPlan& plan,
                       std::span<const NodeConfig> nodes,
                       const ChannelModel& channel, ForwardPolicy policy,
                       std::uint64_t seed) {
    TrialOutcome out;

    for (NodeId d : plan.direct) {
        const NodeConfig& cfg = find_node(nodes, d);
        const double pe = channel.at(d, kBaseStation);
        Stream draws(derive_seed(seed, static_cast<std::uint64_t>(d),
                                 kTagDirect));
        int delivered = 0;
        for (int i = 0; i < cfg.k_in; ++i) {
            if (draws.uniform() >= pe) ++delivered;
        }
        out.delivered[d] = delivered;
        auto& tally = out.link_tallies[{d, kBaseStation}];
        tally.sent += cfg.k_in;
        tally.lost += cfg.k_in - delivered;
    }

    for (const PairAllocation& pair : plan.pairs) {
        const NodeId s = pair.sender;
        const NodeId f = pair.forwarder;
        const double pe_s0 = channel.at(s, kBaseStation);
        const double pe_f0 = channel.at(f, kBaseStation);
        const double pe_sf = channel.at(s, f);
        if (pe_sf > pe_s0) {
            std::ostringstream os;
            os << "simulation: pair (" << s << ", " << f
               << ") violates degradedness (pe_sf > pe_s0)";
            throw std::invalid_argument(os.str());
        }

        const std::uint64_t sid = static_cast<std::uint64_t>(s);
        Stream sender_draws(derive_seed(seed, sid, kTagSender));
        Stream thin_draws(derive_seed(seed, sid, kTagThin));
        Stream relay_draws(derive_seed(seed, sid, kTagRelay));
        Stream own_draws(derive_seed(seed, sid, kTagOwn));

        // Sender phase: one coupled draw per packet. The forwarder holds
        // every packet the BS received, plus those lost only on the long hop.
        int direct_delivered = 0;
        int held_by_forwarder = 0;
        int queued = 0;  // held by the forwarder, missing at the BS
        for (int i = 0; i < pair.k_s_te; ++i) {
            const double u = sender_draws.uniform();
            const bool at_forwarder = u >= pe_sf;
            const bool at_bs = u >= pe_s0;
            if (at_bs && !at_forwarder) {
                throw std::logic_error(
                    "coupling violated: BS delivery without forwarder copy");
            }
            if (at_forwarder) ++held_by_forwarder;
            if (at_bs) ++direct_delivered;
            if (at_forwarder && !at_bs) ++queued;
        }
        {
            auto& to_f = out.link_tallies[{s, f}];
            to_f.sent += pair.k_s_te;
            to_f.lost += pair.k_s_te - held_by_forwarder;
            auto& to_bs = out.link_tallies[{s, kBaseStation}];
            to_bs.sent += pair.k_s_te;
            to_bs.lost += pair.k_s_te - direct_delivered;
        }

        // Forwarder phase: relay the queue (all of it, or a thinned share
        // matching the plan's expected relay budget), then own data in the
        // remaining slots. Relay losses draw per queued packet so both
        // policies see identical randomness under a shared seed.
        const double admit =
            policy == ForwardPolicy::kBudgeted
                ? relay_admission_probability(pair, pe_s0, pe_f0, pe_sf)
                : 1.0;
        int relay_slots = 0;
        int relayed_delivered = 0;
        for (int q = 0; q < queued; ++q) {
            const bool selected = policy == ForwardPolicy::kForwardAll ||
                                  thin_draws.uniform() < admit;
            const double v = relay_draws.uniform();
            if (!selected || relay_slots >= pair.k_f_te) continue;
            ++relay_slots;
            if (v >= pe_f0) ++relayed_delivered;
        }
        const int own_slots = pair.k_f_te - relay_slots;
        int own_delivered = 0;
        for (int j = 0; j < own_slots; ++j) {
            if (own_draws.uniform() >= pe_f0) ++own_delivered;
        }
        {
            auto& to_bs = out.link_tallies[{f, kBaseStation}];
            to_bs.sent += relay_slots + own_slots;
            to_bs.lost += (relay_slots - relayed_delivered) +
                          (own_slots - own_delivered);
        }

        // Distinct sender packets at the BS: the queue never overlaps the
        // direct deliveries, so the two counts add without double counting.
        out.delivered[s] = direct_delivered + relayed_delivered;
        out.delivered[f] = own_delivered;
        out.relayed_delivered[s] = relayed_delivered;
        out.relay_slots[s] = relay_slots;
        if (out.delivered[s] > pair.k_s_te || relay_slots + own_slots != pair.k_f_te) {
            throw std::logic_error("conservation violated in forwarder phase");
        }
    }
    return out;
}

SimReport monte_carlo(const NetworkPlan& plan,
                      std::span<const NodeConfig> nodes,
                      const ChannelModel& channel, ForwardPolicy policy,
                      int trials, std::uint64_t base_seed) {
    if (trials < 1) {
        throw std::invalid_argument("monte_carlo: trials must be >= 1");
    }

    // Analytic expectations per node from the plan.
    std::map<NodeId, double> analytic;
    for (NodeId d : plan.direct) {
        analytic[d] = direct_goodput(find_node(nodes, d).k_in,
                                     channel.at(d, kBaseStation));
    }
    for (const PairAllocation& p : plan.pairs) {
        analytic[p.sender] = p.r_s_te;
        analytic[p.forwarder] = p.r_f_te;
    }

    std::map<NodeId, double> mean;
    std::map<NodeId, double> m2;
    for (const auto& [id, a] : analytic) {
        mean[id] = 0.0;
        m2[id] = 0.0;
    }

    for (int t = 0; t < trials; ++t) {
        // Distinct derived seed per trial; never reuse within one report.
        const std::uint64_t trial_seed =
            derive_seed(base_seed, static_cast<std::uint64_t>(t), kTagTrial);
        const TrialOutcome outcome =
            run_trial(plan, nodes, channel, policy, trial_seed);
        for (auto& [id, avg] : mean) {
            const double x = outcome.delivered.at(id);
            const double delta = x - avg;
            avg += delta / (t + 1);
            m2[id] += delta * (x - avg);
        }
    }

    SimReport report;
    report.trials = trials;
    report.policy = policy;
    for (const auto& [id, avg] : mean) {
        SimReport::PerNode node;
        node.id = id;
        node.analytic = analytic.at(id);
        node.mean = avg;
        node.variance = trials > 1 ? m2.at(id) / (trials - 1) : 0.0;
        node.stderr_mean = std::sqrt(node.variance / trials);
        report.nodes.push_back(node);
    }
    return report;
}

}  // namespace te
