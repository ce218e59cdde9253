#include "texchange/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace te {

namespace {

void require_probability(double pe, const char* what) {
    if (!(pe >= 0.0 && pe <= 1.0)) {
        std::ostringstream os;
        os << what << " = " << pe << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

void ChannelModel::set(NodeId from, NodeId to, double pe) {
    if (from == to) {
        std::ostringstream os;
        os << "link (" << from << ", " << to << "): self-links are not allowed";
        throw std::invalid_argument(os.str());
    }
    if (from == kBaseStation) {
        std::ostringstream os;
        os << "link (" << from << ", " << to
           << "): links from the base station are not modeled";
        throw std::invalid_argument(os.str());
    }
    if (!(pe >= 0.0 && pe <= 1.0)) {
        std::ostringstream os;
        os << "link (" << from << ", " << to << "): pe = " << pe
           << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
    per_[{from, to}] = pe;
}

bool ChannelModel::has(NodeId from, NodeId to) const {
    return per_.count({from, to}) > 0;
}

double ChannelModel::at(NodeId from, NodeId to) const {
    auto it = per_.find({from, to});
    if (it == per_.end()) {
        std::ostringstream os;
        os << "link (" << from << ", " << to << "): no such link";
        throw std::invalid_argument(os.str());
    }
    return it->second;
}

std::optional<double> ChannelModel::get(NodeId from, NodeId to) const {
    auto it = per_.find({from, to});
    if (it == per_.end()) return std::nullopt;
    return it->second;
}

void ChannelModel::validate(std::span<const NodeConfig> nodes) const {
    for (const NodeConfig& n : nodes) {
        if (!has(n.id, kBaseStation)) {
            std::ostringstream os;
            os << "node " << n.id << ": missing direct link (" << n.id << ", "
               << kBaseStation << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

double direct_goodput(int slots, double pe) {
    if (slots < 0) {
        throw std::invalid_argument("direct_goodput: negative slot count");
    }
    require_probability(pe, "direct_goodput: pe");
    return slots * (1.0 - pe);
}

TePairGoodputs te_pair_goodputs(int k_s_te, int k_f_te, double r_c,
                                double pe_s0, double pe_f0, double pe_sf) {
    if (k_s_te < 0 || k_f_te < 0) {
        throw std::invalid_argument("te_pair_goodputs: negative slot count");
    }
    require_probability(pe_s0, "te_pair_goodputs: pe_s0");
    require_probability(pe_f0, "te_pair_goodputs: pe_f0");
    require_probability(pe_sf, "te_pair_goodputs: pe_sf");
    if (pe_sf > pe_s0) {
        std::ostringstream os;
        os << "te_pair_goodputs: degradedness violated, pe_sf = " << pe_sf
           << " > pe_s0 = " << pe_s0;
        throw std::invalid_argument(os.str());
    }
    const double relay_cap = k_f_te * (1.0 - pe_f0);
    if (r_c < -kFeasTol || r_c > relay_cap + kFeasTol) {
        std::ostringstream os;
        os << "te_pair_goodputs: r_c = " << r_c << " outside [0, " << relay_cap
           << "]";
        throw std::invalid_argument(os.str());
    }
    r_c = std::clamp(r_c, 0.0, relay_cap);

    TePairGoodputs g;
    g.r_sf = k_s_te * (1.0 - pe_sf);
    g.r_s0 = k_s_te * (1.0 - pe_s0);
    g.r_f_te = relay_cap - r_c;
    g.r_s_te = std::min(g.r_sf, g.r_s0 + r_c);
    return g;
}

double network_objective(const NetworkPlan& plan,
                         std::span<const NodeConfig> nodes,
                         const ChannelModel& channel) {
    std::set<NodeId> seen;
    auto claim = [&seen](NodeId id) {
        if (!seen.insert(id).second) {
            std::ostringstream os;
            os << "network plan: node " << id
               << " appears in more than one role";
            throw std::invalid_argument(os.str());
        }
    };
    for (const PairAllocation& p : plan.pairs) {
        claim(p.sender);
        claim(p.forwarder);
    }
    for (NodeId d : plan.direct) claim(d);

    double total = 0.0;
    for (NodeId d : plan.direct) {
        auto it = std::find_if(nodes.begin(), nodes.end(),
                               [d](const NodeConfig& n) { return n.id == d; });
        if (it == nodes.end()) {
            std::ostringstream os;
            os << "network plan: direct node " << d << " is not in the node set";
            throw std::invalid_argument(os.str());
        }
        total += direct_goodput(it->k_in, channel.at(d, kBaseStation));
    }
    for (const PairAllocation& p : plan.pairs) {
        total += p.r_s_te + p.r_f_te;
    }

    // Eq. (6h): pairs and the direct set together cover all nodes.
    for (const NodeConfig& n : nodes) {
        if (!seen.count(n.id)) {
            std::ostringstream os;
            os << "network plan: node " << n.id
               << " is neither paired nor direct";
            throw std::invalid_argument(os.str());
        }
    }
    return total;
}

void check_pair_allocation(const PairAllocation& alloc, int k_s_in, int k_f_in,
                           double pe_s0, double pe_f0, double pe_sf,
                           double tol) {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("pair allocation: " + what);
    };
    if (alloc.k_s_te < 0 || alloc.k_f_te < 0) fail("negative slot count");
    if (alloc.k_s_te + alloc.k_f_te > k_s_in + k_f_in) {
        fail("slot budget exceeded");
    }
    // Re-derive through the model route and compare.
    const TePairGoodputs g = te_pair_goodputs(alloc.k_s_te, alloc.k_f_te,
                                              alloc.r_c, pe_s0, pe_f0, pe_sf);
    if (std::abs(g.r_sf - alloc.r_sf) > tol) fail("r_sf mismatch");
    if (std::abs(g.r_s0 - alloc.r_s0) > tol) fail("r_s0 mismatch");
    if (std::abs(g.r_f_te - alloc.r_f_te) > tol) fail("r_f_te mismatch");
    if (alloc.r_s_te > g.r_s_te + tol) fail("r_s_te above the cut bound");

    const double r_s_in = direct_goodput(k_s_in, pe_s0);
    const double r_f_in = direct_goodput(k_f_in, pe_f0);
    if (alloc.r_s_te < r_s_in - tol) fail("sender below initial goodput");
    if (alloc.r_f_te < r_f_in - tol) fail("forwarder below initial goodput");
    const double gain = (alloc.r_s_te + alloc.r_f_te) - (r_s_in + r_f_in);
    if (std::abs(gain - alloc.gain) > 1e-6) fail("stored gain mismatch");
}

}  // namespace te
