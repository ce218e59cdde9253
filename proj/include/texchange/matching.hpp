#ifndef TEXCHANGE_MATCHING_HPP
#define TEXCHANGE_MATCHING_HPP

#include <optional>
#include <span>
#include <vector>

#include "texchange/model.hpp"

// Pair-gain graph construction and sender-forwarder selection: exact maximum
// weighted matching by enumeration (oracle scale) and the centralized form of
// the distributed local-greedy matching.

namespace te {

enum class Objective { kSum, kProportionalFair };

struct GainEdge {
    NodeId a = 0;  // a < b
    NodeId b = 0;
    double weight = 0.0;  // goodput gain of cooperating, > 0 for stored edges
    NodeId sender = 0;    // orientation: which endpoint sends, the other relays
    PairAllocation allocation;  // the gain-achieving slot split
};

struct GainGraph {
    std::vector<NodeId> vertices;
    std::vector<GainEdge> edges;  // sorted by (a, b), one per unordered pair
};

struct MatchingResult {
    std::vector<GainEdge> matched;  // vertex-disjoint, sorted by (a, b)
    std::vector<NodeId> unmatched;
    double total_weight = 0.0;
};

/// Evaluates the pair optimization in both orientations where degradedness
/// (pe_sf <= pe_s0) holds and both inter-node links exist, keeping the larger
/// positive gain. Non-positive gains and missing links leave the pair
/// unconnected. Orientation ties resolve to the smaller sender id.
GainGraph build_gain_graph(std::span<const NodeConfig> nodes,
                           const ChannelModel& channel, Objective objective,
                           double epsilon);

/// Evaluates one unordered pair's edge from raw per-node data. Shared by
/// build_gain_graph and the distributed protocol so both sides of an edge
/// compute bit-identical weights. Absent when no valid orientation yields a
/// positive gain.
std::optional<GainEdge> evaluate_pair_edge(
    NodeId id_a, int k_a, double pe_a0, NodeId id_b, int k_b, double pe_b0,
    std::optional<double> pe_ab, std::optional<double> pe_ba,
    Objective objective, double epsilon);

/// Maximum weighted matching by exhaustive enumeration of all matchings.
/// Deterministic tie-break by lexicographic edge order. Rejects graphs with
/// more than 16 vertices.
MatchingResult exact_mwm(const GainGraph& graph);

/// Centralized equivalent of the distributed local greedy: repeatedly locks
/// the heaviest remaining edge (ties by lexicographic edge id) and removes
/// incident edges. Guarantees at least half the exact matching weight.
MatchingResult greedy_mwm(const GainGraph& graph);

}  // namespace te

#endif  // TEXCHANGE_MATCHING_HPP
