#include "texchange/matching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "texchange/pair_opt.hpp"

namespace te {

namespace {

// One oriented evaluation; returns nothing when the inter-node link is
// missing or degradedness fails for this orientation.
std::optional<PairAllocation> evaluate_orientation(
    NodeId sender, int k_s_in, double pe_s0, NodeId forwarder, int k_f_in,
    double pe_f0, std::optional<double> pe_sf, Objective objective,
    double epsilon) {
    if (!pe_sf.has_value()) return std::nullopt;
    if (*pe_sf > pe_s0) return std::nullopt;  // degradedness filter

    PairProblem problem;
    problem.k_s_in = k_s_in;
    problem.k_f_in = k_f_in;
    problem.pe_s0 = pe_s0;
    problem.pe_f0 = pe_f0;
    problem.pe_sf = *pe_sf;

    PairAllocation alloc = objective == Objective::kSum
                               ? solve_sum(problem, epsilon)
                               : solve_proportional_fair(problem);
    alloc.sender = sender;
    alloc.forwarder = forwarder;
    return alloc;
}

}  // namespace

std::optional<GainEdge> evaluate_pair_edge(
    NodeId id_a, int k_a, double pe_a0, NodeId id_b, int k_b, double pe_b0,
    std::optional<double> pe_ab, std::optional<double> pe_ba,
    Objective objective, double epsilon) {
    if (id_a > id_b) {
        return evaluate_pair_edge(id_b, k_b, pe_b0, id_a, k_a, pe_a0, pe_ba,
                                  pe_ab, objective, epsilon);
    }
    auto fwd = evaluate_orientation(id_a, k_a, pe_a0, id_b, k_b, pe_b0, pe_ab,
                                    objective, epsilon);
    auto rev = evaluate_orientation(id_b, k_b, pe_b0, id_a, k_a, pe_a0, pe_ba,
                                    objective, epsilon);

    // Larger gain wins the orientation; exact ties go to the smaller sender.
    std::optional<PairAllocation> best;
    if (fwd) best = fwd;
    if (rev && (!best || rev->gain > best->gain)) best = rev;
    if (!best || best->gain <= kFeasTol) return std::nullopt;

    GainEdge edge;
    edge.a = id_a;
    edge.b = id_b;
    edge.weight = best->gain;
    edge.sender = best->sender;
    edge.allocation = *best;
    return edge;
}

GainGraph build_gain_graph(std::span<const NodeConfig> nodes,
                           const ChannelModel& channel, Objective objective,
                           double epsilon) {
    GainGraph graph;
    std::vector<NodeConfig> ordered(nodes.begin(), nodes.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const NodeConfig& x, const NodeConfig& y) {
                  return x.id < y.id;
              });
    for (const NodeConfig& n : ordered) graph.vertices.push_back(n.id);

    for (std::size_t i = 0; i < ordered.size(); ++i) {
        for (std::size_t j = i + 1; j < ordered.size(); ++j) {
            const NodeConfig& a = ordered[i];
            const NodeConfig& b = ordered[j];
            if (!channel.has(a.id, kBaseStation) ||
                !channel.has(b.id, kBaseStation)) {
                continue;
            }
            auto edge = evaluate_pair_edge(
                a.id, a.k_in, channel.at(a.id, kBaseStation), b.id, b.k_in,
                channel.at(b.id, kBaseStation), channel.get(a.id, b.id),
                channel.get(b.id, a.id), objective, epsilon);
            if (edge) graph.edges.push_back(*edge);
        }
    }
    return graph;
}

namespace {

struct Enumerator {
    const GainGraph& graph;
    std::map<NodeId, int> index_of;
    std::vector<std::vector<int>> adjacency;  // vertex index -> edge indices
    std::vector<bool> used;
    std::vector<int> current;
    std::vector<int> best;
    double best_weight = 0.0;
    bool have_best = false;

    explicit Enumerator(const GainGraph& g) : graph(g) {
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
            index_of[g.vertices[i]] = static_cast<int>(i);
        }
        adjacency.resize(g.vertices.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            adjacency[index_of.at(g.edges[e].a)].push_back(static_cast<int>(e));
            adjacency[index_of.at(g.edges[e].b)].push_back(static_cast<int>(e));
        }
        used.assign(g.vertices.size(), false);
    }

    double weight_of(const std::vector<int>& edges) const {
        double w = 0.0;
        for (int e : edges) w += graph.edges[e].weight;
        return w;
    }

    void consider() {
        const double w = weight_of(current);
        // Ties (to tolerance) resolve to the lexicographically smaller edge
        // index sequence; `current` is built in ascending vertex order so it
        // is already sorted.
        if (!have_best || w > best_weight + kFeasTol ||
            (w >= best_weight - kFeasTol && current < best)) {
            best = current;
            best_weight = have_best ? std::max(w, best_weight) : w;
            have_best = true;
        }
    }

    void recurse(std::size_t v) {
        while (v < used.size() && used[v]) ++v;
        if (v >= used.size()) {
            consider();
            return;
        }
        // Leave v unmatched.
        used[v] = true;
        recurse(v + 1);
        used[v] = false;
        // Match v with an unmatched neighbour of larger index.
        for (int e : adjacency[v]) {
            const GainEdge& edge = graph.edges[e];
            const int other = index_of.at(edge.a) == static_cast<int>(v)
                                  ? index_of.at(edge.b)
                                  : index_of.at(edge.a);
            if (other <= static_cast<int>(v) || used[other]) continue;
            used[v] = used[other] = true;
            current.push_back(e);
            recurse(v + 1);
            current.pop_back();
            used[v] = used[other] = false;
        }
    }
};

MatchingResult assemble_result(const GainGraph& graph,
                               const std::vector<int>& edge_indices) {
    MatchingResult result;
    std::vector<int> sorted = edge_indices;
    std::sort(sorted.begin(), sorted.end());
    std::map<NodeId, bool> covered;
    for (NodeId v : graph.vertices) covered[v] = false;
    for (int e : sorted) {
        result.matched.push_back(graph.edges[e]);
        result.total_weight += graph.edges[e].weight;
        covered[graph.edges[e].a] = true;
        covered[graph.edges[e].b] = true;
    }
    for (NodeId v : graph.vertices) {
        if (!covered[v]) result.unmatched.push_back(v);
    }
    return result;
}

}  // namespace

MatchingResult exact_mwm(const GainGraph& graph) {
    if (graph.vertices.size() > 16) {
        std::ostringstream os;
        os << "exact_mwm: " << graph.vertices.size()
           << " vertices exceed the enumeration limit of 16";
        throw std::invalid_argument(os.str());
    }
    Enumerator en(graph);
    en.recurse(0);
    return assemble_result(graph, en.have_best ? en.best : std::vector<int>{});
}

MatchingResult greedy_mwm(const GainGraph& graph) {
    std::vector<int> order(graph.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&graph](int x, int y) {
        const GainEdge& ex = graph.edges[x];
        const GainEdge& ey = graph.edges[y];
        if (ex.weight != ey.weight) return ex.weight > ey.weight;
        if (ex.a != ey.a) return ex.a < ey.a;
        return ex.b < ey.b;
    });

    std::map<NodeId, bool> taken;
    for (NodeId v : graph.vertices) taken[v] = false;
    std::vector<int> picked;
    for (int e : order) {
        const GainEdge& edge = graph.edges[e];
        if (taken[edge.a] || taken[edge.b]) continue;
        taken[edge.a] = taken[edge.b] = true;
        picked.push_back(e);
    }
    return assemble_result(graph, picked);
}

}  // namespace te
