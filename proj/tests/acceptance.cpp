// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each, nonzero exit when anything fails. Random suites use fixed seeds so
// the run is reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "texchange/experiment.hpp"
#include "texchange/matching.hpp"
#include "texchange/model.hpp"
#include "texchange/pair_opt.hpp"
#include "texchange/protocol.hpp"
#include "texchange/scenario.hpp"
#include "texchange/simnet.hpp"

using namespace te;

namespace {

int failures = 0;

struct Criterion {
    std::string label;
    bool ok = true;
    std::string detail;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    explicit Criterion(std::string text) : label(std::move(text)) {}

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }

    ~Criterion() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (ok) {
            std::printf("PASS  %s  (%.2fs)\n", label.c_str(), seconds);
        } else {
            std::printf("FAIL  %s  (%.2fs): %s\n", label.c_str(), seconds,
                        detail.c_str());
            ++failures;
        }
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// --- criterion 1: pair solution consistency on the back-solved scenario ---
void criterion_1() {
    Criterion c("criterion 1: back-solved pair gives R_f = 132 +- 1, gain = 49 +- 1");
    const PairProblem p = oracle::fig6_pair_problem();
    const PairAllocation alloc = solve_sum(p, 0.5);
    const double identity =
        (alloc.r_f_te + alloc.r_s_te) - (83.0 + 18.0);
    c.require(std::abs(alloc.gain - identity) <= 1e-6,
              "gain identity broken: gain=" + num(alloc.gain) +
                  " vs " + num(identity));
    c.require(std::abs(alloc.r_f_te - 132.0) <= 1.0,
              "R_f = " + num(alloc.r_f_te));
    c.require(std::abs(alloc.gain - 49.0) <= 1.0, "gain = " + num(alloc.gain));
}

// --- criterion 2: both selectors pick pair (1,3) on the scenario ---
void criterion_2() {
    Criterion c("criterion 2: exact MWM and the protocol both select pair (1,3)");
    const Scenario s = oracle::fig6_scenario();
    const GainGraph g =
        build_gain_graph(s.nodes, s.channel, Objective::kSum, s.epsilon);
    const MatchingResult exact = exact_mwm(g);
    c.require(exact.matched.size() == 1 && exact.matched[0].a == 1 &&
                  exact.matched[0].b == 3,
              "exact MWM picked something else");

    ControlBus bus;
    const ConvergenceReport report =
        run_negotiation(s.nodes, s.channel, Objective::kSum, s.epsilon, bus);
    c.require(report.pairing.matched.size() == 1 &&
                  report.pairing.matched[0].a == 1 &&
                  report.pairing.matched[0].b == 3,
              "protocol picked something else");
    c.require(report.pairing.unmatched == std::vector<NodeId>{2},
              "node 2 is not direct");
}

// --- criterion 3: sum pins the sender; proportional fair lifts both ---
void criterion_3() {
    Criterion c("criterion 3: sum pins the sender, proportional fair lifts both");

    auto check_scenario = [&c](const Scenario& s) {
        Scenario sum_s = s;
        sum_s.objective = Objective::kSum;
        const GainGraph sum_g = build_gain_graph(
            sum_s.nodes, sum_s.channel, Objective::kSum, sum_s.epsilon);
        const MatchingResult sum_m = greedy_mwm(sum_g);
        for (const GainEdge& e : sum_m.matched) {
            const PairAllocation& a = e.allocation;
            PairProblem p;
            for (const NodeConfig& n : s.nodes) {
                if (n.id == a.sender) p.k_s_in = n.k_in;
                if (n.id == a.forwarder) p.k_f_in = n.k_in;
            }
            p.pe_s0 = s.channel.at(a.sender, kBaseStation);
            p.pe_f0 = s.channel.at(a.forwarder, kBaseStation);
            p.pe_sf = s.channel.at(a.sender, a.forwarder);
            c.require(std::abs(a.r_s_te - p.r_s_in()) <= 1e-6,
                      "sum objective moved the sender off its initial "
                      "goodput: r_s_te=" +
                          num(a.r_s_te) + " r_s_in=" + num(p.r_s_in()));
            c.require(std::abs((a.r_f_te - p.r_f_in()) - a.gain) <= 1e-6,
                      "gain not fully at the forwarder");
        }
        const GainGraph pf_g =
            build_gain_graph(s.nodes, s.channel, Objective::kProportionalFair,
                             s.epsilon);
        const MatchingResult pf_m = greedy_mwm(pf_g);
        int lifted = 0;
        for (const GainEdge& e : pf_m.matched) {
            const PairAllocation& a = e.allocation;
            double r_s_in = 0.0;
            double r_f_in = 0.0;
            for (const NodeConfig& n : s.nodes) {
                if (n.id == a.sender) {
                    r_s_in = direct_goodput(
                        n.k_in, s.channel.at(n.id, kBaseStation));
                }
                if (n.id == a.forwarder) {
                    r_f_in = direct_goodput(
                        n.k_in, s.channel.at(n.id, kBaseStation));
                }
            }
            c.require(a.r_s_te > r_s_in + 1e-9 && a.r_f_te > r_f_in + 1e-9,
                      "proportional fair did not lift both nodes strictly");
            ++lifted;
        }
        return std::pair<int, int>(static_cast<int>(sum_m.matched.size()),
                                   lifted);
    };

    auto [fig6_pairs, fig6_lifted] = check_scenario(oracle::fig6_scenario());
    c.require(fig6_pairs == 1 && fig6_lifted == 1,
              "back-solved scenario did not cooperate under both objectives");

    std::mt19937 rng(61);
    int scenarios = 0;
    int with_pairs = 0;
    int with_pf_pairs = 0;
    while (scenarios < 100) {
        const Scenario s = oracle::random_scenario(rng, 6, true);
        auto [pairs, lifted] = check_scenario(s);
        ++scenarios;
        if (pairs > 0) ++with_pairs;
        if (lifted > 0) ++with_pf_pairs;
    }
    c.require(with_pairs >= 90,
              "too few random scenarios with sum-objective pairs: " +
                  std::to_string(with_pairs));
    c.require(with_pf_pairs >= 60,
              "too few random scenarios with proportional-fair pairs: " +
                  std::to_string(with_pf_pairs));
}

// --- criterion 4: bound sandwich and epsilon accuracy, 1000 problems ---
void criterion_4() {
    Criterion c("criterion 4: l0 <= optimum <= u0 and eps=0.5 accuracy on 1000 problems");
    std::mt19937 rng(62);
    for (int i = 0; i < 1000; ++i) {
        const PairProblem p = oracle::random_problem(rng, 200);
        const BoundResult bounds = rounding_lower_bound(p);
        const double exact = solve_sum_exhaustive(p).gain;
        c.require(bounds.lower <= exact + 1e-9,
                  "lower bound above the optimum at instance " +
                      std::to_string(i));
        c.require(exact <= bounds.upper + 1e-9,
                  "upper bound below the optimum at instance " +
                      std::to_string(i));
        const double approx = solve_sum(p, 0.5).gain;
        c.require(approx >= exact - 0.5 - 1e-9 && approx <= exact + 1e-9,
                  "eps-solution off by more than 0.5 at instance " +
                      std::to_string(i));
    }
}

// --- criterion 5: greedy half-approximation, 1000 graphs ---
void criterion_5() {
    Criterion c("criterion 5: greedy weight >= 1/2 exact on 1000 graphs, 2/3 witness");
    GainGraph path;
    path.vertices = {1, 2, 3, 4};
    auto make_edge = [](NodeId a, NodeId b, double w) {
        GainEdge e;
        e.a = a;
        e.b = b;
        e.weight = w;
        e.sender = a;
        return e;
    };
    path.edges = {make_edge(1, 2, 3.0), make_edge(2, 3, 4.0),
                  make_edge(3, 4, 3.0)};
    const double greedy_w = greedy_mwm(path).total_weight;
    const double exact_w = exact_mwm(path).total_weight;
    c.require(std::abs(greedy_w - 4.0) < 1e-12 &&
                  std::abs(exact_w - 6.0) < 1e-12,
              "3-4-3 witness is not 4 vs 6");

    std::mt19937 rng(63);
    std::uniform_int_distribution<int> count(2, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        GainGraph g;
        const int n = count(rng);
        for (int v = 1; v <= n; ++v) g.vertices.push_back(v);
        for (int a = 1; a <= n; ++a) {
            for (int b = a + 1; b <= n; ++b) {
                if (unit(rng) < 0.5) {
                    g.edges.push_back(make_edge(a, b, 0.05 + 20 * unit(rng)));
                }
            }
        }
        const MatchingResult greedy = greedy_mwm(g);
        const MatchingResult exact = exact_mwm(g);
        c.require(greedy.total_weight >= 0.5 * exact.total_weight - 1e-9,
                  "half-approximation broken at instance " +
                      std::to_string(i));
    }
}

// --- criterion 6: protocol bounds and greedy equivalence, 1000 scenarios ---
void criterion_6() {
    Criterion c("criterion 6: <= N^2 messages and greedy-equal pairing on 1000 scenarios");
    std::mt19937 rng(64);
    for (int i = 0; i < 1000; ++i) {
        const Scenario s = oracle::random_scenario(rng, 10);
        ControlBus bus;
        const ConvergenceReport report = run_negotiation(
            s.nodes, s.channel, Objective::kSum, s.epsilon, bus);
        const int n = static_cast<int>(s.nodes.size());
        c.require(report.message_count <= n * n,
                  "message bound broken at instance " + std::to_string(i) +
                      ": " + std::to_string(report.message_count) + " > " +
                      std::to_string(n * n));
        const GainGraph g = build_gain_graph(s.nodes, s.channel,
                                             Objective::kSum, s.epsilon);
        const MatchingResult greedy = greedy_mwm(g);
        bool same = report.pairing.matched.size() == greedy.matched.size() &&
                    report.pairing.unmatched == greedy.unmatched;
        if (same) {
            for (std::size_t k = 0; k < greedy.matched.size(); ++k) {
                same = same &&
                       report.pairing.matched[k].a == greedy.matched[k].a &&
                       report.pairing.matched[k].b == greedy.matched[k].b &&
                       report.pairing.matched[k].sender ==
                           greedy.matched[k].sender;
            }
        }
        c.require(same, "protocol pairing differs from centralized greedy "
                        "at instance " +
                            std::to_string(i));
    }
}

// --- criterion 7: Monte Carlo validation ---
void criterion_7() {
    Criterion c("criterion 7: budgeted Monte Carlo matches analytic within 3 SE");
    const Scenario s = oracle::fig6_scenario();
    PairAllocation alloc = solve_sum_exhaustive(oracle::fig6_pair_problem());
    alloc.sender = 1;
    alloc.forwarder = 3;
    NetworkPlan plan;
    plan.pairs = {alloc};
    plan.direct = {2};
    const SimReport report = monte_carlo(
        plan, s.nodes, s.channel, ForwardPolicy::kBudgeted, 10000, 2026);
    for (NodeId id : {1, 2, 3}) {
        const auto& n = report.node(id);
        c.require(std::abs(n.mean - n.analytic) <= 3.0 * n.stderr_mean,
                  "node " + std::to_string(id) + " off: mean=" + num(n.mean) +
                      " analytic=" + num(n.analytic) +
                      " se=" + num(n.stderr_mean));
    }

    std::vector<NodeConfig> solo = {{1, 1000}};
    ChannelModel channel;
    channel.set(1, 0, 0.3);
    NetworkPlan direct_plan;
    direct_plan.direct = {1};
    const SimReport binom = monte_carlo(direct_plan, solo, channel,
                                        ForwardPolicy::kBudgeted, 10000, 31);
    c.require(std::abs(binom.node(1).mean - 700.0) <= 0.44,
              "binomial mean " + num(binom.node(1).mean) +
                  " further than 0.44 from 700");
}

// --- criterion 8: objective shift equivalence on 1000 random plans ---
void criterion_8() {
    Criterion c("criterion 8: network objective minus R_tot equals the pair-gain objective");
    std::mt19937 rng(65);
    std::uniform_int_distribution<int> node_count(2, 8);
    std::uniform_int_distribution<int> slots(5, 80);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = node_count(rng);
        std::vector<NodeConfig> nodes;
        ChannelModel channel;
        for (int i = 1; i <= n; ++i) {
            nodes.push_back({i, slots(rng)});
            channel.set(i, 0, unit(rng));
        }
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = i + 1;
        std::shuffle(ids.begin(), ids.end(), rng);

        NetworkPlan plan;
        double pair_objective = 0.0;
        std::size_t at = 0;
        while (at + 1 < ids.size() && unit(rng) < 0.7) {
            const NodeId sn = ids[at];
            const NodeId fn = ids[at + 1];
            PairProblem p;
            p.k_s_in = nodes[sn - 1].k_in;
            p.k_f_in = nodes[fn - 1].k_in;
            p.pe_s0 = channel.at(sn, 0);
            p.pe_f0 = channel.at(fn, 0);
            p.pe_sf = unit(rng) * p.pe_s0;
            channel.set(sn, fn, p.pe_sf);
            PairAllocation alloc = unit(rng) < 0.5
                                       ? solve_sum_exhaustive(p)
                                       : solve_proportional_fair(p);
            alloc.sender = sn;
            alloc.forwarder = fn;
            plan.pairs.push_back(alloc);
            pair_objective +=
                alloc.r_s_te + alloc.r_f_te - p.r_s_in() - p.r_f_in();
            at += 2;
        }
        for (; at < ids.size(); ++at) plan.direct.push_back(ids[at]);

        double r_tot = 0.0;
        for (const NodeConfig& cfg : nodes) {
            r_tot += direct_goodput(cfg.k_in, channel.at(cfg.id, 0));
        }
        const double objective = network_objective(plan, nodes, channel);
        c.require(std::abs((objective - r_tot) - pair_objective) <= 1e-9,
                  "shift equivalence broken at instance " +
                      std::to_string(trial));
    }
}

// --- criterion 9: determinism of traces and reports ---
void criterion_9() {
    Criterion c("criterion 9: identical scenario and seed give byte-identical output");
    Scenario s = oracle::fig6_scenario();
    s.trials = 500;
    const ExperimentReport a = run_experiment(s);
    const ExperimentReport b = run_experiment(s);
    c.require(a.trace == b.trace, "trace logs differ");
    c.require(report_to_csv(a) == report_to_csv(b), "CSV reports differ");
    c.require(report_to_json(a) == report_to_json(b), "JSON reports differ");
    c.require(!a.trace.empty() && !report_to_csv(a).empty(),
              "outputs unexpectedly empty");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
