#include "texchange/simnet.hpp"

#include <cmath>

#include "doctest.h"

#include "oracles.hpp"
#include "texchange/pair_opt.hpp"

using namespace te;

namespace {

// A pair plan with an interior relay budget: the forwarder relays only half
// of the expected queue, so the two policies genuinely differ.
struct ManualSetup {
    std::vector<NodeConfig> nodes;
    ChannelModel channel;
    NetworkPlan plan;
};

ManualSetup interior_budget_setup() {
    ManualSetup ms;
    ms.nodes = {{1, 10}, {2, 10}};
    ms.channel.set(1, 0, 0.5);
    ms.channel.set(2, 0, 0.0);
    ms.channel.set(1, 2, 0.1);

    PairAllocation pair;
    pair.sender = 1;
    pair.forwarder = 2;
    pair.k_s_te = 10;
    pair.k_f_te = 10;
    pair.r_c = 2.0;  // half of the expected queue 10 * (0.5 - 0.1) = 4
    pair.r_sf = 9.0;
    pair.r_s0 = 5.0;
    pair.r_s_te = 7.0;
    pair.r_f_te = 8.0;
    pair.gain = 0.0;
    ms.plan.pairs = {pair};
    return ms;
}

ManualSetup fig6_setup() {
    ManualSetup ms;
    const Scenario s = oracle::fig6_scenario();
    ms.nodes = s.nodes;
    ms.channel = s.channel;

    PairAllocation alloc = solve_sum_exhaustive(oracle::fig6_pair_problem());
    alloc.sender = 1;
    alloc.forwarder = 3;
    ms.plan.pairs = {alloc};
    ms.plan.direct = {2};
    return ms;
}

}  // namespace

TEST_CASE("lossless channels deliver every packet") {
    ManualSetup ms;
    ms.nodes = {{1, 10}, {2, 10}};
    ms.channel.set(1, 0, 0.0);
    ms.channel.set(2, 0, 0.0);
    ms.channel.set(1, 2, 0.0);
    PairAllocation pair;
    pair.sender = 1;
    pair.forwarder = 2;
    pair.k_s_te = 10;
    pair.k_f_te = 10;
    pair.r_c = 0.0;
    ms.plan.pairs = {pair};

    for (std::uint64_t seed : {1ull, 77ull, 424242ull}) {
        const TrialOutcome out = run_trial(ms.plan, ms.nodes, ms.channel,
                                           ForwardPolicy::kForwardAll, seed);
        CHECK(out.delivered.at(1) == 10);
        CHECK(out.delivered.at(2) == 10);
        CHECK(out.relayed_delivered.at(1) == 0);  // empty relay queue
    }
}

TEST_CASE("blocked direct path routes everything through the forwarder") {
    ManualSetup ms;
    ms.nodes = {{1, 5}, {2, 10}};
    ms.channel.set(1, 0, 1.0);
    ms.channel.set(2, 0, 0.0);
    ms.channel.set(1, 2, 0.0);
    PairAllocation pair;
    pair.sender = 1;
    pair.forwarder = 2;
    pair.k_s_te = 5;
    pair.k_f_te = 10;
    pair.r_c = 5.0;
    ms.plan.pairs = {pair};

    const TrialOutcome out = run_trial(ms.plan, ms.nodes, ms.channel,
                                       ForwardPolicy::kForwardAll, 99);
    CHECK(out.delivered.at(1) == 5);  // all via relay
    CHECK(out.delivered.at(2) == 5);  // remaining own slots
    CHECK(out.relayed_delivered.at(1) == 5);
    CHECK(out.relay_slots.at(1) == 5);
}

TEST_CASE("identical seeds reproduce identical outcomes") {
    const ManualSetup ms = fig6_setup();
    const TrialOutcome a = run_trial(ms.plan, ms.nodes, ms.channel,
                                     ForwardPolicy::kBudgeted, 1234);
    const TrialOutcome b = run_trial(ms.plan, ms.nodes, ms.channel,
                                     ForwardPolicy::kBudgeted, 1234);
    CHECK(a.delivered == b.delivered);
    CHECK(a.relayed_delivered == b.relayed_delivered);
    const TrialOutcome c = run_trial(ms.plan, ms.nodes, ms.channel,
                                     ForwardPolicy::kBudgeted, 1235);
    CHECK((a.delivered != c.delivered || a.relayed_delivered !=
                                             c.relayed_delivered));
}

TEST_CASE("degradedness violations are rejected") {
    ManualSetup ms;
    ms.nodes = {{1, 5}, {2, 5}};
    ms.channel.set(1, 0, 0.1);
    ms.channel.set(2, 0, 0.0);
    ms.channel.set(1, 2, 0.4);
    PairAllocation pair;
    pair.sender = 1;
    pair.forwarder = 2;
    pair.k_s_te = 5;
    pair.k_f_te = 5;
    ms.plan.pairs = {pair};
    CHECK_THROWS_AS(run_trial(ms.plan, ms.nodes, ms.channel,
                              ForwardPolicy::kForwardAll, 7),
                    std::invalid_argument);
}

TEST_CASE("conservation bounds hold across random trials") {
    const ManualSetup ms = fig6_setup();
    const PairAllocation& pair = ms.plan.pairs[0];
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        for (ForwardPolicy policy :
             {ForwardPolicy::kForwardAll, ForwardPolicy::kBudgeted}) {
            const TrialOutcome out =
                run_trial(ms.plan, ms.nodes, ms.channel, policy, seed);
            CHECK(out.delivered.at(1) <= pair.k_s_te);
            CHECK(out.delivered.at(3) +
                      out.relay_slots.at(1) <= pair.k_f_te);
            CHECK(out.delivered.at(2) <= 83);
            const LinkTally& t = out.link_tallies.at({1, 3});
            CHECK(t.sent == pair.k_s_te);
            CHECK(t.lost >= 0);
        }
    }
}

TEST_CASE("forward-all dominates budgeted for the sender, trial by trial") {
    const ManualSetup ms = interior_budget_setup();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const TrialOutcome fa = run_trial(ms.plan, ms.nodes, ms.channel,
                                          ForwardPolicy::kForwardAll, seed);
        const TrialOutcome bud = run_trial(ms.plan, ms.nodes, ms.channel,
                                           ForwardPolicy::kBudgeted, seed);
        CHECK(fa.delivered.at(1) >= bud.delivered.at(1));
        CHECK(fa.delivered.at(2) <= bud.delivered.at(2));
    }
}

TEST_CASE("budgeted means converge to the plan's analytic goodputs") {
    const ManualSetup ms = interior_budget_setup();
    const SimReport report =
        monte_carlo(ms.plan, ms.nodes, ms.channel, ForwardPolicy::kBudgeted,
                    20000, 555);
    const auto& sender = report.node(1);
    const auto& forwarder = report.node(2);
    CHECK(sender.analytic == doctest::Approx(7.0));
    CHECK(forwarder.analytic == doctest::Approx(8.0));
    CHECK(std::abs(sender.mean - sender.analytic) <=
          3.0 * sender.stderr_mean);
    CHECK(std::abs(forwarder.mean - forwarder.analytic) <=
          3.0 * forwarder.stderr_mean);
}

TEST_CASE("budgeted means match the back-solved plan") {
    const ManualSetup ms = fig6_setup();
    const SimReport report = monte_carlo(
        ms.plan, ms.nodes, ms.channel, ForwardPolicy::kBudgeted, 10000, 2026);
    for (NodeId id : {1, 2, 3}) {
        const auto& n = report.node(id);
        CHECK(std::abs(n.mean - n.analytic) <= 3.0 * n.stderr_mean);
    }
    CHECK(report.node(1).analytic == doctest::Approx(18.0).epsilon(1e-9));
    CHECK(report.node(3).analytic ==
          doctest::Approx(132.337349).epsilon(1e-6));
}

TEST_CASE("direct-only binomial statistics") {
    std::vector<NodeConfig> nodes = {{1, 1000}};
    ChannelModel channel;
    channel.set(1, 0, 0.3);
    NetworkPlan plan;
    plan.direct = {1};
    const SimReport report = monte_carlo(plan, nodes, channel,
                                         ForwardPolicy::kBudgeted, 10000, 31);
    CHECK(std::abs(report.node(1).mean - 700.0) <= 0.44);
    CHECK(report.node(1).analytic == doctest::Approx(700.0));
}

TEST_CASE("monte carlo rejects a zero trial count") {
    const ManualSetup ms = interior_budget_setup();
    CHECK_THROWS_AS(monte_carlo(ms.plan, ms.nodes, ms.channel,
                                ForwardPolicy::kBudgeted, 0, 1),
                    std::invalid_argument);
}
