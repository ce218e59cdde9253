"""Time-exchange cooperative forwarding for TDMA uplinks.

A sender node delegates transmission slots to a forwarder node as the
incentive for decode-and-forward relaying. The package exposes the analytic
goodput model, the two-node slot-exchange solvers (sum and proportional-fair
objectives), relay selection by maximum weighted matching, the distributed
add/drop negotiation protocol, and a packet-level Monte Carlo simulator.
"""

from texchange._core import (
    BoundResult,
    ChannelModel,
    ConvergenceReport,
    ExperimentReport,
    ForwardPolicy,
    GainEdge,
    GainGraph,
    MatchingResult,
    NetworkPlan,
    NodeConfig,
    NodeReport,
    Objective,
    PairAllocation,
    PairProblem,
    Scenario,
    SimPerNode,
    SimReport,
    build_gain_graph,
    direct_goodput,
    exact_mwm,
    greedy_mwm,
    inner_solve_sum,
    load_scenario,
    monte_carlo,
    network_objective,
    parse_scenario,
    relaxation_upper_bound,
    report_to_csv,
    report_to_json,
    rounding_lower_bound,
    run_experiment,
    run_negotiation,
    serialize_scenario,
    solve_proportional_fair,
    solve_sum,
    solve_sum_exhaustive,
    te_pair_goodputs,
)

__all__ = [
    "BoundResult",
    "ChannelModel",
    "ConvergenceReport",
    "ExperimentReport",
    "ForwardPolicy",
    "GainEdge",
    "GainGraph",
    "MatchingResult",
    "NetworkPlan",
    "NodeConfig",
    "NodeReport",
    "Objective",
    "PairAllocation",
    "PairProblem",
    "Scenario",
    "SimPerNode",
    "SimReport",
    "build_gain_graph",
    "direct_goodput",
    "exact_mwm",
    "greedy_mwm",
    "inner_solve_sum",
    "load_scenario",
    "monte_carlo",
    "network_objective",
    "parse_scenario",
    "relaxation_upper_bound",
    "report_to_csv",
    "report_to_json",
    "rounding_lower_bound",
    "run_experiment",
    "run_negotiation",
    "serialize_scenario",
    "solve_proportional_fair",
    "solve_sum",
    "solve_sum_exhaustive",
    "te_pair_goodputs",
]

__version__ = "0.1.0"
