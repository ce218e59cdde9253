#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "texchange/experiment.hpp"
#include "texchange/matching.hpp"
#include "texchange/model.hpp"
#include "texchange/pair_opt.hpp"
#include "texchange/protocol.hpp"
#include "texchange/scenario.hpp"
#include "texchange/simnet.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Time-exchange cooperative forwarding: pair optimization, "
              "relay matching, distributed negotiation and TDMA simulation";

    py::class_<te::NodeConfig>(m, "NodeConfig")
        .def(py::init<>())
        .def(py::init([](te::NodeId id, int k_in) {
                 return te::NodeConfig{id, k_in};
             }),
             py::arg("id"), py::arg("k_in"))
        .def_readwrite("id", &te::NodeConfig::id)
        .def_readwrite("k_in", &te::NodeConfig::k_in);

    py::class_<te::ChannelModel>(m, "ChannelModel")
        .def(py::init<>())
        .def("set", &te::ChannelModel::set, py::arg("from_node"),
             py::arg("to_node"), py::arg("pe"))
        .def("has", &te::ChannelModel::has)
        .def("at", &te::ChannelModel::at)
        .def("links", &te::ChannelModel::links);

    py::class_<te::PairAllocation>(m, "PairAllocation")
        .def(py::init<>())
        .def_readwrite("sender", &te::PairAllocation::sender)
        .def_readwrite("forwarder", &te::PairAllocation::forwarder)
        .def_readwrite("k_s_te", &te::PairAllocation::k_s_te)
        .def_readwrite("k_f_te", &te::PairAllocation::k_f_te)
        .def_readwrite("r_c", &te::PairAllocation::r_c)
        .def_readwrite("r_sf", &te::PairAllocation::r_sf)
        .def_readwrite("r_s0", &te::PairAllocation::r_s0)
        .def_readwrite("r_s_te", &te::PairAllocation::r_s_te)
        .def_readwrite("r_f_te", &te::PairAllocation::r_f_te)
        .def_readwrite("gain", &te::PairAllocation::gain)
        .def("__repr__", [](const te::PairAllocation& a) {
            return "PairAllocation(sender=" + std::to_string(a.sender) +
                   ", forwarder=" + std::to_string(a.forwarder) +
                   ", k_s_te=" + std::to_string(a.k_s_te) +
                   ", k_f_te=" + std::to_string(a.k_f_te) +
                   ", gain=" + std::to_string(a.gain) + ")";
        });

    py::class_<te::NetworkPlan>(m, "NetworkPlan")
        .def(py::init<>())
        .def_readwrite("pairs", &te::NetworkPlan::pairs)
        .def_readwrite("direct", &te::NetworkPlan::direct)
        .def_readwrite("objective_value", &te::NetworkPlan::objective_value);

    m.def("direct_goodput", &te::direct_goodput, py::arg("slots"),
          py::arg("pe"));
    m.def(
        "te_pair_goodputs",
        [](int k_s_te, int k_f_te, double r_c, double pe_s0, double pe_f0,
           double pe_sf) {
            const te::TePairGoodputs g =
                te::te_pair_goodputs(k_s_te, k_f_te, r_c, pe_s0, pe_f0, pe_sf);
            return py::make_tuple(g.r_s_te, g.r_f_te, g.r_sf, g.r_s0);
        },
        py::arg("k_s_te"), py::arg("k_f_te"), py::arg("r_c"), py::arg("pe_s0"),
        py::arg("pe_f0"), py::arg("pe_sf"));
    m.def("network_objective", &te::network_objective, py::arg("plan"),
          py::arg("nodes"), py::arg("channel"));

    py::class_<te::PairProblem>(m, "PairProblem")
        .def(py::init<>())
        .def(py::init([](int k_s_in, int k_f_in, double pe_s0, double pe_f0,
                         double pe_sf) {
                 te::PairProblem p{k_s_in, k_f_in, pe_s0, pe_f0, pe_sf};
                 p.validate();
                 return p;
             }),
             py::arg("k_s_in"), py::arg("k_f_in"), py::arg("pe_s0"),
             py::arg("pe_f0"), py::arg("pe_sf"))
        .def_readwrite("k_s_in", &te::PairProblem::k_s_in)
        .def_readwrite("k_f_in", &te::PairProblem::k_f_in)
        .def_readwrite("pe_s0", &te::PairProblem::pe_s0)
        .def_readwrite("pe_f0", &te::PairProblem::pe_f0)
        .def_readwrite("pe_sf", &te::PairProblem::pe_sf)
        .def("r_s_in", &te::PairProblem::r_s_in)
        .def("r_f_in", &te::PairProblem::r_f_in);

    py::class_<te::BoundResult>(m, "BoundResult")
        .def_readonly("upper", &te::BoundResult::upper)
        .def_readonly("lower", &te::BoundResult::lower)
        .def_readonly("lower_allocation", &te::BoundResult::lower_allocation)
        .def("gap", &te::BoundResult::gap);

    m.def(
        "inner_solve_sum",
        [](int k_s_te, int k_f_te, const te::PairProblem& p)
            -> std::optional<py::tuple> {
            auto inner = te::inner_solve_sum(k_s_te, k_f_te, p);
            if (!inner) return std::nullopt;
            return py::make_tuple(inner->r_c, inner->r_s_te, inner->r_f_te);
        },
        py::arg("k_s_te"), py::arg("k_f_te"), py::arg("problem"));
    m.def("solve_sum_exhaustive", &te::solve_sum_exhaustive,
          py::arg("problem"));
    m.def("relaxation_upper_bound", &te::relaxation_upper_bound,
          py::arg("problem"));
    m.def("rounding_lower_bound", &te::rounding_lower_bound,
          py::arg("problem"));
    m.def("solve_sum", &te::solve_sum, py::arg("problem"), py::arg("epsilon"));
    m.def("solve_proportional_fair", &te::solve_proportional_fair,
          py::arg("problem"));

    py::enum_<te::Objective>(m, "Objective")
        .value("SUM", te::Objective::kSum)
        .value("PROPORTIONAL_FAIR", te::Objective::kProportionalFair);
    py::enum_<te::ForwardPolicy>(m, "ForwardPolicy")
        .value("FORWARD_ALL", te::ForwardPolicy::kForwardAll)
        .value("BUDGETED", te::ForwardPolicy::kBudgeted);

    py::class_<te::GainEdge>(m, "GainEdge")
        .def_readonly("a", &te::GainEdge::a)
        .def_readonly("b", &te::GainEdge::b)
        .def_readonly("weight", &te::GainEdge::weight)
        .def_readonly("sender", &te::GainEdge::sender)
        .def_readonly("allocation", &te::GainEdge::allocation);

    py::class_<te::GainGraph>(m, "GainGraph")
        .def(py::init<>())
        .def_readwrite("vertices", &te::GainGraph::vertices)
        .def_readwrite("edges", &te::GainGraph::edges);

    py::class_<te::MatchingResult>(m, "MatchingResult")
        .def_readonly("matched", &te::MatchingResult::matched)
        .def_readonly("unmatched", &te::MatchingResult::unmatched)
        .def_readonly("total_weight", &te::MatchingResult::total_weight);

    m.def("build_gain_graph", &te::build_gain_graph, py::arg("nodes"),
          py::arg("channel"), py::arg("objective"), py::arg("epsilon"));
    m.def("exact_mwm", &te::exact_mwm, py::arg("graph"));
    m.def("greedy_mwm", &te::greedy_mwm, py::arg("graph"));

    py::class_<te::ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("message_count", &te::ConvergenceReport::message_count)
        .def_readonly("rounds", &te::ConvergenceReport::rounds)
        .def_readonly("pairing", &te::ConvergenceReport::pairing)
        .def_readonly("pair_opt_calls", &te::ConvergenceReport::pair_opt_calls)
        .def_readonly("anomalies", &te::ConvergenceReport::anomalies);

    m.def(
        "run_negotiation",
        [](const std::vector<te::NodeConfig>& nodes,
           const te::ChannelModel& channel, te::Objective objective,
           double epsilon) {
            te::ControlBus bus;
            te::ConvergenceReport report =
                te::run_negotiation(nodes, channel, objective, epsilon, bus);
            return py::make_tuple(report, bus.trace());
        },
        py::arg("nodes"), py::arg("channel"), py::arg("objective"),
        py::arg("epsilon"),
        "Runs the distributed negotiation; returns (report, trace_log)");

    py::class_<te::SimReport::PerNode>(m, "SimPerNode")
        .def_readonly("id", &te::SimReport::PerNode::id)
        .def_readonly("analytic", &te::SimReport::PerNode::analytic)
        .def_readonly("mean", &te::SimReport::PerNode::mean)
        .def_readonly("variance", &te::SimReport::PerNode::variance)
        .def_readonly("stderr_mean", &te::SimReport::PerNode::stderr_mean);

    py::class_<te::SimReport>(m, "SimReport")
        .def_readonly("trials", &te::SimReport::trials)
        .def_readonly("policy", &te::SimReport::policy)
        .def_readonly("nodes", &te::SimReport::nodes);

    m.def("monte_carlo", &te::monte_carlo, py::arg("plan"), py::arg("nodes"),
          py::arg("channel"), py::arg("policy"), py::arg("trials"),
          py::arg("base_seed"));

    py::class_<te::Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("nodes", &te::Scenario::nodes)
        .def_readwrite("channel", &te::Scenario::channel)
        .def_readwrite("horizon_seconds", &te::Scenario::horizon_seconds)
        .def_readwrite("slot_seconds", &te::Scenario::slot_seconds)
        .def_readwrite("objective", &te::Scenario::objective)
        .def_readwrite("policy", &te::Scenario::policy)
        .def_readwrite("epsilon", &te::Scenario::epsilon)
        .def_readwrite("trials", &te::Scenario::trials)
        .def_readwrite("seed", &te::Scenario::seed);

    m.def("load_scenario",
          [](const std::string& path) { return te::load_scenario(path); },
          py::arg("path"));
    m.def("parse_scenario", &te::parse_scenario, py::arg("json_text"));
    m.def("serialize_scenario", &te::serialize_scenario, py::arg("scenario"));

    py::class_<te::NodeReport>(m, "NodeReport")
        .def_readonly("id", &te::NodeReport::id)
        .def_readonly("k_in", &te::NodeReport::k_in)
        .def_readonly("k_te", &te::NodeReport::k_te)
        .def_readonly("partner", &te::NodeReport::partner)
        .def_readonly("goodput_initial", &te::NodeReport::goodput_initial)
        .def_readonly("goodput_planned", &te::NodeReport::goodput_planned)
        .def_readonly("goodput_empirical_mean",
                      &te::NodeReport::goodput_empirical_mean)
        .def_readonly("goodput_empirical_stderr",
                      &te::NodeReport::goodput_empirical_stderr)
        .def_readonly("gain_pct", &te::NodeReport::gain_pct)
        .def_property_readonly("role", [](const te::NodeReport& n) {
            return te::to_string(n.role);
        });

    py::class_<te::ExperimentReport>(m, "ExperimentReport")
        .def_readonly("nodes", &te::ExperimentReport::nodes)
        .def_readonly("plan", &te::ExperimentReport::plan)
        .def_readonly("message_count", &te::ExperimentReport::message_count)
        .def_readonly("rounds", &te::ExperimentReport::rounds)
        .def_readonly("objective_initial",
                      &te::ExperimentReport::objective_initial)
        .def_readonly("objective_planned",
                      &te::ExperimentReport::objective_planned)
        .def_readonly("objective_empirical",
                      &te::ExperimentReport::objective_empirical)
        .def_readonly("trace", &te::ExperimentReport::trace);

    m.def("run_experiment", &te::run_experiment, py::arg("scenario"));
    m.def("report_to_csv", &te::report_to_csv, py::arg("report"));
    m.def("report_to_json", &te::report_to_json, py::arg("report"));
}
