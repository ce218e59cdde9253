// te_sim: time-exchange cooperative forwarding experiments from scenario
// files. `run` executes the full pipeline (negotiation, slot exchange,
// packet-level simulation) and writes a CSV or JSON report; `validate`
// checks a scenario file and exits.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "texchange/experiment.hpp"
#include "texchange/scenario.hpp"

namespace {

struct RunOptions {
    std::string scenario_path;
    std::string objective;
    std::string policy;
    int trials = -1;
    std::int64_t seed = -1;
    double epsilon = -1.0;
    std::string output_path;
    std::string format = "csv";
    std::string trace_path;
};

int do_run(const RunOptions& opt) {
    te::Scenario scenario = te::load_scenario(opt.scenario_path);
    if (!opt.objective.empty()) {
        scenario.objective = te::objective_from_string(opt.objective);
    }
    if (!opt.policy.empty()) {
        scenario.policy = te::policy_from_string(opt.policy);
    }
    if (opt.trials >= 0) scenario.trials = opt.trials;
    if (opt.seed >= 0) scenario.seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.epsilon >= 0.0) scenario.epsilon = opt.epsilon;
    te::validate_scenario(scenario);

    const te::ExperimentReport report = te::run_experiment(scenario);

    const te::ReportFormat format = opt.format == "json"
                                        ? te::ReportFormat::kJson
                                        : te::ReportFormat::kCsv;
    if (opt.output_path.empty()) {
        std::cout << (format == te::ReportFormat::kCsv
                          ? te::report_to_csv(report)
                          : te::report_to_json(report));
    } else {
        te::emit_report(report, format, opt.output_path);
    }
    if (!opt.trace_path.empty()) {
        std::ofstream trace(opt.trace_path, std::ios::binary);
        if (!trace) {
            throw std::runtime_error("cannot open trace file '" +
                                     opt.trace_path + "'");
        }
        trace << report.trace;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-exchange cooperative forwarding simulator"};
    app.require_subcommand(1);

    RunOptions opt;
    CLI::App* run = app.add_subcommand(
        "run", "Run an experiment and emit the goodput report");
    run->add_option("-s,--scenario", opt.scenario_path, "Scenario JSON file")
        ->required();
    run->add_option("--objective", opt.objective,
                    "Override the objective: sum | proportional_fair")
        ->check(CLI::IsMember({"sum", "proportional_fair"}));
    run->add_option("--policy", opt.policy,
                    "Override the forwarding policy: forward_all | budgeted")
        ->check(CLI::IsMember({"forward_all", "budgeted"}));
    run->add_option("--trials", opt.trials,
                    "Override the Monte Carlo trial count");
    run->add_option("--seed", opt.seed, "Override the simulation seed");
    run->add_option("--epsilon", opt.epsilon,
                    "Override the bound-gap tolerance (expected packets)");
    run->add_option("-o,--output", opt.output_path,
                    "Report file (stdout when omitted)");
    run->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    run->add_option("--trace", opt.trace_path,
                    "Write the control-plane trace log to this file");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand(
        "validate", "Check a scenario file and report its shape");
    validate->add_option("-s,--scenario", validate_path, "Scenario JSON file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(opt);
        if (validate->parsed()) {
            const te::Scenario scenario = te::load_scenario(validate_path);
            std::cout << "scenario OK: " << scenario.nodes.size()
                      << " nodes, " << scenario.channel.links().size()
                      << " links, " << scenario.total_slots()
                      << " slots per horizon\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
