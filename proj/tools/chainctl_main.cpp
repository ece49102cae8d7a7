#include <CLI11.hpp>

#include <iostream>

#include "chainctl/commands.hpp"

using namespace chainctl;

int main(int argc, char** argv) {
    CLI::App app{"chainctl: controllability analysis and binary-switch gate synthesis "
                 "for chain-coupled systems with a single local actuator"};
    app.require_subcommand(1);

    cli::CheckArgs check_args;
    auto* check = app.add_subcommand(
        "check", "Decide controllability of a chain spec (exit 0 controllable, 2 not)");
    check->add_option("--spec", check_args.spec_path, "chain spec file")->required();
    check->add_option("--out", check_args.out_path, "write JSON report here");
    check->add_option("--tol", check_args.tol, "closure residual tolerance");
    check->add_flag("--json", check_args.json_stdout, "print the JSON report to stdout");

    cli::ProoftraceArgs trace_args;
    auto* trace = app.add_subcommand(
        "prooftrace", "Run the controllability-proof recurrences and report residuals");
    trace->add_option("--spec", trace_args.spec_path, "chain spec file")->required();
    trace->add_option("--out", trace_args.out_path, "write JSON report here");
    trace->add_flag("--json", trace_args.json_stdout, "print the JSON report to stdout");

    cli::SynthArgs synth_args;
    auto* synth = app.add_subcommand(
        "synth", "Synthesize a switching sequence for a target gate (exit 3 if the "
                 "target error is unreached)");
    synth->add_option("--spec", synth_args.spec_path, "chain spec file")->required();
    synth->add_option("--gate", synth_args.gate, "II, HadI, TI, IHad, IT, CNOT, or all")
        ->required();
    synth->add_option("--k", synth_args.k_switches, "number of switching times");
    synth->add_option("--restarts", synth_args.restarts, "independent simplex restarts");
    synth->add_option("--max-evals", synth_args.max_evaluations, "objective budget per restart");
    synth->add_option("--seed", synth_args.seed, "master seed");
    synth->add_option("--target-error", synth_args.target_error, "stop once reached");
    synth->add_option("--out", synth_args.out_path, "JSON result path (CSV lands beside it)")
        ->required();
    synth->add_flag("--json", synth_args.json_stdout, "print the JSON result to stdout");

    cli::VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Re-evaluate a sequence CSV against a gate");
    verify->add_option("--spec", verify_args.spec_path, "chain spec file")->required();
    verify->add_option("--seq", verify_args.sequence_path, "sequence CSV")->required();
    verify->add_option("--gate", verify_args.gate, "target gate name")->required();
    verify->add_option("--target-error", verify_args.target_error, "pass threshold");
    verify->add_option("--out", verify_args.out_path, "write JSON report here");
    verify->add_flag("--json", verify_args.json_stdout, "print the JSON report to stdout");

    cli::Table1Args table_args;
    auto* table = app.add_subcommand("table1", "Validate or replay the bundled reference table");
    table->add_option("action", table_args.action, "validate or replay")->required();
    table->add_option("--data", table_args.data_path, "table CSV path");
    table->add_option("--coupling", table_args.coupling, "uniform coupling for replay");
    table->add_option("--f-off", table_args.f_off, "switch-off level for replay");
    table->add_option("--f-on", table_args.f_on, "switch-on level for replay");
    table->add_option("--out", table_args.out_path, "write JSON report here");
    table->add_flag("--json", table_args.json_stdout, "print the JSON report to stdout");

    cli::PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "Render a result or report JSON as a static SVG");
    plot->add_option("--in", plot_args.input_path, "synthesis result or proof-trace report")
        ->required();
    plot->add_option("--out", plot_args.out_path, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitUsage;
    }

    if (check->parsed()) return cli::cmd_check(check_args, std::cout, std::cerr);
    if (trace->parsed()) return cli::cmd_prooftrace(trace_args, std::cout, std::cerr);
    if (synth->parsed()) return cli::cmd_synth(synth_args, std::cout, std::cerr);
    if (verify->parsed()) return cli::cmd_verify(verify_args, std::cout, std::cerr);
    if (table->parsed()) return cli::cmd_table1(table_args, std::cout, std::cerr);
    if (plot->parsed()) return cli::cmd_plot(plot_args, std::cout, std::cerr);
    return cli::kExitUsage;
}
