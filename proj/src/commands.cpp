#include "chainctl/commands.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <numeric>

#include "chainctl/gate_synth.hpp"
#include "chainctl/io.hpp"
#include "chainctl/proof_trace.hpp"
#include "chainctl/svg_plot.hpp"
#include "chainctl/table1.hpp"

namespace chainctl::cli {

namespace {

using nlohmann::json;

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << j.dump(2) << "\n";
}

std::string sibling_path(const std::string& path, const std::string& new_ext) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + new_ext;
    }
    return path.substr(0, dot) + new_ext;
}

// top level maps identity name -> residual; metadata lives under reserved keys
json prooftrace_json(const ProofTraceReport& report, int closure_dim, bool controllable) {
    json j;
    for (const auto& id : report.identities) j[id.name] = id.residual;
    json signs;
    for (const auto& id : report.identities) signs[id.name] = id.sign;
    j["sign_conventions"] = std::move(signs);
    j["notes"] = report.notes;
    j["theorem"] = report.theorem;
    j["max_residual"] = report.max_residual();
    j["closure_dimension"] = closure_dim;
    j["controllable"] = controllable;
    return j;
}

ChainSpec load_spec_or_fail(const std::string& path) {
    if (path.empty()) {
        throw std::runtime_error("missing --spec");
    }
    return load_spec(path);
}

}  // namespace

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
    ChainSpec spec;
    try {
        spec = load_spec_or_fail(args.spec_path);
    } catch (const std::exception& e) {
        err << "check: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        const bool connected = is_connected(spec);
        const bool thm1 = thm1_condition(spec);
        const auto thm2 = thm2_condition(spec);
        const int dim = closure_dimension(spec, args.tol);
        const bool controllable = dim == spec.n * spec.n - 1;

        json j;
        j["spec_hash"] = spec_hash(spec);
        j["n"] = spec.n;
        j["actuator"] = spec.actuator;
        j["connected"] = connected;
        j["thm1_condition"] = thm1;
        if (thm2.has_value()) {
            j["thm2_k"] = *thm2;
        } else {
            j["thm2_k"] = nullptr;
        }
        j["closure_dimension"] = dim;
        j["su_dimension"] = spec.n * spec.n - 1;
        j["controllable"] = controllable;

        if (!args.out_path.empty()) write_json(j, args.out_path);
        if (args.json_stdout) {
            out << j.dump(2) << "\n";
        } else {
            out << "connected:         " << (connected ? "yes" : "no") << "\n";
            out << "thm1 condition:    " << (thm1 ? "holds" : "fails") << "\n";
            out << "thm2 condition:    "
                << (thm2.has_value() ? "holds (k = " + std::to_string(*thm2) + ")" : "fails")
                << "\n";
            out << "closure dimension: " << dim << " of " << spec.n * spec.n - 1 << "\n";
            out << "controllable:      " << (controllable ? "yes" : "no") << "\n";
        }
        return controllable ? kExitOk : kExitVerdict;
    } catch (const std::exception& e) {
        err << "check: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_prooftrace(const ProoftraceArgs& args, std::ostream& out, std::ostream& err) {
    ChainSpec spec;
    try {
        spec = load_spec_or_fail(args.spec_path);
    } catch (const std::exception& e) {
        err << "prooftrace: " << e.what() << "\n";
        return kExitUsage;
    }
    ProofTraceReport report;
    try {
        report = thm1_condition(spec) ? proof_trace_thm1(spec) : proof_trace_thm2(spec);
    } catch (const std::invalid_argument& e) {
        err << "prooftrace: " << e.what() << "\n";
        return kExitVerdict;
    } catch (const std::exception& e) {
        err << "prooftrace: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        const int dim = closure_dimension(spec);
        const bool controllable = dim == spec.n * spec.n - 1;
        const json j = prooftrace_json(report, dim, controllable);
        if (!args.out_path.empty()) write_json(j, args.out_path);
        if (args.json_stdout) {
            out << j.dump(2) << "\n";
        } else {
            out << report.theorem << " trace: " << report.identities.size() << " identities, max residual "
                << std::scientific << std::setprecision(3) << report.max_residual() << "\n";
            for (const auto& note : report.notes) out << "note: " << note << "\n";
        }
        return report.all_within(kProofResidualTol) ? kExitOk : kExitVerdict;
    } catch (const std::exception& e) {
        err << "prooftrace: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
    ChainSpec spec;
    try {
        spec = load_spec_or_fail(args.spec_path);
        if (args.out_path.empty()) {
            throw std::runtime_error("missing --out");
        }
        if (args.restarts < 1) {
            throw std::runtime_error("restarts must be >= 1");
        }
        if (args.k_switches < 1) {
            throw std::runtime_error("k must be >= 1");
        }
    } catch (const std::exception& e) {
        err << "synth: " << e.what() << "\n";
        return kExitUsage;
    }

    SynthesisOptions opts;
    opts.k_switches = args.k_switches;
    opts.restarts = args.restarts;
    opts.max_evaluations = args.max_evaluations;
    opts.seed = args.seed;
    opts.target_error = args.target_error;

    try {
        std::vector<std::string> gates;
        if (args.gate == "all") {
            gates = gate_names();
        } else {
            gates.push_back(args.gate);
        }

        std::vector<GateColumn> columns;
        json results = json::array();
        double worst = 0.0;
        for (const auto& name : gates) {
            const GateTarget target = build_target(name);  // throws on unknown gate
            const SynthesisResult result = synthesize_gate(spec, target, opts);
            worst = std::max(worst, result.error);
            const double duration = std::accumulate(result.sequence.durations.begin(),
                                                    result.sequence.durations.end(), 0.0);
            out << name << ": error " << std::scientific << std::setprecision(6) << result.error
                << ", duration " << std::fixed << std::setprecision(4) << duration << ", "
                << result.evaluations << " evaluations\n";
            columns.push_back(GateColumn{name, result.error, duration, result.sequence.durations});

            if (gates.size() == 1) {
                save_result(result, spec, args.out_path);
                save_sequence(result.sequence, spec, sibling_path(args.out_path, ".csv"));
            } else {
                json jr;
                jr["target"] = result.target;
                jr["error"] = result.error;
                jr["frobenius_distance"] = result.frobenius_distance;
                jr["duration"] = duration;
                jr["durations"] = result.sequence.durations;
                jr["evaluations"] = result.evaluations;
                jr["restarts_used"] = result.restarts_used;
                jr["restart_errors"] = result.restart_errors;
                results.push_back(std::move(jr));
            }
        }
        if (gates.size() > 1) {
            json j;
            j["spec_hash"] = spec_hash(spec);
            j["seed"] = args.seed;
            j["results"] = std::move(results);
            write_json(j, args.out_path);
            save_gate_table(columns, sibling_path(args.out_path, ".csv"));
        }
        return worst <= args.target_error ? kExitOk : kExitUnreached;
    } catch (const std::invalid_argument& e) {
        err << "synth: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "synth: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const ChainSpec spec = load_spec_or_fail(args.spec_path);
        const SwitchSequence seq = load_sequence(args.sequence_path);
        const GateTarget target = build_target(args.gate);
        const double error = verify_sequence(spec, seq, target);
        const auto [h1, h2] = switch_hamiltonians(spec);
        const double dist = frobenius_phase_distance(propagate(seq, h1, h2), target.matrix);
        const double duration =
            std::accumulate(seq.durations.begin(), seq.durations.end(), 0.0);

        json j;
        j["spec_hash"] = spec_hash(spec);
        j["target"] = target.name;
        j["error"] = error;
        j["frobenius_distance"] = dist;
        j["duration"] = duration;
        if (!args.out_path.empty()) write_json(j, args.out_path);
        if (args.json_stdout) {
            out << j.dump(2) << "\n";
        } else {
            out << "gate error " << std::scientific << std::setprecision(6) << error
                << ", frobenius distance " << dist << ", duration " << std::fixed
                << std::setprecision(4) << duration << "\n";
        }
        return error <= args.target_error ? kExitOk : kExitUnreached;
    } catch (const std::exception& e) {
        err << "verify: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_table1(const Table1Args& args, std::ostream& out, std::ostream& err) {
    Table1Dataset dataset;
    try {
        dataset = load_table1(args.data_path);
    } catch (const std::exception& e) {
        err << "table1: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (args.action == "validate") {
            const Table1Validation v = validate_table1(dataset);
            json j;
            j["checksum_ok"] = v.checksum_ok;
            j["shape_ok"] = v.shape_ok;
            j["max_sum_mismatch"] = v.max_sum_mismatch;
            j["max_error"] = v.max_error;
            j["ok"] = v.ok;
            if (!args.out_path.empty()) write_json(j, args.out_path);
            if (args.json_stdout) {
                out << j.dump(2) << "\n";
            } else {
                out << "checksum:          " << (v.checksum_ok ? "ok" : "MISMATCH") << "\n";
                out << "shape:             " << (v.shape_ok ? "ok" : "BAD") << "\n";
                out << "max sum mismatch:  " << std::scientific << std::setprecision(3)
                    << v.max_sum_mismatch << " (tolerance " << kTable1SumTol << ")\n";
                out << "max quoted error:  " << v.max_error << " (bound " << kTable1MaxError
                    << ")\n";
            }
            return v.ok ? kExitOk : kExitUsage;
        }
        if (args.action == "replay") {
            const auto errors = replay_table1(dataset, args.coupling, args.f_off, args.f_on);
            json j;
            j["coupling"] = args.coupling;
            j["f_off"] = args.f_off;
            j["f_on"] = args.f_on;
            json per_gate;
            for (std::size_t i = 0; i < errors.size(); ++i) {
                per_gate[dataset.columns[i].gate] = errors[i];
            }
            j["achieved_errors"] = std::move(per_gate);
            if (!args.out_path.empty()) write_json(j, args.out_path);
            if (args.json_stdout) {
                out << j.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < errors.size(); ++i) {
                    out << dataset.columns[i].gate << ": achieved error " << std::scientific
                        << std::setprecision(6) << errors[i] << " (published "
                        << dataset.columns[i].error << ")\n";
                }
            }
            return kExitOk;  // informational mode
        }
        err << "table1: unknown action '" << args.action << "' (use validate or replay)\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "table1: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err) {
    try {
        std::ifstream in(args.input_path);
        if (!in) {
            throw std::runtime_error("cannot open file: " + args.input_path);
        }
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error&) {
            throw std::runtime_error("unknown file schema: " + args.input_path);
        }

        if (j.contains("restart_errors")) {
            const auto errors = j.at("restart_errors").get<std::vector<double>>();
            const std::string gate = j.value("target", "gate");
            write_restart_scatter_svg(args.out_path, errors,
                                      "synthesis restarts: " + gate);
        } else if (j.contains("max_residual") && j.contains("closure_dimension")) {
            std::vector<std::pair<std::string, double>> residuals;
            for (const auto& [key, value] : j.items()) {
                if (key == "max_residual" || key == "closure_dimension" ||
                    key == "sign_conventions" || key == "notes" || key == "theorem" ||
                    key == "controllable") {
                    continue;
                }
                if (value.is_number()) residuals.emplace_back(key, value.get<double>());
            }
            const std::string theorem = j.value("theorem", "proof");
            write_residual_bars_svg(args.out_path, residuals, theorem + " trace residuals");
        } else {
            throw std::runtime_error("unknown file schema: " + args.input_path);
        }
        out << "wrote " << args.out_path << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "plot: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace chainctl::cli
