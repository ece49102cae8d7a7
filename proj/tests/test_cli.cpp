#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chainctl/commands.hpp"
#include "chainctl/gate_synth.hpp"
#include "chainctl/io.hpp"

using namespace chainctl;

namespace {

const std::string kDataDir = CHAINCTL_DATA_DIR;

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("chainctl_cli_" + name);
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = temp_path(name);
    std::ofstream out(path);
    out << content;
    return path.string();
}

struct Capture {
    std::ostringstream out, err;
};

}  // namespace

TEST_CASE("check on the bundled specs") {
    Capture io;
    cli::CheckArgs args;
    args.spec_path = kDataDir + "/specs/heis4_r1.spec";
    CHECK(cli::cmd_check(args, io.out, io.err) == cli::kExitOk);
    CHECK(io.out.str().find("controllable:      yes") != std::string::npos);
    CHECK(io.out.str().find("closure dimension: 15") != std::string::npos);

    Capture io2;
    args.spec_path = kDataDir + "/specs/heis4_r2.spec";
    CHECK(cli::cmd_check(args, io2.out, io2.err) == cli::kExitVerdict);
    CHECK(io2.out.str().find("controllable:      no") != std::string::npos);
}

TEST_CASE("check handles bad input files") {
    Capture io;
    cli::CheckArgs args;
    args.spec_path = write_temp("bad.spec", "n = 4\ncouplings = 1, oops\nactuator = 1\n");
    CHECK(cli::cmd_check(args, io.out, io.err) == cli::kExitUsage);
    CHECK(io.err.str().find("couplings") != std::string::npos);

    Capture io2;
    args.spec_path = "/nonexistent/path.spec";
    CHECK(cli::cmd_check(args, io2.out, io2.err) == cli::kExitUsage);
}

TEST_CASE("check writes a JSON report") {
    const auto report = temp_path("check.json");
    Capture io;
    cli::CheckArgs args;
    args.spec_path = kDataDir + "/specs/heis4_r1.spec";
    args.out_path = report.string();
    args.json_stdout = true;
    CHECK(cli::cmd_check(args, io.out, io.err) == cli::kExitOk);
    CHECK(io.out.str().find("\"closure_dimension\": 15") != std::string::npos);
    std::ifstream in(report);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.find("\"controllable\": true") != std::string::npos);
    std::filesystem::remove(report);
}

TEST_CASE("prooftrace exit codes") {
    Capture io;
    cli::ProoftraceArgs args;
    args.spec_path = kDataDir + "/specs/heis4_r1.spec";
    CHECK(cli::cmd_prooftrace(args, io.out, io.err) == cli::kExitOk);

    Capture io2;
    args.spec_path = kDataDir + "/specs/heis4_r2.spec";
    CHECK(cli::cmd_prooftrace(args, io2.out, io2.err) == cli::kExitVerdict);
    CHECK(io2.err.str().find("omega_r = 0") != std::string::npos);

    Capture io3;
    args.spec_path = write_temp("n3.spec", "n = 3\ncouplings = 1, 2\nactuator = 1\n");
    CHECK(cli::cmd_prooftrace(args, io3.out, io3.err) == cli::kExitVerdict);
}

TEST_CASE("prooftrace report lists residuals per identity") {
    const auto report = temp_path("trace.json");
    Capture io;
    cli::ProoftraceArgs args;
    args.spec_path = kDataDir + "/specs/heis4_r1.spec";
    args.out_path = report.string();
    CHECK(cli::cmd_prooftrace(args, io.out, io.err) == cli::kExitOk);
    std::ifstream in(report);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.find("\"X0\"") != std::string::npos);
    CHECK(content.find("\"closure_dimension\": 15") != std::string::npos);
    CHECK(content.find("\"sign_conventions\"") != std::string::npos);
    std::filesystem::remove(report);
}

TEST_CASE("synth writes results and sequences that verify") {
    const auto result = temp_path("synth.json");
    const auto sequence = temp_path("synth.csv");
    Capture io;
    cli::SynthArgs args;
    args.spec_path = kDataDir + "/specs/heis4_r1.spec";
    args.gate = "II";
    args.k_switches = 4;
    args.restarts = 6;
    args.max_evaluations = 600;
    args.seed = 9;
    args.target_error = 1e-4;
    args.out_path = result.string();
    const int code = cli::cmd_synth(args, io.out, io.err);
    CHECK((code == cli::kExitOk || code == cli::kExitUnreached));
    REQUIRE(std::filesystem::exists(result));
    REQUIRE(std::filesystem::exists(sequence));

    // CSV export -> import -> propagate reproduces the result file's error
    const SynthesisResult res = load_result(result.string());
    const SwitchSequence seq = load_sequence(sequence.string());
    const ChainSpec spec = load_spec(args.spec_path);
    const double err = verify_sequence(spec, seq, build_target("II"));
    CHECK(std::abs(err - res.error) <= 1e-12);

    Capture vio;
    cli::VerifyArgs vargs;
    vargs.spec_path = args.spec_path;
    vargs.sequence_path = sequence.string();
    vargs.gate = "II";
    vargs.target_error = 1.0;  // informational pass
    CHECK(cli::cmd_verify(vargs, vio.out, vio.err) == cli::kExitOk);

    std::filesystem::remove(result);
    std::filesystem::remove(sequence);
    std::filesystem::remove(sequence.string() + ".json");
}

TEST_CASE("synth rejects unknown gates and bad budgets") {
    Capture io;
    cli::SynthArgs args;
    args.spec_path = kDataDir + "/specs/heis4_r1.spec";
    args.gate = "TOFFOLI";
    args.out_path = temp_path("never.json").string();
    CHECK(cli::cmd_synth(args, io.out, io.err) == cli::kExitUsage);

    Capture io2;
    args.gate = "II";
    args.restarts = 0;
    CHECK(cli::cmd_synth(args, io2.out, io2.err) == cli::kExitUsage);
}

TEST_CASE("table1 validate and replay") {
    Capture io;
    cli::Table1Args args;
    args.action = "validate";
    args.data_path = kDataDir + "/table1.csv";
    CHECK(cli::cmd_table1(args, io.out, io.err) == cli::kExitOk);
    CHECK(io.out.str().find("checksum:          ok") != std::string::npos);

    Capture io2;
    args.action = "replay";
    CHECK(cli::cmd_table1(args, io2.out, io2.err) == cli::kExitOk);
    CHECK(io2.out.str().find("achieved error") != std::string::npos);

    Capture io3;
    args.action = "mangle";
    CHECK(cli::cmd_table1(args, io3.out, io3.err) == cli::kExitUsage);

    Capture io4;
    args.action = "validate";
    args.data_path = "/nonexistent/table.csv";
    CHECK(cli::cmd_table1(args, io4.out, io4.err) == cli::kExitUsage);
}

TEST_CASE("plot renders both report kinds and rejects junk") {
    // synthesis result scatter
    const auto result = temp_path("plot_result.json");
    {
        const ChainSpec spec = load_spec(kDataDir + "/specs/heis4_r1.spec");
        SynthesisResult res;
        res.sequence.durations = {1.0, 2.0};
        res.error = 1e-3;
        res.target = "II";
        res.restart_errors = {0.9, 0.5, 1e-3};
        save_result(res, spec, result.string());
    }
    const auto svg1 = temp_path("plot_result.svg");
    Capture io;
    cli::PlotArgs args{result.string(), svg1.string()};
    CHECK(cli::cmd_plot(args, io.out, io.err) == cli::kExitOk);
    CHECK(std::filesystem::file_size(svg1) > 0);

    // proof-trace residual bars
    const auto trace = temp_path("plot_trace.json");
    {
        Capture tio;
        cli::ProoftraceArgs targs;
        targs.spec_path = kDataDir + "/specs/heis4_r1.spec";
        targs.out_path = trace.string();
        REQUIRE(cli::cmd_prooftrace(targs, tio.out, tio.err) == cli::kExitOk);
    }
    const auto svg2 = temp_path("plot_trace.svg");
    Capture io2;
    cli::PlotArgs args2{trace.string(), svg2.string()};
    CHECK(cli::cmd_plot(args2, io2.out, io2.err) == cli::kExitOk);
    CHECK(std::filesystem::file_size(svg2) > 0);

    // empty input
    const auto empty = write_temp("empty.json", "");
    Capture io3;
    cli::PlotArgs args3{empty, temp_path("nope.svg").string()};
    CHECK(cli::cmd_plot(args3, io3.out, io3.err) == cli::kExitUsage);

    for (const auto& p : {result, svg1, trace, svg2}) std::filesystem::remove(p);
}
