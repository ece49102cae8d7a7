#include "chainctl/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace chainctl {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string fmt_list(const std::vector<double>& vs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) os << ", ";
        os << fmt(vs[i]);
    }
    return os.str();
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (trim(raw.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::runtime_error("parse: bad numeric value for '" + key + "'");
}

long parse_int(const std::string& raw, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(raw, &used);
        if (trim(raw.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::runtime_error("parse: bad integer value for '" + key + "'");
}

std::vector<double> parse_list(const std::string& raw, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw std::runtime_error("parse: bad numeric value for '" + key + "'");
        }
        out.push_back(parse_double(item, key));
    }
    if (out.empty()) {
        throw std::runtime_error("parse: bad numeric value for '" + key + "'");
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << content;
}

const char* kOrderingNote = "U = U1(t_1) U2(t_2) ... ; rightmost factor acts first";

}  // namespace

ChainSpec parse_spec(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("spec parse: expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (kv.count(key)) {
            throw std::runtime_error("spec parse: duplicate key '" + key + "'");
        }
        kv[key] = value;
    }
    for (const auto& [key, value] : kv) {
        if (key != "n" && key != "couplings" && key != "energies" && key != "actuator" &&
            key != "f_off" && key != "f_on") {
            throw std::runtime_error("spec parse: unknown key '" + key + "'");
        }
    }
    if (!kv.count("n")) throw std::runtime_error("spec parse: missing key 'n'");
    if (!kv.count("couplings")) throw std::runtime_error("spec parse: missing key 'couplings'");
    if (!kv.count("actuator")) throw std::runtime_error("spec parse: missing key 'actuator'");

    const int n = static_cast<int>(parse_int(kv["n"], "n"));
    std::vector<double> couplings = parse_list(kv["couplings"], "couplings");
    const int actuator = static_cast<int>(parse_int(kv["actuator"], "actuator"));
    const double f_off = kv.count("f_off") ? parse_double(kv["f_off"], "f_off") : 0.0;
    double f_on;
    if (kv.count("f_on")) {
        f_on = parse_double(kv["f_on"], "f_on");
    } else {
        if (actuator < 1 || actuator > static_cast<int>(couplings.size())) {
            throw std::runtime_error("spec parse: bad value for key 'actuator'");
        }
        f_on = default_f_on(actuator, couplings);
    }

    ChainSpec spec;
    if (kv.count("energies")) {
        spec.n = n;
        spec.couplings = std::move(couplings);
        spec.energies = parse_list(kv["energies"], "energies");
        spec.actuator = actuator;
        spec.f_off = f_off;
        spec.f_on = f_on;
    } else {
        spec = heisenberg_spec(n, std::move(couplings), actuator, f_off, f_on);
    }
    try {
        validate(spec);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("spec parse: ") + e.what());
    }
    return spec;
}

std::string serialize_spec(const ChainSpec& spec) {
    std::ostringstream os;
    os << "n = " << spec.n << "\n";
    os << "couplings = " << fmt_list(spec.couplings) << "\n";
    os << "energies = " << fmt_list(spec.energies) << "\n";
    os << "actuator = " << spec.actuator << "\n";
    os << "f_off = " << fmt(spec.f_off) << "\n";
    os << "f_on = " << fmt(spec.f_on) << "\n";
    return os.str();
}

ChainSpec load_spec(const std::string& path) { return parse_spec(slurp(path)); }

void save_spec(const ChainSpec& spec, const std::string& path) {
    spill(path, serialize_spec(spec));
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string spec_hash(const ChainSpec& spec) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(serialize_spec(spec));
    return os.str();
}

void save_sequence(const SwitchSequence& seq, const ChainSpec& spec, const std::string& path) {
    validate(seq);
    std::ostringstream os;
    os << "t_k\n";
    for (double t : seq.durations) os << fmt(t) << "\n";
    spill(path, os.str());

    json sidecar;
    sidecar["f_off"] = spec.f_off;
    sidecar["f_on"] = spec.f_on;
    sidecar["spec_hash"] = spec_hash(spec);
    sidecar["ordering"] = kOrderingNote;
    sidecar["k"] = seq.durations.size();
    spill(path + ".json", sidecar.dump(2) + "\n");
}

SwitchSequence load_sequence(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t_k") {
        throw std::runtime_error("sequence parse: expected header 't_k' in " + path);
    }
    SwitchSequence seq;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        seq.durations.push_back(parse_double(line, "t_k"));
    }
    validate(seq);
    return seq;
}

void save_result(const SynthesisResult& result, const ChainSpec& spec, const std::string& path) {
    json j;
    j["spec_hash"] = spec_hash(spec);
    j["target"] = result.target;
    j["durations"] = result.sequence.durations;
    j["error"] = result.error;
    j["frobenius_distance"] = result.frobenius_distance;
    j["evaluations"] = result.evaluations;
    j["restarts_used"] = result.restarts_used;
    j["seed"] = result.seed;
    j["restart_errors"] = result.restart_errors;
    spill(path, j.dump(2) + "\n");
}

SynthesisResult load_result(const std::string& path) {
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("result parse: " + std::string(e.what()));
    }
    SynthesisResult r;
    try {
        r.target = j.at("target").get<std::string>();
        r.sequence.durations = j.at("durations").get<std::vector<double>>();
        r.error = j.at("error").get<double>();
        r.frobenius_distance = j.at("frobenius_distance").get<double>();
        r.evaluations = j.at("evaluations").get<long>();
        r.restarts_used = j.at("restarts_used").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.restart_errors = j.at("restart_errors").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw std::runtime_error("result parse: " + std::string(e.what()));
    }
    return r;
}

void save_gate_table(const std::vector<GateColumn>& columns, const std::string& path) {
    if (columns.empty()) {
        throw std::invalid_argument("save_gate_table: no columns");
    }
    const std::size_t rows = columns.front().times.size();
    for (const auto& col : columns) {
        if (col.times.size() != rows) {
            throw std::invalid_argument("save_gate_table: ragged columns");
        }
    }
    std::ostringstream os;
    os << "row";
    for (const auto& col : columns) os << "," << col.gate;
    os << "\nerror";
    for (const auto& col : columns) os << "," << fmt(col.error);
    os << "\nduration";
    for (const auto& col : columns) os << "," << fmt(col.duration);
    os << "\n";
    for (std::size_t t = 0; t < rows; ++t) {
        os << "t_" << (t + 1);
        for (const auto& col : columns) os << "," << fmt(col.times[t]);
        os << "\n";
    }
    spill(path, os.str());
}

std::vector<GateColumn> load_gate_table(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        return cells;
    };
    if (!std::getline(in, line)) {
        throw std::runtime_error("gate table parse: empty file " + path);
    }
    const auto header = split(line);
    if (header.size() < 2 || header[0] != "row") {
        throw std::runtime_error("gate table parse: bad header in " + path);
    }
    std::vector<GateColumn> columns(header.size() - 1);
    for (std::size_t i = 1; i < header.size(); ++i) columns[i - 1].gate = header[i];

    int time_rows = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("gate table parse: row '" + cells.at(0) + "' has " +
                                     std::to_string(cells.size() - 1) + " cells, expected " +
                                     std::to_string(header.size() - 1));
        }
        const std::string& row = cells[0];
        for (std::size_t i = 1; i < cells.size(); ++i) {
            const double v = parse_double(cells[i], row);
            if (row == "error") {
                columns[i - 1].error = v;
            } else if (row == "duration") {
                columns[i - 1].duration = v;
            } else if (row.rfind("t_", 0) == 0) {
                columns[i - 1].times.push_back(v);
            } else {
                throw std::runtime_error("gate table parse: unknown row '" + row + "'");
            }
        }
        if (row.rfind("t_", 0) == 0) ++time_rows;
    }
    if (time_rows == 0) {
        throw std::runtime_error("gate table parse: no time rows in " + path);
    }
    return columns;
}

}  // namespace chainctl
