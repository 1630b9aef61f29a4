// Command-line front end: single-matrix analysis, model instantiation,
// parameter sweeps and the built-in selftest.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nh/analysis.hpp"
#include "nh/selftest.hpp"
#include "nh/sweep.hpp"

namespace {

using nh::Error;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotScalarD = 2;
constexpr int kExitParse = 3;

struct CommonFlags {
    std::string out;
    std::string format;
    double ep_tol = 1e-9;
    double oracle_tol = 1e-8;
    bool expected = false;
    bool degrees = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, const std::string& default_format) {
    flags.format = default_format;
    cmd->add_option("--out", flags.out, "write output to this file instead of stdout");
    cmd->add_option("--format", flags.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--ep-tol", flags.ep_tol, "exceptional-point tolerance on min(f, 1-f)");
    cmd->add_option("--oracle-tol", flags.oracle_tol, "eigenvalue multiset tolerance");
    cmd->add_flag("--expected", flags.expected, "include closed-form comparison values");
    cmd->add_flag("--degrees", flags.degrees, "interpret angle parameters in degrees on input");
}

nh::Tolerances to_tolerances(const CommonFlags& f) {
    nh::Tolerances t;
    t.ep = f.ep_tol;
    t.oracle = f.oracle_tol;
    return t;
}

void emit(const CommonFlags& flags, const std::string& text) {
    if (flags.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(flags.out, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + flags.out);
    out << text;
}

const nh::ModelSpec& find_spec(const std::string& name) {
    for (const auto& spec : nh::model_registry())
        if (spec.name == name) return spec;
    throw nh::UnknownModel("unknown model: " + name +
                           " (run with --help to list available models)");
}

bool param_is_angle(const nh::ModelSpec& spec, const std::string& key) {
    for (const auto& p : spec.params)
        if (p.name == key) return p.is_angle;
    return false;
}

// parse trailing "--name value" pairs into model parameters
std::map<std::string, double> parse_param_args(const std::vector<std::string>& extras,
                                               const nh::ModelSpec& spec, bool degrees) {
    std::map<std::string, double> params;
    for (size_t i = 0; i < extras.size(); ++i) {
        std::string key = extras[i];
        if (key.rfind("--", 0) != 0)
            throw nh::ParseError("expected --param, got '" + key + "'");
        key = key.substr(2);
        for (auto& ch : key)
            if (ch == '-') ch = '_';
        if (i + 1 >= extras.size()) throw nh::ParseError("missing value for --" + key);
        double value;
        try {
            size_t used = 0;
            value = std::stod(extras[++i], &used);
            if (used != extras[i].size()) throw std::invalid_argument("trailing garbage");
        } catch (const std::exception&) {
            throw nh::ParseError("parameter --" + key + " needs a numeric value, got '" +
                                 extras[i] + "'");
        }
        if (degrees && param_is_angle(spec, key)) value *= nh::kPi / 180.0;
        params[key] = value;
    }
    return params;
}

std::string model_help() {
    std::ostringstream os;
    os << "models:";
    for (const auto& spec : nh::model_registry()) {
        os << "\n  " << spec.name << " (";
        bool first = true;
        for (const auto& p : spec.params) {
            if (!first) os << ", ";
            first = false;
            os << p.name;
            if (!p.required) os << "?";
        }
        os << ")";
    }
    return os.str();
}

nh::GridAxis parse_grid_spec(const std::string& text) {
    // param=start:stop:count
    const size_t eq = text.find('=');
    if (eq == std::string::npos) throw nh::ParseError("grid spec must be param=start:stop:count");
    nh::GridAxis ax;
    ax.param = text.substr(0, eq);
    for (auto& ch : ax.param)
        if (ch == '-') ch = '_';
    std::string rest = text.substr(eq + 1);
    std::replace(rest.begin(), rest.end(), ':', ' ');
    std::istringstream is(rest);
    if (!(is >> ax.start >> ax.stop >> ax.count) || ax.count < 1)
        throw nh::ParseError("bad grid spec '" + text + "'");
    return ax;
}

std::string sweep_to_json(const nh::SweepResult& res) {
    nlohmann::ordered_json j;
    j["version"] = nh::kReportSchemaVersion;
    {
        std::istringstream header(res.header_line());
        nlohmann::ordered_json cols = nlohmann::ordered_json::array();
        std::string col;
        while (std::getline(header, col, ',')) cols.push_back(col);
        j["columns"] = cols;
    }
    // reuse the csv row cells so both formats agree field by field
    std::istringstream csv(res.to_csv());
    std::string line;
    std::getline(csv, line);  // header
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    while (std::getline(csv, line)) {
        if (!line.empty() && line[0] == '#') break;
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    j["rows"] = rows;
    nlohmann::ordered_json foot = nlohmann::ordered_json::array();
    for (const auto& f : res.footer) foot.push_back(f);
    j["footer"] = foot;
    return j.dump(2);
}

int run(int argc, char** argv) {
    CLI::App app{"non-Hermitian Hamiltonian spectral analysis"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "analyze a matrix file (JSON schema: "
                                                  "{\"dim\": N, \"entries\": [[[re,im],...],...]})");
    std::string matrix_path;
    analyze->add_option("file", matrix_path, "input matrix file")->required();
    CommonFlags aflags;
    add_common(analyze, aflags, "json");

    // model
    auto* model = app.add_subcommand("model", "instantiate and analyze a named model\n" +
                                                  model_help());
    std::string model_name;
    model->add_option("name", model_name, "model name")->required();
    CommonFlags mflags;
    add_common(model, mflags, "json");
    model->allow_extras();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "evaluate a model over a parameter grid");
    std::string sweep_name;
    std::vector<std::string> grid_specs;
    bool serial = false;
    sweep->add_option("name", sweep_name, "model name")->required();
    sweep->add_option("--grid", grid_specs, "axis spec param=start:stop:count (repeatable)")
        ->required();
    sweep->add_flag("--serial", serial, "run the serial reference instead of the parallel path");
    CommonFlags sflags;
    add_common(sweep, sflags, "csv");
    sweep->allow_extras();

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
    std::uint64_t seed = nh::kDefaultSelftestSeed;
    bool seed_given = false;
    selftest->add_option("--seed", seed, "RNG seed (NH_BYPASS_SEED overrides the default)")
        ->each([&](const std::string&) { seed_given = true; });
    CommonFlags tflags;
    selftest->add_option("--out", tflags.out, "write output to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        std::ifstream in(matrix_path);
        if (!in) {
            std::cerr << "error: cannot open " << matrix_path << "\n";
            return kExitParse;
        }
        const nh::ComplexMatrix m = nh::parse_matrix_json(in);
        const nh::AnalysisReport rep = nh::analyze_matrix(m, to_tolerances(aflags));
        emit(aflags, aflags.format == "csv" ? nh::report_to_csv(rep) : nh::report_to_json(rep));
        return kExitOk;
    }

    if (model->parsed()) {
        const nh::ModelSpec& spec = find_spec(model_name);
        std::vector<std::string> extras = model->remaining();
        const auto params = parse_param_args(extras, spec, mflags.degrees);
        const nh::ModelInstance mi = nh::build_model(model_name, params);
        const nh::AnalysisReport rep =
            nh::analyze_model(mi, to_tolerances(mflags), mflags.expected);
        emit(mflags, mflags.format == "csv" ? nh::report_to_csv(rep) : nh::report_to_json(rep));
        return kExitOk;
    }

    if (sweep->parsed()) {
        const nh::ModelSpec& spec = find_spec(sweep_name);
        nh::SweepConfig cfg;
        cfg.model = sweep_name;
        cfg.tolerances = to_tolerances(sflags);
        cfg.with_expected = sflags.expected;
        cfg.parallel = !serial;
        for (const auto& g : grid_specs) {
            nh::GridAxis ax = parse_grid_spec(g);
            if (sflags.degrees && param_is_angle(spec, ax.param)) {
                ax.start *= nh::kPi / 180.0;
                ax.stop *= nh::kPi / 180.0;
            }
            cfg.axes.push_back(ax);
        }
        cfg.fixed = parse_param_args(sweep->remaining(), spec, sflags.degrees);
        const nh::SweepResult res = nh::run_sweep(cfg);
        emit(sflags, sflags.format == "json" ? sweep_to_json(res) : res.to_csv());
        return kExitOk;
    }

    if (selftest->parsed()) {
        if (!seed_given) {
            if (const char* env = std::getenv("NH_BYPASS_SEED")) {
                try {
                    seed = std::stoull(env);
                } catch (const std::exception&) {
                    std::cerr << "error: NH_BYPASS_SEED must be an integer\n";
                    return kExitParse;
                }
            }
        }
        std::ostringstream os;
        const nh::SelftestSummary sum = nh::run_selftest(seed, os);
        emit(tflags, os.str());
        return sum.ok() ? kExitOk : kExitError;
    }
    return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nh::NotScalarD& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotScalarD;
    } catch (const nh::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitError;
    }
}
