#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dstore/algorithms.hpp"
#include "dstore/bounds.hpp"
#include "dstore/harness.hpp"
#include "dstore/model.hpp"

using namespace dstore;

namespace {

// Flags shared by the scenario-driven subcommands; unset flags leave the
// config file (or the defaults) alone.
struct ScenarioFlags {
    std::string config;
    std::vector<std::string> sets;
    std::optional<std::string> algorithm, driver, out, tau, d_bits, l_cap, readers, seed, depth, states, solo_budget,
        horizon;
    bool json = false;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "scenario file with key = value lines");
        app->add_option("--algorithm", algorithm, "one of: " + names());
        app->add_option("--tau", tau);
        app->add_option("--d-bits", d_bits);
        app->add_option("--l-cap", l_cap);
        app->add_option("--readers", readers);
        app->add_option("--out", out, "directory for report.json, summary.txt and traces");
        app->add_option("--seed", seed);
        app->add_option("--caps.depth", depth);
        app->add_option("--caps.states", states);
        app->add_option("--caps.solo_budget", solo_budget);
        app->add_option("--set", sets, "extra key=value overrides");
        app->add_flag("--json", json, "print the report instead of the summary");
    }

    Scenario scenario() const {
        Scenario s = config.empty() ? Scenario{} : load_scenario(config);
        const std::pair<const char*, const std::optional<std::string>*> flags[] = {
            {"algorithm", &algorithm}, {"driver", &driver},     {"out", &out},
            {"tau", &tau},             {"d_bits", &d_bits},     {"l_cap", &l_cap},
            {"readers", &readers},     {"seed", &seed},         {"caps.depth", &depth},
            {"caps.states", &states},  {"caps.solo_budget", &solo_budget}, {"horizon", &horizon},
        };
        for (const auto& [key, value] : flags)
            if (*value) set_option(s, key, **value);
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::ConfigError, "--set expects key=value");
            set_option(s, kv.substr(0, eq), kv.substr(eq + 1));
        }
        return s;
    }

    static std::string names() {
        std::string out;
        for (const auto& n : algorithm_names()) out += (out.empty() ? "" : ", ") + n;
        return out;
    }
};

int emit(const Outcome& o, bool json) {
    if (json) std::cout << o.report.dump(2) << '\n';
    else std::cout << o.summary;
    return o.exit_code;
}

std::vector<int> ints(const std::string& list) {
    std::vector<int> out;
    std::stringstream in(list);
    for (std::string item; std::getline(in, item, ',');) out.push_back(std::stoi(item));
    return out;
}

// Exact below a million, scientific above.
std::string show(const BigInt& x, int digits) { return x < 1'000'000 ? x.str() : scientific(x, digits); }

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + path);
    return nlohmann::json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Disintegrated storage: executable lower-bound constructions and checkers"};
    app.require_subcommand(1);

    ScenarioFlags run_flags;
    auto* run = app.add_subcommand("run", "run a scenario (adversary driver, sweep or oracle comparison)");
    run_flags.attach(run);
    run->add_option("--driver", run_flags.driver,
                    "invisible-general, visible-general, invisible-common-write, visible-common-write, sweep, "
                    "oracle-compare");

    ScenarioFlags check_flags;
    auto* check = app.add_subcommand("check", "exhaustive checker sweep over two-Write workloads");
    check_flags.attach(check);

    ScenarioFlags oracle_flags;
    auto* oracle = app.add_subcommand("oracle-compare", "closure engine against the brute-force oracle");
    oracle_flags.attach(oracle);
    oracle->add_option("--horizon", oracle_flags.horizon);

    ScenarioFlags replay_flags;
    std::string trace_path;
    auto* replay_cmd = app.add_subcommand("replay", "re-execute a trace through the validator and checkers");
    replay_flags.attach(replay_cmd);
    replay_cmd->add_option("--trace", trace_path, "trace file")->required();

    int tau = 2, d_bits = 2, l_cap = 1, readers = 1, digits = 3;
    std::string csv_tau, csv_d, csv_l, csv_r;
    bool csv = false, bounds_json = false;
    auto* bounds = app.add_subcommand("bounds", "evaluate the block and bit lower bounds");
    bounds->add_option("--tau", tau);
    bounds->add_option("--d-bits", d_bits);
    bounds->add_option("--l-cap", l_cap);
    bounds->add_option("--readers", readers);
    bounds->add_option("--digits", digits, "significant digits for large values");
    bounds->add_flag("--csv", csv, "CSV over comma-separated ranges");
    bounds->add_option("--taus", csv_tau);
    bounds->add_option("--ds", csv_d);
    bounds->add_option("--ls", csv_l);
    bounds->add_option("--rs", csv_r);
    bounds->add_flag("--json", bounds_json);

    std::string report_a, report_b;
    auto* compare = app.add_subcommand("compare", "field-wise diff of two report files");
    compare->add_option("a", report_a)->required();
    compare->add_option("b", report_b)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return emit(run_scenario(run_flags.scenario()), run_flags.json);
        if (*check) {
            Scenario s = check_flags.scenario();
            s.driver = DriverKind::Sweep;
            return emit(run_scenario(s), check_flags.json);
        }
        if (*oracle) {
            Scenario s = oracle_flags.scenario();
            s.driver = DriverKind::OracleCompare;
            return emit(run_scenario(s), oracle_flags.json);
        }
        if (*replay_cmd) {
            std::ifstream in(trace_path);
            if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + trace_path);
            return emit(replay(replay_flags.scenario(), read_trace(in)), replay_flags.json);
        }
        if (*bounds) {
            if (csv) {
                const auto pick = [](const std::string& list, int one) { return list.empty() ? std::vector<int>{one} : ints(list); };
                std::cout << bounds_csv(pick(csv_tau, tau), pick(csv_d, d_bits), pick(csv_l, l_cap), pick(csv_r, readers));
                return kPass;
            }
            BoundParams p{tau, d_bits, l_cap, readers, Visibility::Invisible, Flavor::General};
            if (bounds_json) {
                nlohmann::json j = {{"tau", tau}, {"d_bits", d_bits}, {"l_cap", l_cap}, {"readers", readers}};
                for (auto f : {Flavor::General, Flavor::CommonWrite})
                    for (auto v : {Visibility::Invisible, Visibility::Visible}) {
                        p.flavor = f;
                        p.visibility = v;
                        j["blocks"][to_string(f)][to_string(v)] = block_bound(p).str();
                        if (f == Flavor::CommonWrite) j["bits"][to_string(v)] = bit_bound_symmetric(p).str();
                    }
                std::cout << j.dump(2) << '\n';
                return kPass;
            }
            if (d_bits <= 16) {
                std::cout << bounds_table(tau, d_bits, l_cap, readers);
                return kPass;
            }
            std::cout << "tau=" << tau << " D=" << d_bits << " L=" << l_cap << " R=" << readers << '\n';
            for (auto f : {Flavor::General, Flavor::CommonWrite})
                for (auto v : {Visibility::Invisible, Visibility::Visible}) {
                    p.flavor = f;
                    p.visibility = v;
                    std::cout << to_string(f) << '/' << to_string(v) << " blocks " << show(block_bound(p), digits);
                    if (f == Flavor::CommonWrite)
                        std::cout << ", bits " << show(bit_bound_symmetric(p), digits) << " ("
                                  << bits_as_terabytes(bit_bound_symmetric(p), digits) << " TB)";
                    std::cout << '\n';
                }
            return kPass;
        }
        if (*compare) {
            const auto lines = compare_reports(read_json(report_a), read_json(report_b));
            for (const auto& l : lines) std::cout << l << '\n';
            return lines.empty() ? kPass : kNotAchieved;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kPass;
}
