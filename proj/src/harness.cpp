#include "dstore/harness.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dstore/adversary.hpp"
#include "dstore/algorithms.hpp"
#include "dstore/bounds.hpp"
#include "dstore/checkers.hpp"
#include "dstore/labels.hpp"

namespace dstore {

namespace {

constexpr std::pair<DriverKind, const char*> kDrivers[] = {
    {DriverKind::InvisibleGeneral, "invisible-general"},
    {DriverKind::VisibleGeneral, "visible-general"},
    {DriverKind::InvisibleCommonWrite, "invisible-common-write"},
    {DriverKind::VisibleCommonWrite, "visible-common-write"},
    {DriverKind::Sweep, "sweep"},
    {DriverKind::OracleCompare, "oracle-compare"},
};

template <class T>
T number(const std::string& key, const std::string& text) {
    T out{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || end != text.data() + text.size())
        throw Error(ErrorKind::ConfigError, key + ": not a number: '" + text + "'");
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

AlgorithmPtr build(const Scenario& s) { return make_algorithm(s.algorithm, {s.tau, s.d_bits, s.l_cap, s.readers}); }

nlohmann::json envelope(const Scenario& s, const std::string& kind) {
    return {{"schema_version", kSchemaVersion}, {"tool_version", kToolVersion}, {"kind", kind}, {"config", to_json(s)}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
    out << text;
}

void write_run(const std::filesystem::path& path, const Run& run) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
    write_trace(out, run);
}

Run rebuild(const AlgorithmPtr& alg, const std::vector<Event>& events) {
    Run r(alg);
    for (const auto& e : events) r.extend(e);
    return r;
}

Outcome run_driver(const Scenario& s, const AlgorithmPtr& alg) {
    AdversaryCaps caps;
    caps.perm.states = s.states;
    caps.reader_steps = s.reader_steps;
    if (s.solo_budget > 0) caps.solo_cap = s.solo_budget;

    AdversaryReport r;
    switch (s.driver) {
        case DriverKind::InvisibleGeneral: r = drive_invisible_general(alg, caps, s.l_cap); break;
        case DriverKind::VisibleGeneral: r = drive_visible_general(alg, caps, s.l_cap); break;
        case DriverKind::InvisibleCommonWrite: r = drive_invisible_common_write(alg, caps); break;
        default: r = drive_visible_common_write(alg, caps); break;
    }
    if (s.l_cap != alg->info().l_cap &&
        (s.driver == DriverKind::InvisibleGeneral || s.driver == DriverKind::VisibleGeneral))
        r.notes.push_back("bound taken at L=" + std::to_string(s.l_cap) + "; the algorithm declares L=" +
                          std::to_string(alg->info().l_cap));
    if (!s.out_dir.empty()) r.trace_file = "trace.tsv";

    Outcome out;
    out.report = envelope(s, "adversary");
    out.report["result"] = to_json(r);
    out.exit_code = r.achieved ? kPass : kNotAchieved;
    std::ostringstream sum;
    sum << "scenario " << r.scenario << '\n'
        << "peak distinct labels " << r.peak_distinct_labels << '\n'
        << "block_bound " << r.bound_required << '\n'
        << "verified permanent values " << r.verified_count() << '\n'
        << "suffix restriction violations " << r.restriction_violations.size() << '\n'
        << "achieved " << (r.achieved ? "yes" : "no") << '\n';
    out.summary = sum.str();
    out.run = std::move(r.run);
    return out;
}

Outcome run_sweep(const Scenario& s, const AlgorithmPtr& alg) {
    SweepOptions options;
    options.caps.depth = s.depth;
    options.budget = s.solo_budget;
    const SweepReport r = sweep(alg, options);
    Outcome out;
    out.report = envelope(s, "sweep");
    out.report["result"] = to_json(r);
    const bool pass = r.passed(*alg);
    out.exit_code = pass ? kPass : r.capped ? kInconclusive : kNotAchieved;
    std::ostringstream sum;
    sum << "algorithm " << alg->info().name << '\n'
        << "workloads " << r.workloads << ", schedule prefixes " << r.nodes << '\n'
        << "peak distinct labels " << r.peak_labels << " of " << alg->objects() << " objects\n";
    for (const auto* v : {&r.regularity, &r.disintegration, &r.common_write, &r.wait_freedom, &r.label_laws}) {
        sum << v->check << ' ' << to_string(v->status) << '\n';
        // Keep the first replayable witness of a failing check.
        if (!v->witnesses.empty() && out.run.size() == 0) out.run = rebuild(alg, v->witnesses.front().trace);
    }
    out.summary = sum.str();
    return out;
}

Outcome run_oracle(const Scenario& s) {
    const auto r = oracle_compare(s.horizon, PermanenceCaps{s.states});
    Outcome out;
    out.report = envelope(s, "oracle-compare");
    out.report["result"] = to_json(r);
    out.exit_code = !r.disagreements.empty() ? kNotAchieved : r.inconclusive ? kInconclusive : kPass;
    std::ostringstream sum;
    sum << "queries " << r.queries << '\n'
        << "agree " << r.agree << " (permanent " << r.permanent << ", refuted " << r.refuted << ")\n"
        << "disagree " << r.disagreements.size() << '\n'
        << "inconclusive " << r.inconclusive << '\n';
    out.summary = sum.str();
    return out;
}

void diff(const nlohmann::json& a, const nlohmann::json& b, const std::string& path, std::vector<std::string>& out) {
    if (a.is_object() && b.is_object()) {
        std::set<std::string> keys;
        for (const auto& [k, v] : a.items()) keys.insert(k);
        for (const auto& [k, v] : b.items()) keys.insert(k);
        for (const auto& k : keys) {
            const std::string sub = path.empty() ? k : path + "." + k;
            if (!a.contains(k)) out.push_back(sub + ": (missing) -> " + b[k].dump());
            else if (!b.contains(k)) out.push_back(sub + ": " + a[k].dump() + " -> (missing)");
            else diff(a[k], b[k], sub, out);
        }
        return;
    }
    if (a.is_array() && b.is_array() && a.size() == b.size()) {
        for (std::size_t i = 0; i < a.size(); ++i) diff(a[i], b[i], path + "[" + std::to_string(i) + "]", out);
        return;
    }
    if (a != b) out.push_back(path + ": " + a.dump() + " -> " + b.dump());
}

}  // namespace

const char* to_string(DriverKind d) {
    for (const auto& [kind, name] : kDrivers)
        if (kind == d) return name;
    return "?";
}

DriverKind parse_driver(const std::string& name) {
    for (const auto& [kind, text] : kDrivers)
        if (name == text) return kind;
    throw Error(ErrorKind::ConfigError, "unknown driver '" + name + "'");
}

void set_option(Scenario& s, const std::string& key, const std::string& value) {
    if (key == "algorithm") s.algorithm = value;
    else if (key == "tau") s.tau = number<int>(key, value);
    else if (key == "d_bits") s.d_bits = number<int>(key, value);
    else if (key == "l_cap") s.l_cap = number<int>(key, value);
    else if (key == "readers") s.readers = number<int>(key, value);
    else if (key == "driver") s.driver = parse_driver(value);
    else if (key == "caps.depth") s.depth = number<int>(key, value);
    else if (key == "caps.states") s.states = number<std::size_t>(key, value);
    else if (key == "caps.solo_budget") s.solo_budget = number<int>(key, value);
    else if (key == "caps.reader_steps") s.reader_steps = number<int>(key, value);
    else if (key == "horizon") s.horizon = number<int>(key, value);
    else if (key == "seed") s.seed = number<std::uint64_t>(key, value);
    else if (key == "out") s.out_dir = value;
    else throw Error(ErrorKind::ConfigError, "unknown key '" + key + "'");
}

Scenario parse_scenario(std::istream& in) {
    Scenario s;
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ConfigError, "line " + std::to_string(n) + ": expected key = value");
        set_option(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + path);
    return parse_scenario(in);
}

void validate(const Scenario& s) {
    const auto names = algorithm_names();
    if (std::find(names.begin(), names.end(), s.algorithm) == names.end())
        throw Error(ErrorKind::ConfigError, "unknown algorithm '" + s.algorithm + "'");
    if (s.tau < 2) throw Error(ErrorKind::ConfigError, "tau must be at least 2");
    if (s.d_bits < 1) throw Error(ErrorKind::ConfigError, "d_bits must be positive");
    if (s.l_cap < 1) throw Error(ErrorKind::ConfigError, "l_cap must be positive");
    if (s.readers < 1) throw Error(ErrorKind::ConfigError, "readers must be positive");
    if (s.depth < 1 || s.states < 1 || s.solo_budget < 0 || s.reader_steps < 1 || s.horizon < 1)
        throw Error(ErrorKind::ConfigError, "caps must be positive");
}

nlohmann::json to_json(const Scenario& s) {
    return {{"algorithm", s.algorithm},
            {"tau", s.tau},
            {"d_bits", s.d_bits},
            {"l_cap", s.l_cap},
            {"readers", s.readers},
            {"driver", to_string(s.driver)},
            {"caps.depth", s.depth},
            {"caps.states", s.states},
            {"caps.solo_budget", s.solo_budget},
            {"caps.reader_steps", s.reader_steps},
            {"horizon", s.horizon},
            {"seed", s.seed}};
}

Outcome run_scenario(const Scenario& s) {
    Outcome out;
    try {
        validate(s);
        if (s.driver == DriverKind::OracleCompare) out = run_oracle(s);
        else {
            const auto alg = build(s);
            out = s.driver == DriverKind::Sweep ? run_sweep(s, alg) : run_driver(s, alg);
        }
    } catch (const Error& e) {
        out = Outcome{};
        out.report = envelope(s, "error");
        out.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        out.exit_code = e.kind() == ErrorKind::SearchExhausted ? kInconclusive
                        : e.kind() == ErrorKind::NotAchieved   ? kNotAchieved
                                                               : kConfigError;
        out.summary = std::string("error ") + e.what() + '\n';
    }
    if (!s.out_dir.empty()) {
        const std::filesystem::path dir(s.out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "report.json", out.report.dump(2) + '\n');
        write_file(dir / "summary.txt", out.summary);
        if (out.run.size() > 0)
            write_run(dir / (s.driver == DriverKind::Sweep ? "witness.tsv" : "trace.tsv"), out.run);
    }
    return out;
}

OracleReport oracle_compare(int horizon, const PermanenceCaps& caps) {
    OracleReport r;
    for (const auto& alg : {make_toy_overwrite(2, 1, false), make_toy_overwrite(2, 1, true), make_toy_rewrite(1)}) {
        std::vector<Run> prefixes;
        Run run = start_run(alg);
        prefixes.push_back(run);
        run.extend(Event::write(1));
        run.step(kWriter);
        prefixes.push_back(run);
        run.extend(Event::read(1));
        run.step(1);
        prefixes.push_back(run);
        run.step(kWriter);
        run.step(kWriter);
        prefixes.push_back(run);

        for (std::size_t i = 0; i < prefixes.size(); ++i) {
            const Run& pr = prefixes[i];
            std::vector<Subject> subjects{Subject::value(0), Subject::value(1)};
            for (std::size_t t = 1; t <= pr.size(); ++t)
                if (pr.event(t).kind == EventKind::Invoke && pr.event(t).process == kWriter)
                    subjects.push_back(Subject::write(pr.at(t).shadow.pending_ids[kWriter]));
            for (const auto& subject : subjects)
                for (int k : {1, 2})
                    for (const std::set<Value>& allowed : {std::set<Value>{}, {0}, {1}, {0, 1}})
                        for (const std::set<ProcessId>& frozen : {std::set<ProcessId>{}, {1}}) {
                            const PermanenceQuery q{subject, k, allowed, frozen, caps};
                            const auto engine = is_permanent(pr, q);
                            const auto oracle = brute_force_permanence(pr, q, horizon);
                            ++r.queries;
                            if (engine.status == PermanenceStatus::Inconclusive) ++r.inconclusive;
                            if (engine.status == oracle.status) {
                                ++r.agree;
                                if (engine.permanent()) ++r.permanent;
                                if (engine.refuted()) ++r.refuted;
                                continue;
                            }
                            r.disagreements.push_back({alg->info().name, i, describe(subject), k,
                                                       {allowed.begin(), allowed.end()},
                                                       {frozen.begin(), frozen.end()}, to_string(engine.status),
                                                       to_string(oracle.status)});
                        }
        }
    }
    return r;
}

nlohmann::json to_json(const OracleReport& r) {
    auto rows = nlohmann::json::array();
    for (const auto& d : r.disagreements)
        rows.push_back({{"algorithm", d.algorithm},
                        {"prefix", d.prefix},
                        {"subject", d.subject},
                        {"k", d.k},
                        {"allowed", d.allowed},
                        {"frozen", d.frozen},
                        {"engine", d.engine},
                        {"oracle", d.oracle}});
    return {{"queries", r.queries},     {"agree", r.agree},
            {"permanent", r.permanent}, {"refuted", r.refuted},
            {"inconclusive", r.inconclusive}, {"disagreements", rows}};
}

std::vector<std::string> compare_reports(const nlohmann::json& a, const nlohmann::json& b) {
    const auto version = [](const nlohmann::json& j) { return j.value("schema_version", -1); };
    if (version(a) != version(b))
        throw Error(ErrorKind::SchemaMismatch, "schema versions " + std::to_string(version(a)) + " and " +
                                                   std::to_string(version(b)));
    std::vector<std::string> out;
    diff(a, b, "", out);
    return out;
}

Outcome replay(const Scenario& s, const std::vector<Event>& events) {
    Outcome out;
    out.report = envelope(s, "replay");
    try {
        validate(s);
        const auto alg = build(s);
        out.run = rebuild(alg, events);
    } catch (const Error& e) {
        out.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        out.exit_code = kConfigError;
        out.summary = std::string("error ") + e.what() + '\n';
        return out;
    }
    const Run& run = out.run;
    auto violations = nlohmann::json::array();
    for (const auto& v : validate_run(run))
        violations.push_back({{"t", v.t}, {"kind", to_string(v.kind)}, {"note", v.note}});
    const int tau = run.algorithm().info().tau;
    const std::vector<Verdict> verdicts{check_regularity(run), check_tau_disintegrated(run, tau),
                                        check_common_write(run, tau), check_label_laws(run),
                                        check_wait_freedom_on_run(run, s.solo_budget > 0 ? s.solo_budget
                                                                                         : run.algorithm().info().solo_budget)};
    auto checks = nlohmann::json::array();
    std::ostringstream sum;
    sum << "events " << run.size() << '\n' << "model violations " << violations.size() << '\n';
    const bool common_write = run.algorithm().info().flavor == Flavor::CommonWrite;
    bool ok = violations.empty();
    for (const auto& v : verdicts) {
        checks.push_back(to_json(v));
        sum << v.check << ' ' << to_string(v.status) << '\n';
        // The general flavor is not held to the common-write rule.
        if (common_write || v.check != "common_write") ok = ok && v.passed();
    }
    sum << "peak distinct labels " << peak_distinct_labels(run) << " of " << run.algorithm().objects() << " objects\n";
    out.report["result"] = {{"events", run.size()},
                            {"violations", violations},
                            {"verdicts", checks},
                            {"peak_distinct_labels", peak_distinct_labels(run)}};
    out.exit_code = ok ? kPass : kNotAchieved;
    out.summary = sum.str();
    return out;
}

}  // namespace dstore
