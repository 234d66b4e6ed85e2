#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dstore/model.hpp"
#include "dstore/permanence.hpp"

namespace dstore {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

enum class DriverKind {
    InvisibleGeneral,
    VisibleGeneral,
    InvisibleCommonWrite,
    VisibleCommonWrite,
    Sweep,
    OracleCompare,
};

const char* to_string(DriverKind d);
/// Throws ConfigError.
DriverKind parse_driver(const std::string& name);

enum ExitCode : int { kPass = 0, kNotAchieved = 1, kInconclusive = 2, kConfigError = 3 };

struct Scenario {
    std::string algorithm = "coded-invisible";
    int tau = 2;
    int d_bits = 2;
    int l_cap = 1;
    int readers = 1;
    DriverKind driver = DriverKind::InvisibleCommonWrite;
    int depth = 14;                  // caps.depth: sweep schedule length
    std::size_t states = 2'000'000;  // caps.states: permanence state cap
    int solo_budget = 0;             // caps.solo_budget: 0 keeps the algorithm's
    int reader_steps = 10'000;       // caps.reader_steps
    int horizon = 8;                 // oracle-compare brute-force horizon
    std::uint64_t seed = 0;
    std::string out_dir;             // empty: nothing is written
};

/// Applies one `key=value` setting. Throws ConfigError on unknown keys or bad values.
void set_option(Scenario& s, const std::string& key, const std::string& value);

/// Reads `key = value` lines; blank lines and lines starting with '#' are skipped.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

/// Throws ConfigError.
void validate(const Scenario& s);

nlohmann::json to_json(const Scenario& s);

struct Outcome {
    int exit_code = kPass;
    nlohmann::json report;
    std::string summary;  // human-readable, one fact per line
    Run run;              // the run behind the report, when there is a single one
};

/// Executes the scenario. Errors raised by the model or the drivers are turned
/// into exit codes and recorded in the report. Writes report.json,
/// summary.txt and the trace (trace.tsv, witness.tsv) under out_dir.
Outcome run_scenario(const Scenario& s);

struct OracleRow {
    std::string algorithm;
    std::size_t prefix = 0;
    std::string subject;
    int k = 0;
    std::vector<Value> allowed;
    std::vector<ProcessId> frozen;
    std::string engine;
    std::string oracle;
};

struct OracleReport {
    std::size_t queries = 0;
    std::size_t agree = 0;
    std::size_t permanent = 0;
    std::size_t refuted = 0;
    std::size_t inconclusive = 0;
    std::vector<OracleRow> disagreements;
};

/// The closure engine against the brute-force oracle on the two-object
/// one-bit toy algorithms, over every subject, k in {1, 2}, allowed set and
/// frozen set at a few fixed prefixes.
OracleReport oracle_compare(int horizon, const PermanenceCaps& caps);

nlohmann::json to_json(const OracleReport& r);

/// Field-wise differences as "path: a -> b" lines in key order. Throws
/// SchemaMismatch when the schema versions differ.
std::vector<std::string> compare_reports(const nlohmann::json& a, const nlohmann::json& b);

/// Rebuilds a run of the scenario's algorithm from trace events and runs the
/// run validator and every checker over it.
Outcome replay(const Scenario& s, const std::vector<Event>& events);

}  // namespace dstore
