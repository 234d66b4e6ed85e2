#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "dstore/harness.hpp"
#include "support.hpp"

using namespace dstore;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("dstore-unit-" + name);
    fs::remove_all(dir);
    return dir;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidParams;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("scenario files and overrides") {
    std::istringstream in("# comment\nalgorithm = replicated\n\ntau=3\ndriver = invisible-general\ncaps.depth = 9\n");
    Scenario s = parse_scenario(in);
    CHECK(s.algorithm == "replicated");
    CHECK(s.tau == 3);
    CHECK(s.driver == DriverKind::InvisibleGeneral);
    CHECK(s.depth == 9);
    CHECK(s.d_bits == 2);
    set_option(s, "tau", "2");
    CHECK(s.tau == 2);
    CHECK(to_json(s)["algorithm"] == "replicated");
    CHECK(to_json(s)["driver"] == "invisible-general");
}

TEST_CASE("configuration errors") {
    Scenario s;
    CHECK(kind_of([&] { set_option(s, "colour", "red"); }) == ErrorKind::ConfigError);
    CHECK(kind_of([&] { set_option(s, "tau", "two"); }) == ErrorKind::ConfigError);
    CHECK(kind_of([&] { set_option(s, "driver", "fastest"); }) == ErrorKind::ConfigError);
    std::istringstream bad("tau 2\n");
    CHECK(kind_of([&] { parse_scenario(bad); }) == ErrorKind::ConfigError);
    s.algorithm = "paxos";
    CHECK(kind_of([&] { validate(s); }) == ErrorKind::ConfigError);
    const auto out = run_scenario(s);
    CHECK(out.exit_code == kConfigError);
    CHECK(out.report["error"]["kind"] == "ConfigError");
}

TEST_CASE("default scenario reproduces the common-write bound and writes its files") {
    Scenario s;
    s.out_dir = scratch("default").string();
    const auto out = run_scenario(s);
    CHECK(out.exit_code == kPass);
    const auto& result = out.report["result"];
    CHECK(result["bound_required"] == 8);
    CHECK(result["achieved"] == true);
    CHECK(out.report["schema_version"] == kSchemaVersion);
    for (const char* f : {"report.json", "summary.txt", "trace.tsv"}) CHECK(fs::exists(fs::path(s.out_dir) / f));
    CHECK(slurp(fs::path(s.out_dir) / "summary.txt").find("achieved yes") != std::string::npos);

    // The same scenario twice gives byte-identical reports.
    Scenario again = s;
    again.out_dir = scratch("default-again").string();
    run_scenario(again);
    CHECK(slurp(fs::path(s.out_dir) / "report.json") == slurp(fs::path(again.out_dir) / "report.json"));
    CHECK(slurp(fs::path(s.out_dir) / "trace.tsv") == slurp(fs::path(again.out_dir) / "trace.tsv"));

    // The emitted trace replays cleanly.
    std::ifstream trace(fs::path(s.out_dir) / "trace.tsv");
    const auto replayed = replay(s, read_trace(trace));
    CHECK(replayed.exit_code == kPass);
    CHECK(replayed.report["result"]["peak_distinct_labels"] == 8);
}

TEST_CASE("report comparison") {
    Scenario s;
    const auto a = run_scenario(s).report;
    CHECK(compare_reports(a, a).empty());
    auto b = a;
    b["result"]["peak_distinct_labels"] = 7;
    const auto lines = compare_reports(a, b);
    REQUIRE(lines.size() == 1);
    CHECK(lines.front() == "result.peak_distinct_labels: 8 -> 7");
    b["schema_version"] = kSchemaVersion + 1;
    CHECK(kind_of([&] { compare_reports(a, b); }) == ErrorKind::SchemaMismatch);
}

TEST_CASE("the sweep catches the replica-dropping mutant and keeps a witness") {
    Scenario s;
    s.algorithm = "replicated-drop";
    s.d_bits = 1;
    s.driver = DriverKind::Sweep;
    s.depth = 10;
    s.out_dir = scratch("drop").string();
    const auto out = run_scenario(s);
    CHECK(out.exit_code == kNotAchieved);
    const auto witness = fs::path(s.out_dir) / "witness.tsv";
    REQUIRE(fs::exists(witness));
    std::ifstream in(witness);
    const auto replayed = replay(s, read_trace(in));
    CHECK(replayed.exit_code == kNotAchieved);
}

TEST_CASE("replay reports malformed runs and rejects unexecutable traces") {
    Scenario s;
    const auto early = replay(s, {Event::read(1)});
    CHECK(early.exit_code == kNotAchieved);
    CHECK(early.report["result"]["violations"][0]["kind"] == "InitNotFirst");
    CHECK(replay(s, {Event::get(1, 0)}).exit_code == kConfigError);
}

TEST_CASE("oracle comparison") {
    const auto r = oracle_compare(6, {});
    CHECK(r.queries >= 200);
    CHECK(r.disagreements.empty());
    CHECK(r.inconclusive == 0);
    CHECK(r.agree == r.queries);
    CHECK(r.permanent + r.refuted == r.queries);
}

}  // TEST_SUITE
