#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "dstore/labels.hpp"
#include "dstore/model.hpp"
#include "dstore/permanence.hpp"

namespace dstore {

struct AdversaryCaps {
    PermanenceCaps perm;
    int reader_steps = 10'000;  // actions of the blocked Read before giving up
    int solo_cap = 100'000;     // actions per solo completion
};

/// The suffix from configuration `begin` to configuration `end` (events
/// begin+1 .. end), during which Writes were limited to `allowed` and readers
/// in `frozen` were meant to stay still.
struct Segment {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::set<Value> allowed;
    std::set<ProcessId> frozen;
};

/// One permanence fact established by a driver.
struct Iteration {
    int k = 0;
    Subject subject;
    int labels = 0;            // the permanence degree
    std::string kind;          // "burn", "tau", "constant", "window"
    bool verified = false;     // engine verdict when it was established
    bool verified_final = false;  // engine verdict on the final run
    std::set<Value> allowed;
    std::set<ProcessId> frozen;
};

struct AdversaryReport {
    std::string scenario;
    Run run;
    std::vector<Iteration> iterations;
    std::vector<Segment> segments;
    std::size_t peak_distinct_labels = 0;
    long long bound_required = 0;
    bool achieved = false;
    std::vector<std::string> restriction_violations;
    std::vector<std::string> notes;
    std::string trace_file;

    std::size_t verified_count() const;
};

/// Events of `run` in [s.begin, s.end) that break the segment's restriction.
std::vector<std::string> restriction_violations(const Run& run, const Segment& s);

struct WindowResult {
    Run run;
    std::size_t t = 0;
    std::size_t label_count = 0;  // distinct labels of v1 and v2 in shared storage at t
};

/// Write(v1) then Write(v2), both solo; finds a time between the returns with
/// at least tau labels of v1 and tau-1 of v2 in shared storage.
/// Throws InvalidParams (v1 == v2, p not an idle reader) or NotAchieved.
WindowResult two_write_window(const Run& run, Value v1, Value v2, ProcessId p, const AdversaryCaps& caps = {});

struct BurnResult {
    Run run;
    std::set<Value> burned;  // the set S
    Value value = 0;         // the (tau-1)-permanent member of S
    std::size_t splices = 0;
    PermanenceVerdict verdict;
    std::vector<Segment> segments;
};

/// Blocks a Read of p and, whenever it picks up a block of a fresh value of
/// V, tries to deplete that value through a refuting extension. S is cut
/// down to at most `l_cap` values (0: the algorithm's L).
/// Throws InvalidParams, NotAchieved (the Read returned) or SearchExhausted.
BurnResult burning_lemma_general(const Run& run, const std::set<Value>& values, const std::set<ProcessId>& frozen,
                                 ProcessId p, const AdversaryCaps& caps = {}, int l_cap = 0);

struct BurnWriteResult {
    Run run;
    std::int64_t write_id = -1;
    Value value = 0;
    std::size_t splices = 0;
    PermanenceVerdict verdict;
    std::vector<Segment> segments;
};

/// As above, per Write: finds a returned Write of V outside `constant` that is
/// (tau-1)-permanent with Writes over V and frozen + {p} still.
BurnWriteResult burning_lemma_common_write(const Run& run, const std::set<Value>& values,
                                           const std::set<ProcessId>& frozen, ProcessId p,
                                           const std::set<std::int64_t>& constant, const AdversaryCaps& caps = {});

// Lower-bound drivers. A run that falls short is reported with achieved = false.
// The general drivers take L from the algorithm unless `l_cap` is positive.
AdversaryReport drive_invisible_general(const AlgorithmPtr& algorithm, const AdversaryCaps& caps = {}, int l_cap = 0);
AdversaryReport drive_visible_general(const AlgorithmPtr& algorithm, const AdversaryCaps& caps = {}, int l_cap = 0);
AdversaryReport drive_invisible_common_write(const AlgorithmPtr& algorithm, const AdversaryCaps& caps = {});
AdversaryReport drive_visible_common_write(const AlgorithmPtr& algorithm, const AdversaryCaps& caps = {});

/// {scenario, bound_required, peak_distinct_labels, achieved, iterations: [{k, subject, kind, verified}], trace_file}
nlohmann::json to_json(const AdversaryReport& r);

}  // namespace dstore
