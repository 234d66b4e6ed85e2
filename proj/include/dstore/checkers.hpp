#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dstore/explore.hpp"
#include "dstore/model.hpp"

namespace dstore {

enum class Status { Pass, Fail, Inconclusive };

const char* to_string(Status s);

struct Witness {
    std::size_t t = 0;
    ProcessId process = kWriter;
    std::string note;
    std::vector<Event> trace;  // events after the initial configuration that reproduce the violation

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct Verdict {
    Verdict() = default;
    explicit Verdict(std::string name) : check(std::move(name)) {}

    std::string check;
    Status status = Status::Pass;
    std::vector<Witness> witnesses;

    bool passed() const noexcept { return status == Status::Pass; }
    void fail(Witness w);
};

/// {check, status, witnesses: [{t, process, note}]}
nlohmann::json to_json(const Verdict& v);

/// Every completed Read returns the value of the last Write that returned
/// before its invocation or of some Write concurrent with it.
Verdict check_regularity(const Run& run);

/// Whenever a return of v by a Read of p is enabled, p holds at least tau
/// labels of v (general) or of a single Write of v (common write).
/// Throws InvalidTau when tau <= 1.
Verdict check_tau_disintegrated(const Run& run, int tau);
Verdict check_common_write(const Run& run, int tau);

/// Reader steps never grow All-labels; labels of one Write agree on the value
/// and on the payload they tag; shared storage never holds more distinct
/// labels than there are objects.
Verdict check_label_laws(const Run& run);

/// Bounded wait-freedom: along every explored schedule, every pending
/// operation, run alone from any reached configuration, returns within
/// `budget` of its own get/update actions.
Verdict check_wait_freedom_bounded(const AlgorithmPtr& algorithm, int budget, const std::vector<Workload>& workloads,
                                   const ExploreCaps& caps);

/// The same along one run: at every time, each pending operation returns
/// alone within what is left of `budget`. Stops at the first failure.
Verdict check_wait_freedom_on_run(const Run& run, int budget);

// Single-configuration / single-step forms used by the explorer.

/// Legal return values of the Read whose response is event `t`.
std::vector<Value> legal_read_values(const Run& run, std::size_t t);
std::optional<Witness> regularity_at(const Run& run, std::size_t t);
std::optional<Witness> disintegration_at(const Configuration& c, const Algorithm& alg, int tau, bool common_write,
                                         std::size_t t);
std::optional<Witness> label_laws_at(const Run& run, std::size_t t);
/// Number of own actions p needs, alone from the final configuration, to
/// return (nullopt if more than `cap`).
std::optional<int> solo_completion(const Run& run, ProcessId p, int cap);
std::optional<int> solo_completion(Configuration c, const Algorithm& alg, ProcessId p, int cap);

struct SweepOptions {
    ExploreCaps caps;
    int reads_per_reader = 1;
    bool stop_on_fail = false;
    int budget = 0;  // wait-freedom budget; 0 takes the algorithm's declared one
};

struct SweepReport {
    Verdict regularity{"regularity"};
    Verdict disintegration{"tau_disintegration"};
    Verdict common_write{"common_write"};
    Verdict wait_freedom{"bounded_wait_freedom"};
    Verdict label_laws{"label_laws"};
    std::size_t workloads = 0;
    std::size_t nodes = 0;
    std::size_t peak_labels = 0;
    bool capped = false;

    /// Regularity, the algorithm's declared disintegration flavor, wait-freedom and label laws.
    bool passed(const Algorithm& alg) const;
};

/// Exhaustive check of every two-Write workload over the domain.
SweepReport sweep(const AlgorithmPtr& algorithm, const SweepOptions& options);

nlohmann::json to_json(const SweepReport& r);

}  // namespace dstore
