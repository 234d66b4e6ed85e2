#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dstore/algorithm.hpp"
#include "dstore/types.hpp"

namespace dstore {

/// Analysis-only state. Never passed to algorithm transitions.
struct ShadowLabels {
    std::vector<LabelSet> objects;                  // labels of the block each object holds
    std::vector<std::map<Bytes, LabelSet>> local;   // per process: block payload -> labels
    std::vector<std::int64_t> pending_ids;          // invocation index of each pending op, -1 if idle
    std::int64_t next_op_id = 0;
    int write_k = 0;  // block-storing updates performed by the pending Write

    friend bool operator==(const ShadowLabels&, const ShadowLabels&) = default;
};

struct Configuration {
    std::vector<ProcessState> processes;  // [0] writer, [1..R] readers
    std::vector<ObjectState> objects;
    ShadowLabels shadow;

    const ProcessState& writer() const { return processes.at(kWriter); }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Writer and object states; equality is indistinguishability to the writer and objects.
struct WriterProjection {
    ProcessState writer;
    std::vector<ObjectState> objects;

    friend bool operator==(const WriterProjection&, const WriterProjection&) = default;
};

Configuration initial_configuration(const Algorithm& algorithm);

/// Executes one event. Throws ActionNotEnabled or ModelViolation.
Configuration apply_event(const Configuration& config, const Event& event, const Algorithm& algorithm);

/// The fully populated event for p's enabled action (respond events carry their result).
Event enabled_event(const Configuration& config, const Algorithm& algorithm, ProcessId p);

WriterProjection project_writer_objects(const Configuration& config);

/// Serialization of everything the algorithm can observe (shadow state excluded).
std::string serialize_visible(const Configuration& config);

struct Step {
    Event event;
    Configuration config;
};

/// A finite run: an initial configuration followed by (event, configuration) steps.
/// Time t names the configuration after the t-th event.
class Run {
public:
    Run() = default;
    explicit Run(AlgorithmPtr algorithm);
    Run(AlgorithmPtr algorithm, Configuration initial);

    const Algorithm& algorithm() const { return *algorithm_; }
    const AlgorithmPtr& algorithm_ptr() const { return algorithm_; }

    std::size_t size() const noexcept { return steps_.size(); }
    const Configuration& at(std::size_t t) const { return t == 0 ? initial_ : steps_.at(t - 1).config; }
    const Configuration& final_config() const { return at(size()); }
    const Event& event(std::size_t t) const { return steps_.at(t - 1).event; }
    const std::vector<Step>& steps() const noexcept { return steps_; }
    const Configuration& initial() const noexcept { return initial_; }

    /// Applies `e` through the model and appends it; returns the recorded event.
    const Event& extend(const Event& e);
    /// Appends the enabled action of `p`.
    const Event& step(ProcessId p);
    /// Appends a step without checking legality (used to build malformed runs in tests).
    void append_unchecked(Event e, Configuration c);
    void truncate(std::size_t t);

private:
    AlgorithmPtr algorithm_;
    Configuration initial_;
    std::vector<Step> steps_;
};

std::size_t final_of(const Run& run);

/// A run that starts with the dummy Write(0) executed solo to completion.
Run start_run(AlgorithmPtr algorithm);

/// Lets p take steps alone until its pending operation returns. Returns the
/// number of get/update actions taken; throws SearchExhausted past `cap`.
int run_solo(Run& run, ProcessId p, int cap = 100000);

/// Invokes `op` at p (p must be idle) and runs it solo to completion.
void complete_solo(Run& run, ProcessId p, const Invocation& op, int cap = 100000);

enum class ViolationKind {
    InitNotFirst,
    MultiplePending,
    IllegalTransition,
    CapacityExceeded,
    ReaderDataNotEmpty,
    RespondWithoutPending,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::size_t t;
    std::string note;
};

std::vector<Violation> validate_run(const Run& run);

// Trace format: one tab-separated line per event:
// index, process, kind, object (or -), operation (or -), value (or -).
std::string process_name(ProcessId p);
std::string trace_line(std::size_t index, const Event& e);
void write_trace(std::ostream& out, const Run& run);
std::vector<Event> read_trace(std::istream& in);

}  // namespace dstore
