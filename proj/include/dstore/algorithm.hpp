#pragma once

#include <memory>
#include <string>

#include "dstore/types.hpp"

namespace dstore {

enum class Visibility { Invisible, Visible };
enum class Flavor { General, CommonWrite };

const char* to_string(Visibility v);
const char* to_string(Flavor f);

struct AlgorithmInfo {
    std::string name;
    int objects = 0;   // n
    int tau = 2;
    int d_bits = 2;
    int l_cap = 1;     // L
    int readers = 1;   // R
    Visibility visibility = Visibility::Invisible;
    Flavor flavor = Flavor::General;
    int solo_budget = 0;  // declared per-operation bound on a process's own actions
};

enum class ActionKind { Get, Update, Respond };

/// The single enabled step of a process with a pending operation.
struct Action {
    ActionKind kind = ActionKind::Respond;
    ObjectId object = kNoObject;
    Value result = 0;  // for Respond of a Read

    friend bool operator==(const Action&, const Action&) = default;
};

struct UpdateOutcome {
    ObjectState object;
    ProcessState process;
    bool stored = false;  // whether a block was written to the object's data
};

/// A register emulation given as deterministic writer and reader state
/// machines over get/update actions. Transitions are pure and must not
/// depend on anything but their arguments.
class Algorithm {
public:
    explicit Algorithm(AlgorithmInfo info) : info_(std::move(info)) {}
    virtual ~Algorithm() = default;

    const AlgorithmInfo& info() const noexcept { return info_; }
    int objects() const noexcept { return info_.objects; }
    int readers() const noexcept { return info_.readers; }
    int processes() const noexcept { return info_.readers + 1; }

    virtual ObjectState initial_object(ObjectId o) const;
    virtual ProcessState initial_process(ProcessId p) const;

    virtual ProcessState on_invoke(const ProcessState& p, ProcessId id, const Invocation& op) const = 0;
    /// Pre: `p` has a pending operation.
    virtual Action next_action(const ProcessState& p, ProcessId id) const = 0;
    virtual UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId id,
                                    ObjectId oid) const = 0;
    virtual ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId id,
                                ObjectId oid) const = 0;
    virtual ProcessState on_respond(const ProcessState& p, ProcessId id) const = 0;

protected:
    AlgorithmInfo info_;
};

using AlgorithmPtr = std::shared_ptr<const Algorithm>;

struct Configuration;

/// The enabled action of `p` in `config`. Throws NoPendingOperation.
Action enabled(const Configuration& config, const Algorithm& algorithm, ProcessId p);

/// Runs the algorithm's update transition with the model's checks applied:
/// readers may not change object data or store blocks, invisible readers may
/// not update at all, and process data stays within L blocks.
UpdateOutcome update_semantics(const Algorithm& algorithm, const ObjectState& object,
                               const ProcessState& process, ProcessId p, ObjectId o);

ProcessState get_semantics(const Algorithm& algorithm, const ObjectState& object,
                           const ProcessState& process, ProcessId p, ObjectId o);

}  // namespace dstore
