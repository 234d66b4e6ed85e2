#pragma once

// Helpers shared by the unit tests: scripted schedules and small algorithms
// that break one rule on purpose.

#include <memory>
#include <vector>

#include "dstore/algorithm.hpp"
#include "dstore/algorithms.hpp"
#include "dstore/coding.hpp"
#include "dstore/labels.hpp"
#include "dstore/model.hpp"

namespace dstore::test {

inline Run write_solo(Run r, Value v) {
    complete_solo(r, kWriter, {OpKind::Write, v});
    return r;
}

inline Run read_solo(Run r, ProcessId p) {
    complete_solo(r, p, {OpKind::Read, 0});
    return r;
}

/// A one-object, one-bit register whose reader fetches the object once and
/// then returns `forged` (or the fetched value when forged < 0). Invisible,
/// declared tau = 2, so the single-block return also breaks disintegration.
class OneShot final : public Algorithm {
public:
    explicit OneShot(int forged = -1)
        : Algorithm({"one-shot", 1, 2, 1, 1, 1, Visibility::Invisible, Flavor::General, 2}), forged_(forged), code_(1, 1) {}

    ProcessState initial_process(ProcessId p) const override {
        ProcessState s = Algorithm::initial_process(p);
        s.meta.ints = {0, 0};
        return s;
    }
    ProcessState on_invoke(const ProcessState& p, ProcessId, const Invocation&) const override {
        ProcessState s = p;
        s.meta.ints = {0, 0};
        return s;
    }
    Action next_action(const ProcessState& p, ProcessId id) const override {
        if (p.meta.ints[0] == 0) return {id == kWriter ? ActionKind::Update : ActionKind::Get, 0, 0};
        if (id == kWriter) return {ActionKind::Respond, kNoObject, 0};
        const auto v = forged_ >= 0 ? static_cast<Value>(forged_) : static_cast<Value>(p.meta.ints[1]);
        return {ActionKind::Respond, kNoObject, v};
    }
    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        UpdateOutcome out{o, p, true};
        out.object.data = code_.replica(p.pending->value);
        out.process.meta.ints[0] = 1;
        return out;
    }
    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        ProcessState s = p;
        s.data = {o.data};
        s.meta.ints = {1, code_.replica_value(o.data).value_or(0)};
        return s;
    }
    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) s.data.clear();
        return s;
    }

private:
    int forged_;
    CodingScheme code_;
};

/// An invisible-declared reader that updates object metadata anyway.
class SneakyReader final : public Algorithm {
public:
    SneakyReader() : Algorithm({"sneaky", 1, 2, 1, 1, 1, Visibility::Invisible, Flavor::General, 2}) {}

    ProcessState on_invoke(const ProcessState& p, ProcessId, const Invocation&) const override { return p; }
    Action next_action(const ProcessState&, ProcessId id) const override {
        if (id == kWriter) return {ActionKind::Respond, kNoObject, 0};
        return {ActionKind::Update, 0, 0};
    }
    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        UpdateOutcome out{o, p, false};
        out.object.meta.ints.push_back(1);
        return out;
    }
    ProcessState on_get(const ObjectState&, const ProcessState& p, ProcessId, ObjectId) const override { return p; }
    ProcessState on_respond(const ProcessState& p, ProcessId) const override { return p; }
};

/// A reader that fetches into a fresh slot every time, overflowing L = 1.
class Hoarder final : public Algorithm {
public:
    Hoarder() : Algorithm({"hoarder", 1, 2, 1, 1, 1, Visibility::Invisible, Flavor::General, 4}) {}

    ProcessState on_invoke(const ProcessState& p, ProcessId, const Invocation&) const override { return p; }
    Action next_action(const ProcessState&, ProcessId id) const override {
        if (id == kWriter) return {ActionKind::Respond, kNoObject, 0};
        return {ActionKind::Get, 0, 0};
    }
    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        return {o, p, false};
    }
    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        ProcessState s = p;
        s.data.push_back(o.data);
        return s;
    }
    ProcessState on_respond(const ProcessState& p, ProcessId) const override { return p; }
};

}  // namespace dstore::test
