#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "dstore/labels.hpp"
#include "dstore/model.hpp"

namespace dstore {

struct PermanenceCaps {
    std::size_t states = 2'000'000;
};

/// Does `subject` keep at least k labels in shared storage in every finite
/// extension whose Writes take values from `allowed` and in which the readers
/// in `frozen` take no steps?
struct PermanenceQuery {
    Subject subject;
    int k = 1;
    std::set<Value> allowed;
    std::set<ProcessId> frozen;
    PermanenceCaps caps;
};

enum class PermanenceStatus { Permanent, Refuted, Inconclusive };

const char* to_string(PermanenceStatus s);

struct PermanenceVerdict {
    PermanenceStatus status = PermanenceStatus::Inconclusive;
    std::vector<Event> witness;  // the refuting extension
    std::size_t states = 0;      // distinct states visited

    bool permanent() const noexcept { return status == PermanenceStatus::Permanent; }
    bool refuted() const noexcept { return status == PermanenceStatus::Refuted; }
};

/// Decided by closure over the (canonicalized) states reachable by the
/// writer and every non-frozen reader whose steps can affect shared storage.
/// Readers of invisible algorithms never can, so they are left out. Exact for
/// finite-state algorithms; Inconclusive when the state cap is reached.
/// The witness, if any, is a shortest refuting extension.
/// Throws MalformedQuery.
PermanenceVerdict is_permanent(const Run& run, const PermanenceQuery& q);

/// Constancy of a Write: its shared label set never changes and has exactly
/// q.k members.
PermanenceVerdict is_constant(const Run& run, const PermanenceQuery& q);

/// Reference semantics: every legal extension of at most `horizon` events
/// by the writer and every non-frozen reader, without state merging.
PermanenceVerdict brute_force_permanence(const Run& run, const PermanenceQuery& q, int horizon, bool constancy = false);

/// Appends the events of a witness (or any event list) to a copy of `run`.
Run extended(const Run& run, const std::vector<Event>& events);

nlohmann::json to_json(const PermanenceQuery& q);
nlohmann::json to_json(const PermanenceVerdict& v);

}  // namespace dstore
