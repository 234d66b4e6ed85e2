#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "json.hpp"

#include "dstore/model.hpp"

namespace dstore {

enum class SubjectKind { Value, Write };

/// A value v (labels of W_v) or a single Write w.
struct Subject {
    SubjectKind kind = SubjectKind::Value;
    std::int64_t id = 0;

    static Subject value(Value v) { return {SubjectKind::Value, static_cast<std::int64_t>(v)}; }
    static Subject write(std::int64_t w) { return {SubjectKind::Write, w}; }

    bool matches(const Label& l) const {
        return kind == SubjectKind::Value ? static_cast<std::int64_t>(l.value) == id : l.write_id == id;
    }

    friend bool operator==(const Subject&, const Subject&) = default;
};

std::string describe(const Subject& s);

// Shadow hooks used by the model when executing events.

/// The stored block of `o` is now tagged with exactly {label}.
void tag_on_update(ShadowLabels& shadow, ObjectId o, const Label& label);

/// Label bookkeeping for a get by p on an object holding `object_block`:
/// newly obtained blocks inherit the object's labels, a block p still holds
/// that equals the object's block accumulates them, and labels of blocks p
/// no longer holds are forgotten.
void propagate_on_get(ShadowLabels& shadow, ProcessId p, const std::vector<Block>& after,
                      const Block& object_block, const LabelSet& object_labels);

/// Forgets labels of blocks that are no longer in p's data.
void prune_local(ShadowLabels& shadow, ProcessId p, const std::vector<Block>& data);

// Queries.

LabelSet s_labels(const Configuration& c, const Subject& z);
LabelSet l_labels(const Configuration& c, ProcessId p, const Subject& z);
LabelSet all_labels(const Configuration& c, ProcessId p, const Subject& z);
std::set<Value> values_p(const Configuration& c, ProcessId p);
std::set<std::int64_t> writes_p(const Configuration& c, ProcessId p);

LabelSet s_labels(const Run& r, std::size_t t, const Subject& z);
LabelSet l_labels(const Run& r, std::size_t t, ProcessId p, const Subject& z);
LabelSet all_labels(const Run& r, std::size_t t, ProcessId p, const Subject& z);
std::set<Value> values_p(const Run& r, std::size_t t, ProcessId p);
std::set<std::int64_t> writes_p(const Run& r, std::size_t t, ProcessId p);

/// Union of the label sets of all objects.
LabelSet shared_labels(const Configuration& c);
/// Number of distinct labels in shared storage (a lower bound on n).
std::size_t distinct_shared_labels(const Configuration& c);
/// Maximum of distinct_shared_labels over all times of the run.
std::size_t peak_distinct_labels(const Run& r);

std::uint64_t payload_hash(const Bytes& payload);

/// {"objects": {id: [{write_id, k}]}, "readers": {id: {payload-hash: [{write_id, k}]}}}
nlohmann::json label_dump(const Configuration& c);

}  // namespace dstore
