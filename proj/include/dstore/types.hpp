#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dstore {

/// A register value, an integer in [0, 2^D).
using Value = std::uint32_t;
using ProcessId = int;  // 0 is the writer, 1..R are readers
using ObjectId = int;
using Bytes = std::vector<std::uint8_t>;

inline constexpr ProcessId kWriter = 0;
inline constexpr ObjectId kNoObject = -1;

enum class ErrorKind {
    ActionNotEnabled,
    ModelViolation,
    NoPendingOperation,
    InvalidTau,
    MalformedQuery,
    DecodeFailure,
    InvalidParams,
    NotAchieved,
    SearchExhausted,
    ConfigError,
    SchemaMismatch,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// The unit of counted storage. An empty payload is the initial (bottom) block.
struct Block {
    Bytes payload;

    friend auto operator<=>(const Block&, const Block&) = default;
};

/// Uncounted metadata. `stamps` hold timestamps: algorithms only compare them
/// or take the writer's counter plus one, so any order-preserving renaming of
/// the stamps of a configuration yields an equivalent configuration.
struct Meta {
    std::vector<std::int64_t> ints;
    std::vector<std::int64_t> stamps;

    friend auto operator<=>(const Meta&, const Meta&) = default;
};

enum class OpKind { Read, Write };

/// A high-level operation as seen by the algorithm (no analysis identity).
struct Invocation {
    OpKind kind = OpKind::Read;
    Value value = 0;  // written value; unused for reads

    friend auto operator<=>(const Invocation&, const Invocation&) = default;
};

enum class Role { Writer, Reader };

struct ProcessState {
    Role role = Role::Reader;
    std::vector<Block> data;  // at most L blocks
    Meta meta;                // machine state lives here
    std::optional<Invocation> pending;

    friend auto operator<=>(const ProcessState&, const ProcessState&) = default;
};

struct ObjectState {
    Block data;  // always exactly one block
    Meta meta;

    friend auto operator<=>(const ObjectState&, const ObjectState&) = default;
};

/// Analysis-only tag of the k-th block-storing update of a Write.
struct Label {
    std::int64_t write_id = 0;
    int k = 0;
    Value value = 0;  // origin value of the Write

    friend bool operator==(const Label& a, const Label& b) {
        return a.write_id == b.write_id && a.k == b.k;
    }
    friend auto operator<=>(const Label& a, const Label& b) {
        if (auto c = a.write_id <=> b.write_id; c != 0) return c;
        return a.k <=> b.k;
    }
};

using LabelSet = std::set<Label>;

enum class EventKind { Invoke, Respond, Get, Update };

struct Event {
    EventKind kind = EventKind::Invoke;
    ProcessId process = kWriter;
    ObjectId object = kNoObject;
    Invocation op;   // invoke / respond
    Value result = 0;  // respond: returned value for reads, written value for writes

    static Event invoke(ProcessId p, Invocation op) { return {EventKind::Invoke, p, kNoObject, op, 0}; }
    static Event write(Value v) { return invoke(kWriter, {OpKind::Write, v}); }
    static Event read(ProcessId p) { return invoke(p, {OpKind::Read, 0}); }
    static Event get(ProcessId p, ObjectId o) { return {EventKind::Get, p, o, {}, 0}; }
    static Event update(ProcessId p, ObjectId o) { return {EventKind::Update, p, o, {}, 0}; }

    friend bool operator==(const Event&, const Event&) = default;
};

std::string describe(const Event& e);

}  // namespace dstore
