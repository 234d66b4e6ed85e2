#include "dstore/algorithms.hpp"

#include <algorithm>

#include "dstore/coding.hpp"

namespace dstore {

namespace {

using Ints = std::vector<std::int64_t>;

void check_tau(int tau) {
    if (tau < 2) throw Error(ErrorKind::InvalidParams, "tau must be at least 2");
}

void check_domain(int d_bits) {
    if (d_bits < 1 || d_bits > 6) throw Error(ErrorKind::InvalidParams, "D must be in [1, 6] for executable algorithms");
}

void check_readers(int readers) {
    if (readers < 1) throw Error(ErrorKind::InvalidParams, "at least one reader is required");
}

Value pending_value(const ProcessState& p) { return p.pending ? p.pending->value : 0; }

Action get(ObjectId o) { return {ActionKind::Get, o, 0}; }
Action update(ObjectId o) { return {ActionKind::Update, o, 0}; }
Action respond(Value v = 0) { return {ActionKind::Respond, kNoObject, v}; }

// Shared by the two store-all algorithms: the reader probes every object's
// stamp, keeping the region (value) whose minimum stamp is largest.
// Reader meta ints: [phase, i, best, flag, result]; stamps: [region_min, best_min].
namespace probe {

enum Phase : std::int64_t { Probe, Fetch, Done };
enum : std::size_t { kPhase, kIndex, kBest, kFlag, kResult };
enum : std::size_t { kRegionMin, kBestMin };

ProcessState start(const ProcessState& p) {
    ProcessState s = p;
    s.meta.ints = {Probe, 0, 0, 0, 0};
    s.meta.stamps = {0, 0};
    s.data.clear();
    return s;
}

void observe(ProcessState& s, const ObjectState& o, int tau, int n) {
    auto& m = s.meta;
    const auto i = m.ints[kIndex];
    const auto stamp = o.meta.stamps.empty() ? 0 : o.meta.stamps[0];
    m.stamps[kRegionMin] = i % tau == 0 ? stamp : std::min(m.stamps[kRegionMin], stamp);
    if (i % tau == tau - 1 && m.stamps[kRegionMin] > m.stamps[kBestMin]) {
        m.stamps[kBestMin] = m.stamps[kRegionMin];
        m.ints[kBest] = i / tau;
    }
    if (++m.ints[kIndex] == n) {
        m.ints[kPhase] = Fetch;
        m.ints[kIndex] = 0;
        m.ints[kFlag] = 0;
        m.stamps[kRegionMin] = 0;
    }
}

}  // namespace probe

class ReplicatedStore final : public Algorithm {
public:
    ReplicatedStore(int tau, int d_bits, int readers, int l_cap, bool drop)
        : Algorithm(make_info(tau, d_bits, readers, l_cap, drop)), code_(tau, d_bits), replicas_(drop ? tau - 1 : tau) {}

    ObjectState initial_object(ObjectId) const override { return {{}, {{}, {0}}}; }

    ProcessState initial_process(ProcessId p) const override {
        ProcessState s = Algorithm::initial_process(p);
        if (p == kWriter) s.meta = {{0}, {0}};
        return s;
    }

    ProcessState on_invoke(const ProcessState& p, ProcessId id, const Invocation&) const override {
        if (id != kWriter) return probe::start(p);
        ProcessState s = p;
        s.meta.ints[0] = 0;
        ++s.meta.stamps[0];
        return s;
    }

    Action next_action(const ProcessState& p, ProcessId id) const override {
        const int tau = info_.tau;
        if (id == kWriter) {
            const auto i = p.meta.ints[0];
            if (i < replicas_) return update(static_cast<ObjectId>(pending_value(p)) * tau + static_cast<int>(i));
            return respond(pending_value(p));
        }
        const auto& m = p.meta.ints;
        switch (m[probe::kPhase]) {
            case probe::Probe: return get(static_cast<ObjectId>(m[probe::kIndex]));
            case probe::Fetch: return get(static_cast<ObjectId>(m[probe::kBest] * tau + m[probe::kIndex]));
            default: return respond(static_cast<Value>(m[probe::kBest]));
        }
    }

    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        UpdateOutcome out{o, p, true};
        out.object.data = code_.replica(pending_value(p));
        out.object.meta.stamps = {p.meta.stamps[0]};
        ++out.process.meta.ints[0];
        return out;
    }

    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        ProcessState s = p;
        auto& m = s.meta.ints;
        if (m[probe::kPhase] == probe::Probe) {
            probe::observe(s, o, info_.tau, info_.objects);
            return s;
        }
        if (s.data.empty()) {
            s.data.push_back(o.data);
            if (o.data != code_.replica(static_cast<Value>(m[probe::kBest]))) m[probe::kFlag] = 1;
        } else if (o.data != s.data[0]) {
            m[probe::kFlag] = 1;
        }
        if (++m[probe::kIndex] == info_.tau) {
            if (m[probe::kFlag]) return probe::start(s);
            m[probe::kPhase] = probe::Done;
        }
        return s;
    }

    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) s.data.clear();
        return s;
    }

private:
    static AlgorithmInfo make_info(int tau, int d_bits, int readers, int l_cap, bool drop) {
        check_tau(tau);
        check_domain(d_bits);
        check_readers(readers);
        if (l_cap < 1) throw Error(ErrorKind::InvalidParams, "L must be at least 1");
        const int n = tau << d_bits;
        return {drop ? "replicated-drop" : "replicated", n, tau, d_bits, l_cap, readers,
                Visibility::Invisible, Flavor::General, n + tau};
    }

    CodingScheme code_;
    int replicas_;
};

class CodedStoreInvisible final : public Algorithm {
public:
    CodedStoreInvisible(int tau, int d_bits, int readers)
        : Algorithm(make_info(tau, d_bits, readers)), code_(tau, d_bits) {}

    ObjectState initial_object(ObjectId) const override { return {{}, {{}, {0}}}; }

    // Writer ints: [i, populated_0 .. populated_{2^D - 1}]; stamps: [counter].
    ProcessState initial_process(ProcessId p) const override {
        ProcessState s = Algorithm::initial_process(p);
        if (p == kWriter) s.meta = {Ints(1 + (std::size_t{1} << info_.d_bits), 0), {0}};
        return s;
    }

    ProcessState on_invoke(const ProcessState& p, ProcessId id, const Invocation&) const override {
        if (id != kWriter) return probe::start(p);
        ProcessState s = p;
        s.meta.ints[0] = 0;
        ++s.meta.stamps[0];
        return s;
    }

    Action next_action(const ProcessState& p, ProcessId id) const override {
        const int tau = info_.tau;
        if (id == kWriter) {
            const auto i = p.meta.ints[0];
            if (i < tau) return update(static_cast<ObjectId>(pending_value(p)) * tau + static_cast<int>(i));
            return respond(pending_value(p));
        }
        const auto& m = p.meta.ints;
        switch (m[probe::kPhase]) {
            case probe::Probe: return get(static_cast<ObjectId>(m[probe::kIndex]));
            case probe::Fetch: return get(static_cast<ObjectId>(m[probe::kBest] * tau + m[probe::kIndex]));
            default: return respond(static_cast<Value>(m[probe::kResult]));
        }
    }

    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        const Value v = pending_value(p);
        const auto i = p.meta.ints[0];
        const bool populated = p.meta.ints[1 + v] != 0;
        UpdateOutcome out{o, p, !populated};
        if (!populated) out.object.data = code_.chunk(v, static_cast<int>(i));
        out.object.meta.stamps = {p.meta.stamps[0]};
        if (++out.process.meta.ints[0] == info_.tau) out.process.meta.ints[1 + v] = 1;
        return out;
    }

    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        ProcessState s = p;
        auto& m = s.meta.ints;
        if (m[probe::kPhase] == probe::Probe) {
            probe::observe(s, o, info_.tau, info_.objects);
            return s;
        }
        s.data.push_back(o.data);
        if (++m[probe::kIndex] < info_.tau) return s;
        std::vector<std::pair<int, Block>> chunks;
        for (int i = 0; i < info_.tau; ++i) chunks.emplace_back(i, s.data[i]);
        try {
            const Value v = code_.decode(chunks);
            if (v != static_cast<Value>(m[probe::kBest])) return probe::start(s);
            m[probe::kResult] = v;
            m[probe::kPhase] = probe::Done;
        } catch (const Error&) {
            return probe::start(s);
        }
        return s;
    }

    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) s.data.clear();
        return s;
    }

private:
    static AlgorithmInfo make_info(int tau, int d_bits, int readers) {
        check_tau(tau);
        check_domain(d_bits);
        check_readers(readers);
        const int n = tau << d_bits;
        return {"coded-invisible", n, tau, d_bits, tau, readers, Visibility::Invisible, Flavor::CommonWrite, n + tau};
    }

    CodingScheme code_;
};

// Object meta ints: [latest, tag, req]; stamps: [ts].
class CodedStoreVisible final : public Algorithm {
    enum : std::size_t { kLatest, kTag, kReq };
    // writer ints
    enum : std::size_t { wPhase, wIndex, wLast, wReader, wSeen, wServed };
    enum WriterPhase : std::int64_t { Buffer, Publish, Poll, Serve, Finish };
    // reader ints
    enum : std::size_t { rPhase, rIndex, rLastReq, rReq, rLatest, rOk, rResult };
    enum ReaderPhase : std::int64_t { Tag, Post, Latest, ReadBuffer, ReadSlot, Done };

public:
    CodedStoreVisible(int tau, int d_bits, int readers) : Algorithm(make_info(tau, d_bits, readers)), code_(tau, d_bits) {}

    ObjectState initial_object(ObjectId) const override { return {{}, {{0, 0, 0}, {0}}}; }

    ProcessState initial_process(ProcessId p) const override {
        ProcessState s = Algorithm::initial_process(p);
        if (p == kWriter) {
            s.meta.ints = Ints(wServed + info_.readers, 0);
            s.meta.ints[wLast] = 1;
            s.meta.stamps = {0};
        } else {
            s.meta.ints = Ints(rResult + 1, 0);
            s.meta.stamps = {0};
        }
        return s;
    }

    ProcessState on_invoke(const ProcessState& p, ProcessId id, const Invocation&) const override {
        ProcessState s = p;
        auto& m = s.meta.ints;
        if (id == kWriter) {
            m[wPhase] = Buffer;
            m[wIndex] = 0;
            ++s.meta.stamps[0];
        } else {
            m[rPhase] = Tag;
            m[rIndex] = 0;
        }
        return s;
    }

    Action next_action(const ProcessState& p, ProcessId id) const override {
        const auto& m = p.meta.ints;
        const int tau = info_.tau;
        if (id == kWriter) {
            switch (m[wPhase]) {
                case Buffer: return update(static_cast<ObjectId>((1 - m[wLast]) * tau + m[wIndex]));
                case Publish: return update(0);
                case Poll: return get(slot(static_cast<int>(m[wReader])));
                case Serve: return update(slot(static_cast<int>(m[wReader])) + static_cast<int>(m[wIndex]));
                default: return respond(pending_value(p));
            }
        }
        switch (m[rPhase]) {
            case Tag:
            case Post: return m[rPhase] == Tag ? get(slot(id)) : update(slot(id));
            case Latest: return get(0);
            case ReadBuffer: return get(static_cast<ObjectId>(m[rLatest] * tau + m[rIndex]));
            case ReadSlot: return get(slot(id) + static_cast<int>(m[rIndex]));
            default: return respond(static_cast<Value>(m[rResult]));
        }
    }

    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId id, ObjectId) const override {
        UpdateOutcome out{o, p, false};
        auto& m = out.process.meta.ints;
        if (id != kWriter) {  // Post: request a refresh of the reserved slot
            out.object.meta.ints[kReq] = m[rReq];
            m[rLastReq] = m[rReq];
            m[rPhase] = Latest;
            return out;
        }
        const Value v = pending_value(p);
        const auto ts = p.meta.stamps[0];
        switch (m[wPhase]) {
            case Buffer:
                out.object.data = code_.chunk(v, static_cast<int>(m[wIndex]));
                out.object.meta.stamps = {ts};
                out.stored = true;
                if (++m[wIndex] == info_.tau) m[wPhase] = Publish;
                break;
            case Publish:
                m[wLast] = 1 - m[wLast];
                out.object.meta.ints[kLatest] = m[wLast];
                next_reader(m, 1);
                break;
            case Serve:
                out.object.data = code_.chunk(v, static_cast<int>(m[wIndex]));
                out.object.meta.ints[kTag] = m[wSeen];
                out.object.meta.stamps = {ts};
                out.stored = true;
                if (++m[wIndex] == info_.tau) next_reader(m, static_cast<int>(m[wReader]) + 1);
                break;
            default: break;
        }
        return out;
    }

    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId id, ObjectId) const override {
        ProcessState s = p;
        auto& m = s.meta.ints;
        if (id == kWriter) {  // Poll
            const int r = static_cast<int>(m[wReader]);
            const auto req = o.meta.ints[kReq];
            if (req != m[wServed + r - 1]) {
                m[wServed + r - 1] = req;
                m[wSeen] = req;
                m[wPhase] = Serve;
                m[wIndex] = 0;
            } else {
                next_reader(m, r + 1);
            }
            return s;
        }
        const auto stamp = o.meta.stamps[0];
        switch (m[rPhase]) {
            case Tag: {
                const auto tag = o.meta.ints[kTag];
                std::int64_t req = 0;
                while (req == tag || req == m[rLastReq]) ++req;
                m[rReq] = req;
                m[rPhase] = Post;
                break;
            }
            case Latest:
                m[rLatest] = o.meta.ints[kLatest];
                m[rPhase] = ReadBuffer;
                m[rIndex] = 0;
                s.data.clear();
                break;
            case ReadBuffer:
            case ReadSlot: {
                const bool from_slot = m[rPhase] == ReadSlot;
                const auto i = m[rIndex];
                if (i == 0) s.meta.stamps[0] = stamp;
                const bool ok = stamp == s.meta.stamps[0] && (from_slot ? o.meta.ints[kTag] == m[rReq] : stamp > 0);
                m[rOk] = (i == 0 ? 1 : m[rOk]) && ok;
                s.data.push_back(o.data);
                if (++m[rIndex] < info_.tau) break;
                if (m[rOk] && finish(s)) break;
                s.data.clear();
                s.meta.stamps[0] = 0;
                m[rIndex] = 0;
                m[rPhase] = from_slot ? Latest : ReadSlot;
                break;
            }
            default: break;
        }
        return s;
    }

    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) {
            s.data.clear();
            s.meta.stamps[0] = 0;
        }
        return s;
    }

private:
    static AlgorithmInfo make_info(int tau, int d_bits, int readers) {
        check_tau(tau);
        check_domain(d_bits);
        check_readers(readers);
        return {"coded-visible", tau * (readers + 2), tau, d_bits, tau, readers,
                Visibility::Visible, Flavor::CommonWrite, std::max(2 * tau + 3, tau + 1 + readers * (tau + 1))};
    }

    ObjectId slot(int reader) const { return (reader + 1) * info_.tau; }

    void next_reader(Ints& m, int r) const {
        m[wReader] = r;
        m[wIndex] = 0;
        m[wPhase] = r <= info_.readers ? Poll : Finish;
    }

    bool finish(ProcessState& s) const {
        std::vector<std::pair<int, Block>> chunks;
        for (int i = 0; i < info_.tau; ++i) chunks.emplace_back(i, s.data[i]);
        try {
            s.meta.ints[rResult] = code_.decode(chunks);
        } catch (const Error&) {
            return false;
        }
        s.meta.ints[rPhase] = Done;
        return true;
    }

    CodingScheme code_;
};

// Object 0 meta ints carry [wflag, switch]; the first object of each reader's
// copy buffer carries [reading, writing]. No timestamps.
class PetersonBuffer final : public Algorithm {
    enum : std::size_t { kFlag, kSwitch, kReading, kWriting };
    enum : std::size_t { wPhase, wIndex, wReader, wSeen };
    enum WriterPhase : std::int64_t { FlagOn, Buff1, Switch, FlagOff, Check, Copy, Ack, Buff2, Finish };
    enum : std::size_t { rPhase, rIndex, rReading, rF1, rS1, rF2, rS2, rResult };
    enum ReaderPhase : std::int64_t { Announce, Flags1, Read1, Flags2, Read2, Decide, ReadCopy, Done };

public:
    PetersonBuffer(int tau, int d_bits, int readers) : Algorithm(make_info(tau, d_bits, readers)), code_(tau, d_bits) {}

    ObjectState initial_object(ObjectId) const override { return {{}, {{0, 0, 0, 0}, {}}}; }

    ProcessState initial_process(ProcessId p) const override {
        ProcessState s = Algorithm::initial_process(p);
        s.meta.ints = Ints(p == kWriter ? wSeen + 1 : rResult + 1, 0);
        return s;
    }

    ProcessState on_invoke(const ProcessState& p, ProcessId id, const Invocation&) const override {
        ProcessState s = p;
        s.meta.ints.assign(s.meta.ints.size(), 0);
        (void)id;
        return s;
    }

    Action next_action(const ProcessState& p, ProcessId id) const override {
        const auto& m = p.meta.ints;
        const int tau = info_.tau;
        const auto i = static_cast<int>(id == kWriter ? m[wIndex] : m[rIndex]);
        if (id == kWriter) {
            const int r = static_cast<int>(m[wReader]);
            switch (m[wPhase]) {
                case FlagOn:
                case Switch:
                case FlagOff: return update(0);
                case Buff1: return update(i);
                case Check: return get(copy(r));
                case Copy: return update(copy(r) + i);
                case Ack: return update(copy(r));
                case Buff2: return update(tau + i);
                default: return respond(pending_value(p));
            }
        }
        switch (m[rPhase]) {
            case Announce: return update(copy(id));
            case Flags1:
            case Flags2: return get(0);
            case Read1: return get(i);
            case Read2: return get(tau + i);
            case Decide: return get(copy(id));
            case ReadCopy: return get(copy(id) + i);
            default: return respond(static_cast<Value>(m[rResult]));
        }
    }

    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId id, ObjectId) const override {
        UpdateOutcome out{o, p, false};
        auto& m = out.process.meta.ints;
        auto& om = out.object.meta.ints;
        if (id != kWriter) {  // Announce
            m[rReading] = 1 - om[kWriting];
            om[kReading] = m[rReading];
            m[rPhase] = Flags1;
            return out;
        }
        const Value v = pending_value(p);
        switch (m[wPhase]) {
            case FlagOn:
                om[kFlag] = 1;
                m[wPhase] = Buff1;
                break;
            case Buff1:
            case Copy:
            case Buff2:
                out.object.data = code_.chunk(v, static_cast<int>(m[wIndex]));
                out.stored = true;
                if (++m[wIndex] < info_.tau) break;
                m[wIndex] = 0;
                m[wPhase] = m[wPhase] == Buff1 ? Switch : m[wPhase] == Copy ? Ack : Finish;
                break;
            case Switch:
                om[kSwitch] ^= 1;
                m[wPhase] = FlagOff;
                break;
            case FlagOff:
                om[kFlag] = 0;
                next_reader(m, 1);
                break;
            case Ack:
                om[kWriting] = m[wSeen];
                next_reader(m, static_cast<int>(m[wReader]) + 1);
                break;
            default: break;
        }
        return out;
    }

    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId id, ObjectId) const override {
        ProcessState s = p;
        auto& m = s.meta.ints;
        const auto& om = o.meta.ints;
        if (id == kWriter) {  // Check
            m[wSeen] = om[kReading];
            if (om[kReading] != om[kWriting]) {
                m[wPhase] = Copy;
                m[wIndex] = 0;
            } else {
                next_reader(m, static_cast<int>(m[wReader]) + 1);
            }
            return s;
        }
        const int tau = info_.tau;
        switch (m[rPhase]) {
            case Flags1:
                m[rF1] = om[kFlag];
                m[rS1] = om[kSwitch];
                m[rPhase] = Read1;
                break;
            case Flags2:
                m[rF2] = om[kFlag];
                m[rS2] = om[kSwitch];
                m[rPhase] = Read2;
                break;
            case Read1:
            case Read2:
                s.data.push_back(o.data);
                if (++m[rIndex] == tau) {
                    m[rIndex] = 0;
                    m[rPhase] = m[rPhase] == Read1 ? Flags2 : Decide;
                }
                break;
            case Decide:
                if (om[kWriting] == m[rReading]) {
                    m[rPhase] = ReadCopy;
                    m[rIndex] = 0;
                } else {
                    const bool changed = m[rS1] != m[rS2] || m[rF1] || m[rF2];
                    finish(s, changed ? tau : 0);
                }
                break;
            case ReadCopy:
                s.data[m[rIndex]] = o.data;
                if (++m[rIndex] == tau) finish(s, 0);
                break;
            default: break;
        }
        return s;
    }

    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) s.data.clear();
        return s;
    }

private:
    static AlgorithmInfo make_info(int tau, int d_bits, int readers) {
        check_tau(tau);
        check_domain(d_bits);
        check_readers(readers);
        return {"peterson", tau * (readers + 2), tau, d_bits, 2 * tau, readers,
                Visibility::Visible, Flavor::CommonWrite, 3 * tau + 3 + readers * (tau + 2)};
    }

    ObjectId copy(int reader) const { return (reader + 1) * info_.tau; }

    void next_reader(Ints& m, int r) const {
        m[wReader] = r;
        m[wIndex] = 0;
        m[wPhase] = r <= info_.readers ? Check : Buff2;
    }

    // Decodes the buffer in slots [first, first + tau); restarts on failure.
    void finish(ProcessState& s, int first) const {
        std::vector<std::pair<int, Block>> chunks;
        for (int i = 0; i < info_.tau; ++i) chunks.emplace_back(i, s.data[first + i]);
        auto& m = s.meta.ints;
        try {
            m[rResult] = code_.decode(chunks);
            m[rPhase] = Done;
        } catch (const Error&) {
            s.data.clear();
            m.assign(m.size(), 0);
        }
    }

    CodingScheme code_;
};

class ToyOverwrite final : public Algorithm {
public:
    ToyOverwrite(int objects, int readers, bool visible)
        : Algorithm({visible ? "toy-overwrite-visible" : "toy-overwrite", objects, 2, 1, 1, readers,
                     visible ? Visibility::Visible : Visibility::Invisible, Flavor::General, visible ? 2 : 1}),
          code_(1, 1) {
        if (objects < 1) throw Error(ErrorKind::InvalidParams, "at least one object");
        check_readers(readers);
    }

    ObjectState initial_object(ObjectId) const override { return {{}, {{0}, {}}}; }

    ProcessState initial_process(ProcessId p) const override {
        ProcessState s = Algorithm::initial_process(p);
        s.meta.ints = {0, 0};  // [i, result]
        return s;
    }

    ProcessState on_invoke(const ProcessState& p, ProcessId, const Invocation&) const override {
        ProcessState s = p;
        s.meta.ints = {0, 0};
        return s;
    }

    Action next_action(const ProcessState& p, ProcessId id) const override {
        const auto i = static_cast<int>(p.meta.ints[0]);
        if (id == kWriter) return i < info_.objects ? update(i) : respond(pending_value(p));
        const int steps = info_.visibility == Visibility::Visible ? 2 : 1;
        if (i < steps) return i + 1 < steps ? update(0) : get(0);
        return respond(static_cast<Value>(p.meta.ints[1]));
    }

    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId id, ObjectId) const override {
        UpdateOutcome out{o, p, id == kWriter};
        if (id == kWriter) out.object.data = code_.replica(pending_value(p));
        else out.object.meta.ints[0] ^= 1;
        ++out.process.meta.ints[0];
        return out;
    }

    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        ProcessState s = p;
        s.data = {o.data};
        s.meta.ints[1] = code_.replica_value(o.data).value_or(0);
        ++s.meta.ints[0];
        return s;
    }

    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) s.data.clear();
        return s;
    }

private:
    CodingScheme code_;
};

class ToyRewrite final : public Algorithm {
public:
    explicit ToyRewrite(int readers)
        : Algorithm({"toy-rewrite", 2, 2, 1, 1, readers, Visibility::Invisible, Flavor::General, 2}), code_(1, 1) {
        check_readers(readers);
    }

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
        const auto i = p.meta.ints[0];
        if (id == kWriter) return i < 2 ? update(static_cast<ObjectId>(pending_value(p))) : respond(pending_value(p));
        return i < 1 ? get(0) : respond(static_cast<Value>(p.meta.ints[1]));
    }

    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        UpdateOutcome out{o, p, true};
        out.object.data = code_.replica(pending_value(p));
        ++out.process.meta.ints[0];
        return out;
    }

    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        ProcessState s = p;
        s.data = {o.data};
        s.meta.ints[1] = code_.replica_value(o.data).value_or(0);
        ++s.meta.ints[0];
        return s;
    }

    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) s.data.clear();
        return s;
    }

private:
    CodingScheme code_;
};

// The writer flips a bit in object 0 with every Write; a Read returns only
// after it has observed the bit change.
class ToySpin final : public Algorithm {
public:
    ToySpin() : Algorithm({"toy-spin", 1, 2, 1, 1, 1, Visibility::Invisible, Flavor::General, 4}), code_(1, 1) {}

    ObjectState initial_object(ObjectId) const override { return {{}, {{0}, {}}}; }

    ProcessState initial_process(ProcessId p) const override {
        ProcessState s = Algorithm::initial_process(p);
        s.meta.ints = {0, 0, 0};  // [phase, first_bit, result]
        return s;
    }

    ProcessState on_invoke(const ProcessState& p, ProcessId, const Invocation&) const override {
        ProcessState s = p;
        s.meta.ints = {0, 0, 0};
        return s;
    }

    Action next_action(const ProcessState& p, ProcessId id) const override {
        const auto phase = p.meta.ints[0];
        if (id == kWriter) return phase == 0 ? update(0) : respond(pending_value(p));
        return phase < 2 ? get(0) : respond(static_cast<Value>(p.meta.ints[2]));
    }

    UpdateOutcome on_update(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        UpdateOutcome out{o, p, true};
        out.object.data = code_.replica(pending_value(p));
        out.object.meta.ints[0] ^= 1;
        out.process.meta.ints[0] = 1;
        return out;
    }

    ProcessState on_get(const ObjectState& o, const ProcessState& p, ProcessId, ObjectId) const override {
        ProcessState s = p;
        auto& m = s.meta.ints;
        if (m[0] == 0) {
            m[1] = o.meta.ints[0];
            m[0] = 1;
        } else if (o.meta.ints[0] != m[1]) {
            s.data = {o.data};
            m[2] = code_.replica_value(o.data).value_or(0);
            m[0] = 2;
        }
        return s;
    }

    ProcessState on_respond(const ProcessState& p, ProcessId id) const override {
        ProcessState s = p;
        if (id != kWriter) s.data.clear();
        return s;
    }

private:
    CodingScheme code_;
};

}  // namespace

AlgorithmPtr make_replicated_store(int tau, int d_bits, int readers, int l_cap, bool drop_replica) {
    return std::make_shared<ReplicatedStore>(tau, d_bits, readers, l_cap, drop_replica);
}

AlgorithmPtr make_coded_store_invisible(int tau, int d_bits, int readers) {
    return std::make_shared<CodedStoreInvisible>(tau, d_bits, readers);
}

AlgorithmPtr make_coded_store_visible(int tau, int d_bits, int readers) {
    return std::make_shared<CodedStoreVisible>(tau, d_bits, readers);
}

AlgorithmPtr make_peterson_buffer(int tau, int d_bits, int readers) {
    return std::make_shared<PetersonBuffer>(tau, d_bits, readers);
}

AlgorithmPtr make_toy_overwrite(int objects, int readers, bool visible) {
    return std::make_shared<ToyOverwrite>(objects, readers, visible);
}

AlgorithmPtr make_toy_rewrite(int readers) { return std::make_shared<ToyRewrite>(readers); }

AlgorithmPtr make_toy_spin() { return std::make_shared<ToySpin>(); }

std::vector<std::string> algorithm_names() {
    return {"replicated", "replicated-drop", "coded-invisible", "coded-visible", "peterson",
            "toy-overwrite", "toy-overwrite-visible", "toy-rewrite", "toy-spin"};
}

AlgorithmPtr make_algorithm(const std::string& name, const AlgorithmParams& p) {
    if (name == "replicated") return make_replicated_store(p.tau, p.d_bits, p.readers, p.l_cap);
    if (name == "replicated-drop") return make_replicated_store(p.tau, p.d_bits, p.readers, p.l_cap, true);
    if (name == "coded-invisible") return make_coded_store_invisible(p.tau, p.d_bits, p.readers);
    if (name == "coded-visible") return make_coded_store_visible(p.tau, p.d_bits, p.readers);
    if (name == "peterson") return make_peterson_buffer(p.tau, p.d_bits, p.readers);
    if (name == "toy-overwrite") return make_toy_overwrite(2, p.readers);
    if (name == "toy-overwrite-visible") return make_toy_overwrite(2, p.readers, true);
    if (name == "toy-rewrite") return make_toy_rewrite(p.readers);
    if (name == "toy-spin") return make_toy_spin();
    throw Error(ErrorKind::ConfigError, "unknown algorithm '" + name + "'");
}

}  // namespace dstore
