#include "dstore/model.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "dstore/labels.hpp"

namespace dstore {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ActionNotEnabled: return "ActionNotEnabled";
        case ErrorKind::ModelViolation: return "ModelViolation";
        case ErrorKind::NoPendingOperation: return "NoPendingOperation";
        case ErrorKind::InvalidTau: return "InvalidTau";
        case ErrorKind::MalformedQuery: return "MalformedQuery";
        case ErrorKind::DecodeFailure: return "DecodeFailure";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::NotAchieved: return "NotAchieved";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    }
    return "?";
}

const char* to_string(Visibility v) { return v == Visibility::Invisible ? "invisible" : "visible"; }
const char* to_string(Flavor f) { return f == Flavor::General ? "general" : "common_write"; }

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::InitNotFirst: return "InitNotFirst";
        case ViolationKind::MultiplePending: return "MultiplePending";
        case ViolationKind::IllegalTransition: return "IllegalTransition";
        case ViolationKind::CapacityExceeded: return "CapacityExceeded";
        case ViolationKind::ReaderDataNotEmpty: return "ReaderDataNotEmpty";
        case ViolationKind::RespondWithoutPending: return "RespondWithoutPending";
    }
    return "?";
}

std::string process_name(ProcessId p) {
    return p == kWriter ? std::string("writer") : "reader" + std::to_string(p);
}

namespace {

const char* kind_name(EventKind k) {
    switch (k) {
        case EventKind::Invoke: return "invoke";
        case EventKind::Respond: return "respond";
        case EventKind::Get: return "get";
        case EventKind::Update: return "update";
    }
    return "?";
}

bool has_op(const Event& e) { return e.kind == EventKind::Invoke || e.kind == EventKind::Respond; }

std::string value_field(const Event& e) {
    if (e.kind == EventKind::Invoke)
        return e.op.kind == OpKind::Write ? std::to_string(e.op.value) : "-";
    if (e.kind == EventKind::Respond) return std::to_string(e.result);
    return "-";
}

}  // namespace

std::string describe(const Event& e) {
    std::ostringstream s;
    s << process_name(e.process) << ' ' << kind_name(e.kind);
    if (e.object != kNoObject) s << " o" << e.object;
    if (has_op(e)) s << ' ' << (e.op.kind == OpKind::Write ? "Write" : "Read");
    if (auto v = value_field(e); v != "-") s << ' ' << v;
    return s.str();
}

ObjectState Algorithm::initial_object(ObjectId) const { return {}; }

ProcessState Algorithm::initial_process(ProcessId p) const {
    ProcessState s;
    s.role = p == kWriter ? Role::Writer : Role::Reader;
    return s;
}

Action enabled(const Configuration& config, const Algorithm& algorithm, ProcessId p) {
    const auto& ps = config.processes.at(p);
    if (!ps.pending) throw Error(ErrorKind::NoPendingOperation, process_name(p) + " is idle");
    return algorithm.next_action(ps, p);
}

UpdateOutcome update_semantics(const Algorithm& algorithm, const ObjectState& object,
                               const ProcessState& process, ProcessId p, ObjectId o) {
    if (p != kWriter && algorithm.info().visibility == Visibility::Invisible)
        throw Error(ErrorKind::ModelViolation, "invisible reader " + process_name(p) + " performs an update");
    auto out = algorithm.on_update(object, process, p, o);
    if (p != kWriter && (out.stored || out.object.data != object.data))
        throw Error(ErrorKind::ModelViolation, process_name(p) + " writes data to o" + std::to_string(o));
    if (static_cast<int>(out.process.data.size()) > algorithm.info().l_cap)
        throw Error(ErrorKind::ModelViolation, process_name(p) + " holds more than L blocks");
    return out;
}

ProcessState get_semantics(const Algorithm& algorithm, const ObjectState& object,
                           const ProcessState& process, ProcessId p, ObjectId o) {
    auto next = algorithm.on_get(object, process, p, o);
    if (static_cast<int>(next.data.size()) > algorithm.info().l_cap)
        throw Error(ErrorKind::ModelViolation, process_name(p) + " holds more than L blocks");
    return next;
}

Configuration initial_configuration(const Algorithm& algorithm) {
    Configuration c;
    const int procs = algorithm.processes();
    for (ProcessId p = 0; p < procs; ++p) c.processes.push_back(algorithm.initial_process(p));
    for (ObjectId o = 0; o < algorithm.objects(); ++o) c.objects.push_back(algorithm.initial_object(o));
    c.shadow.objects.assign(c.objects.size(), {});
    c.shadow.local.assign(procs, {});
    c.shadow.pending_ids.assign(procs, -1);
    return c;
}

Event enabled_event(const Configuration& config, const Algorithm& algorithm, ProcessId p) {
    const Action a = enabled(config, algorithm, p);
    switch (a.kind) {
        case ActionKind::Get: return Event::get(p, a.object);
        case ActionKind::Update: return Event::update(p, a.object);
        case ActionKind::Respond: {
            const auto& op = *config.processes[p].pending;
            Event e{EventKind::Respond, p, kNoObject, op, op.kind == OpKind::Write ? op.value : a.result};
            return e;
        }
    }
    throw Error(ErrorKind::ActionNotEnabled, "unknown action");
}

Configuration apply_event(const Configuration& config, const Event& event, const Algorithm& algorithm) {
    const ProcessId p = event.process;
    if (p < 0 || p >= static_cast<int>(config.processes.size()))
        throw Error(ErrorKind::ActionNotEnabled, "unknown process " + std::to_string(p));
    const auto& ps = config.processes[p];
    Configuration next = config;
    auto& shadow = next.shadow;

    switch (event.kind) {
        case EventKind::Invoke: {
            if (ps.pending) throw Error(ErrorKind::ActionNotEnabled, process_name(p) + " already has a pending operation");
            if ((p == kWriter) != (event.op.kind == OpKind::Write))
                throw Error(ErrorKind::ActionNotEnabled, "only the writer writes and only readers read");
            if (event.op.kind == OpKind::Write && event.op.value >= (Value{1} << algorithm.info().d_bits))
                throw Error(ErrorKind::ActionNotEnabled, "value outside the domain");
            auto s = algorithm.on_invoke(ps, p, event.op);
            s.pending = event.op;
            if (p != kWriter && !s.data.empty())
                throw Error(ErrorKind::ModelViolation, "reader data not empty at Read invocation");
            next.processes[p] = std::move(s);
            shadow.pending_ids[p] = shadow.next_op_id++;
            if (p == kWriter) shadow.write_k = 0;
            prune_local(shadow, p, next.processes[p].data);
            return next;
        }
        case EventKind::Respond: {
            const Action a = enabled(config, algorithm, p);
            if (a.kind != ActionKind::Respond)
                throw Error(ErrorKind::ActionNotEnabled, process_name(p) + " has no enabled response");
            const Value result = ps.pending->kind == OpKind::Write ? ps.pending->value : a.result;
            if (event.op != *ps.pending || event.result != result)
                throw Error(ErrorKind::ActionNotEnabled, "response does not match the enabled response");
            auto s = algorithm.on_respond(ps, p);
            s.pending.reset();
            next.processes[p] = std::move(s);
            shadow.pending_ids[p] = -1;
            prune_local(shadow, p, next.processes[p].data);
            return next;
        }
        case EventKind::Get:
        case EventKind::Update: {
            const Action a = enabled(config, algorithm, p);
            const ActionKind want = event.kind == EventKind::Get ? ActionKind::Get : ActionKind::Update;
            if (a.kind != want || a.object != event.object)
                throw Error(ErrorKind::ActionNotEnabled, describe(event) + " is not enabled");
            if (event.object < 0 || event.object >= static_cast<int>(config.objects.size()))
                throw Error(ErrorKind::ModelViolation, "object out of range");
            const auto& os = config.objects[event.object];
            if (event.kind == EventKind::Get) {
                next.processes[p] = get_semantics(algorithm, os, ps, p, event.object);
                if (p != kWriter)
                    propagate_on_get(shadow, p, next.processes[p].data, os.data, shadow.objects[event.object]);
            } else {
                auto out = update_semantics(algorithm, os, ps, p, event.object);
                next.objects[event.object] = std::move(out.object);
                next.processes[p] = std::move(out.process);
                if (out.stored && p == kWriter) {
                    const Label label{shadow.pending_ids[kWriter], ++shadow.write_k, ps.pending->value};
                    tag_on_update(shadow, event.object, label);
                } else if (next.objects[event.object].data != os.data) {
                    throw Error(ErrorKind::ModelViolation, "object data changed without a stored block");
                }
                if (p != kWriter) prune_local(shadow, p, next.processes[p].data);
            }
            return next;
        }
    }
    throw Error(ErrorKind::ActionNotEnabled, "unknown event kind");
}

WriterProjection project_writer_objects(const Configuration& config) {
    return {config.writer(), config.objects};
}

namespace {

void put(std::ostringstream& s, std::int64_t x) { s << x << ','; }

void put(std::ostringstream& s, const Bytes& b) {
    s << '[';
    for (auto x : b) s << static_cast<int>(x) << ' ';
    s << ']';
}

void put(std::ostringstream& s, const Meta& m) {
    s << '{';
    for (auto x : m.ints) put(s, x);
    s << '|';
    for (auto x : m.stamps) put(s, x);
    s << '}';
}

}  // namespace

std::string serialize_visible(const Configuration& config) {
    std::ostringstream s;
    for (const auto& p : config.processes) {
        s << 'P' << static_cast<int>(p.role);
        for (const auto& b : p.data) put(s, b.payload);
        put(s, p.meta);
        if (p.pending) s << (p.pending->kind == OpKind::Write ? 'W' : 'R') << p.pending->value;
        s << ';';
    }
    for (const auto& o : config.objects) {
        s << 'O';
        put(s, o.data.payload);
        put(s, o.meta);
        s << ';';
    }
    return s.str();
}

Run::Run(AlgorithmPtr algorithm) : Run(algorithm, initial_configuration(*algorithm)) {}

Run::Run(AlgorithmPtr algorithm, Configuration initial)
    : algorithm_(std::move(algorithm)), initial_(std::move(initial)) {}

const Event& Run::extend(const Event& e) {
    Event recorded = e;
    if (e.kind == EventKind::Respond && !final_config().processes.at(e.process).pending)
        throw Error(ErrorKind::ActionNotEnabled, process_name(e.process) + " has nothing to respond");
    if (e.kind == EventKind::Respond) recorded = enabled_event(final_config(), *algorithm_, e.process);
    auto c = apply_event(final_config(), recorded, *algorithm_);
    steps_.push_back({recorded, std::move(c)});
    return steps_.back().event;
}

const Event& Run::step(ProcessId p) { return extend(enabled_event(final_config(), *algorithm_, p)); }

void Run::append_unchecked(Event e, Configuration c) { steps_.push_back({std::move(e), std::move(c)}); }

void Run::truncate(std::size_t t) {
    if (t < steps_.size()) steps_.resize(t);
}

std::size_t final_of(const Run& run) { return run.size(); }

int run_solo(Run& run, ProcessId p, int cap) {
    int actions = 0;
    while (run.final_config().processes.at(p).pending) {
        const Event& e = run.step(p);
        if (e.kind == EventKind::Respond) break;
        if (++actions > cap)
            throw Error(ErrorKind::SearchExhausted, process_name(p) + " did not return within " + std::to_string(cap) + " solo actions");
    }
    return actions;
}

void complete_solo(Run& run, ProcessId p, const Invocation& op, int cap) {
    run.extend(Event::invoke(p, op));
    run_solo(run, p, cap);
}

Run start_run(AlgorithmPtr algorithm) {
    Run run(std::move(algorithm));
    complete_solo(run, kWriter, {OpKind::Write, 0});
    return run;
}

std::vector<Violation> validate_run(const Run& run) {
    std::vector<Violation> out;
    const auto& alg = run.algorithm();
    const int procs = alg.processes();
    std::vector<bool> pending(procs, false);
    bool init_done = false;
    bool init_started = false;

    for (std::size_t t = 1; t <= run.size(); ++t) {
        const Event& e = run.event(t);
        const auto& before = run.at(t - 1);
        if (e.process < 0 || e.process >= procs) {
            out.push_back({ViolationKind::IllegalTransition, t, "unknown process"});
            continue;
        }
        if (!init_done) {
            const bool is_init_invoke = !init_started && e.kind == EventKind::Invoke && e.process == kWriter &&
                                        e.op.kind == OpKind::Write && e.op.value == 0;
            if (!init_started && !is_init_invoke) {
                out.push_back({ViolationKind::InitNotFirst, t, "first event is not the dummy Write(0)"});
                init_done = true;  // report once
            } else if (init_started && e.process != kWriter) {
                out.push_back({ViolationKind::InitNotFirst, t, "event overlaps the dummy initialization"});
                init_done = true;
            }
            init_started = true;
            if (e.process == kWriter && e.kind == EventKind::Respond) init_done = true;
        }
        if (e.kind == EventKind::Invoke) {
            if (pending[e.process]) out.push_back({ViolationKind::MultiplePending, t, process_name(e.process)});
            if (e.process != kWriter && !before.processes[e.process].data.empty())
                out.push_back({ViolationKind::ReaderDataNotEmpty, t, process_name(e.process)});
            pending[e.process] = true;
        } else if (e.kind == EventKind::Respond) {
            if (!pending[e.process]) out.push_back({ViolationKind::RespondWithoutPending, t, process_name(e.process)});
            pending[e.process] = false;
        }
        for (ProcessId p = 1; p < procs && p < static_cast<int>(run.at(t).processes.size()); ++p)
            if (static_cast<int>(run.at(t).processes[p].data.size()) > alg.info().l_cap)
                out.push_back({ViolationKind::CapacityExceeded, t, process_name(p)});
        try {
            Event expected = e;
            if (e.kind == EventKind::Respond) expected = enabled_event(before, alg, e.process);
            if (expected != e || apply_event(before, e, alg) != run.at(t))
                out.push_back({ViolationKind::IllegalTransition, t, describe(e)});
        } catch (const Error& err) {
            out.push_back({ViolationKind::IllegalTransition, t, err.what()});
        }
    }
    return out;
}

std::string trace_line(std::size_t index, const Event& e) {
    std::ostringstream s;
    s << index << '\t' << process_name(e.process) << '\t' << kind_name(e.kind) << '\t'
      << (e.object == kNoObject ? std::string("-") : std::to_string(e.object)) << '\t'
      << (has_op(e) ? (e.op.kind == OpKind::Write ? "Write" : "Read") : "-") << '\t' << value_field(e);
    return s.str();
}

void write_trace(std::ostream& out, const Run& run) {
    for (std::size_t t = 1; t <= run.size(); ++t) out << trace_line(t, run.event(t)) << '\n';
}

std::vector<Event> read_trace(std::istream& in) {
    std::vector<Event> events;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream s(line);
        std::string idx, proc, kind, obj, op, val;
        if (!std::getline(s, idx, '\t') || !std::getline(s, proc, '\t') || !std::getline(s, kind, '\t') ||
            !std::getline(s, obj, '\t') || !std::getline(s, op, '\t') || !std::getline(s, val))
            throw Error(ErrorKind::ConfigError, "malformed trace line: " + line);
        Event e;
        if (proc == "writer") e.process = kWriter;
        else if (proc.rfind("reader", 0) == 0) e.process = std::stoi(proc.substr(6));
        else throw Error(ErrorKind::ConfigError, "unknown process " + proc);
        if (kind == "invoke") e.kind = EventKind::Invoke;
        else if (kind == "respond") e.kind = EventKind::Respond;
        else if (kind == "get") e.kind = EventKind::Get;
        else if (kind == "update") e.kind = EventKind::Update;
        else throw Error(ErrorKind::ConfigError, "unknown event kind " + kind);
        e.object = obj == "-" ? kNoObject : std::stoi(obj);
        if (op == "Write") e.op.kind = OpKind::Write;
        else if (op == "Read") e.op.kind = OpKind::Read;
        if (val != "-") {
            const auto v = static_cast<Value>(std::stoul(val));
            if (e.kind == EventKind::Invoke) e.op.value = v;
            else e.result = v;
        }
        if (e.kind == EventKind::Respond && e.op.kind == OpKind::Write) e.op.value = e.result;
        events.push_back(e);
    }
    return events;
}

}  // namespace dstore
