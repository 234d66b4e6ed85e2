#include "dstore/permanence.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <unordered_map>

namespace dstore {

const char* to_string(PermanenceStatus s) {
    switch (s) {
        case PermanenceStatus::Permanent: return "permanent";
        case PermanenceStatus::Refuted: return "refuted";
        case PermanenceStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

void validate(const Run& run, const PermanenceQuery& q, bool constancy) {
    const auto& alg = run.algorithm();
    if (q.k < 1) throw Error(ErrorKind::MalformedQuery, "k must be at least 1");
    for (auto p : q.frozen)
        if (p < 1 || p > alg.readers()) throw Error(ErrorKind::MalformedQuery, "frozen set may only hold readers");
    const Value domain = Value{1} << alg.info().d_bits;
    for (auto v : q.allowed)
        if (v >= domain) throw Error(ErrorKind::MalformedQuery, "allowed value outside the domain");
    if (constancy && q.subject.kind != SubjectKind::Write)
        throw Error(ErrorKind::MalformedQuery, "constancy is defined for Writes only");
    if (q.subject.kind == SubjectKind::Value && (q.subject.id < 0 || q.subject.id >= domain))
        throw Error(ErrorKind::MalformedQuery, "subject value outside the domain");
}

struct Context {
    const Algorithm& alg;
    const PermanenceQuery& q;
    bool constancy;
    LabelSet original;
    std::vector<ProcessId> actors;  // processes that may move, in id order

    Context(const Run& run, const PermanenceQuery& query, bool constant, bool include_invisible)
        : alg(run.algorithm()), q(query), constancy(constant), original(s_labels(run.final_config(), query.subject)) {
        actors.push_back(kWriter);
        const bool readers_matter = include_invisible || alg.info().visibility == Visibility::Visible;
        if (readers_matter)
            for (ProcessId p = 1; p <= alg.readers(); ++p)
                if (!q.frozen.count(p)) actors.push_back(p);
    }

    bool violated(const Configuration& c) const {
        const LabelSet now = s_labels(c, q.subject);
        if (constancy) return now != original || now.size() != static_cast<std::size_t>(q.k);
        return now.size() < static_cast<std::size_t>(q.k);
    }

    std::vector<Event> successors(const Configuration& c) const {
        std::vector<Event> out;
        for (ProcessId p : actors) {
            if (c.processes[p].pending) out.push_back(enabled_event(c, alg, p));
            else if (p == kWriter)
                for (Value v : q.allowed) out.push_back(Event::write(v));
            else out.push_back(Event::read(p));
        }
        return out;
    }

    int object_tag(const LabelSet& labels) const {
        for (const auto& l : labels) {
            if (!q.subject.matches(l)) continue;
            if (!constancy) return 1;
            const auto it = original.find(l);
            return it == original.end() ? -1 : 1 + static_cast<int>(std::distance(original.begin(), it));
        }
        return 0;
    }

    // Everything that determines the future of the explored processes and the
    // subject's shared labels. Timestamps are replaced by their ranks.
    std::string key(const Configuration& c) const {
        std::vector<std::int64_t> stamps;
        const auto collect = [&](const Meta& m) { stamps.insert(stamps.end(), m.stamps.begin(), m.stamps.end()); };
        for (ProcessId p : actors) collect(c.processes[p].meta);
        for (const auto& o : c.objects) collect(o.meta);
        std::sort(stamps.begin(), stamps.end());
        stamps.erase(std::unique(stamps.begin(), stamps.end()), stamps.end());
        const auto rank = [&](std::int64_t s) {
            if (s <= 0) return s;
            return static_cast<std::int64_t>(std::lower_bound(stamps.begin(), stamps.end(), s) - stamps.begin()) +
                   (stamps.front() <= 0 ? 0 : 1);
        };

        std::string out;
        out.reserve(256);
        const auto put = [&](std::int64_t x) {
            char buf[24];
            const auto end = std::to_chars(buf, buf + sizeof buf, x).ptr;
            out.append(buf, end);
            out += ',';
        };
        const auto put_meta = [&](const Meta& m) {
            for (auto x : m.ints) put(x);
            out += '|';
            for (auto x : m.stamps) put(rank(x));
        };
        const auto put_bytes = [&](const Bytes& b) {
            out += '[';
            out.append(reinterpret_cast<const char*>(b.data()), b.size());
            out += ']';
        };
        for (ProcessId p : actors) {
            const auto& ps = c.processes[p];
            out += 'P';
            out += static_cast<char>(ps.data.size());
            for (const auto& b : ps.data) put_bytes(b.payload);
            put_meta(ps.meta);
            if (ps.pending) {
                out += ps.pending->kind == OpKind::Write ? 'W' : 'R';
                put(static_cast<std::int64_t>(ps.pending->value));
            }
            out += ';';
        }
        for (std::size_t o = 0; o < c.objects.size(); ++o) {
            out += 'O';
            out += static_cast<char>(c.objects[o].data.payload.size());
            put_bytes(c.objects[o].data.payload);
            put_meta(c.objects[o].meta);
            out += '#';
            put(object_tag(c.shadow.objects[o]));
        }
        if (q.subject.kind == SubjectKind::Write) out += c.shadow.pending_ids[kWriter] == q.subject.id ? 'S' : 'N';
        return out;
    }
};

PermanenceVerdict closure(const Run& run, const PermanenceQuery& q, bool constancy) {
    validate(run, q, constancy);
    const Context ctx(run, q, constancy, false);
    PermanenceVerdict verdict;
    if (ctx.violated(run.final_config())) {
        verdict.status = PermanenceStatus::Refuted;
        verdict.states = 1;
        return verdict;
    }

    // Configurations are kept only while on the frontier; the tree of
    // (parent, event) pairs is enough to rebuild a witness.
    struct Node {
        std::size_t parent;
        Event event;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, std::size_t> seen;
    std::deque<std::pair<std::size_t, Configuration>> frontier;
    nodes.push_back({0, {}});
    seen.emplace(ctx.key(run.final_config()), 0);
    frontier.emplace_back(0, run.final_config());

    while (!frontier.empty()) {
        auto [at, config] = std::move(frontier.front());
        frontier.pop_front();
        for (const Event& e : ctx.successors(config)) {
            Configuration next = apply_event(config, e, ctx.alg);
            auto key = ctx.key(next);
            if (seen.count(key)) continue;
            const bool bad = ctx.violated(next);
            nodes.push_back({at, e});
            const std::size_t id = nodes.size() - 1;
            seen.emplace(std::move(key), id);
            if (bad) {
                for (std::size_t n = id; n != 0; n = nodes[n].parent) verdict.witness.push_back(nodes[n].event);
                std::reverse(verdict.witness.begin(), verdict.witness.end());
                verdict.status = PermanenceStatus::Refuted;
                verdict.states = nodes.size();
                return verdict;
            }
            if (nodes.size() >= q.caps.states) {
                verdict.status = PermanenceStatus::Inconclusive;
                verdict.states = nodes.size();
                return verdict;
            }
            frontier.emplace_back(id, std::move(next));
        }
    }
    verdict.status = PermanenceStatus::Permanent;
    verdict.states = nodes.size();
    return verdict;
}

}  // namespace

PermanenceVerdict is_permanent(const Run& run, const PermanenceQuery& q) { return closure(run, q, false); }

PermanenceVerdict is_constant(const Run& run, const PermanenceQuery& q) { return closure(run, q, true); }

PermanenceVerdict brute_force_permanence(const Run& run, const PermanenceQuery& q, int horizon, bool constancy) {
    validate(run, q, constancy);
    const Context ctx(run, q, constancy, true);
    PermanenceVerdict verdict;
    verdict.status = PermanenceStatus::Permanent;
    std::vector<Event> path;

    const auto dfs = [&](auto&& self, const Configuration& c, int left) -> bool {
        ++verdict.states;
        if (ctx.violated(c)) {
            verdict.status = PermanenceStatus::Refuted;
            verdict.witness = path;
            return true;
        }
        if (left == 0) return false;
        for (const Event& e : ctx.successors(c)) {
            path.push_back(e);
            const bool found = self(self, apply_event(c, e, ctx.alg), left - 1);
            path.pop_back();
            if (found) return true;
        }
        return false;
    };
    dfs(dfs, run.final_config(), std::max(horizon, 0));
    return verdict;
}

Run extended(const Run& run, const std::vector<Event>& events) {
    Run out = run;
    for (const auto& e : events) out.extend(e);
    return out;
}

nlohmann::json to_json(const PermanenceQuery& q) {
    return {{"subject", describe(q.subject)},
            {"k", q.k},
            {"allowed", std::vector<Value>(q.allowed.begin(), q.allowed.end())},
            {"frozen", std::vector<ProcessId>(q.frozen.begin(), q.frozen.end())}};
}

nlohmann::json to_json(const PermanenceVerdict& v) {
    auto witness = nlohmann::json::array();
    for (std::size_t i = 0; i < v.witness.size(); ++i) witness.push_back(trace_line(i + 1, v.witness[i]));
    return {{"status", to_string(v.status)}, {"states", v.states}, {"witness", witness}};
}

}  // namespace dstore
