#include "dstore/checkers.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "dstore/labels.hpp"

namespace dstore {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

void Verdict::fail(Witness w) {
    status = Status::Fail;
    witnesses.push_back(std::move(w));
}

nlohmann::json to_json(const Verdict& v) {
    auto ws = nlohmann::json::array();
    for (const auto& w : v.witnesses) ws.push_back({{"t", w.t}, {"process", w.process}, {"note", w.note}});
    return {{"check", v.check}, {"status", to_string(v.status)}, {"witnesses", ws}};
}

namespace {

std::vector<Event> prefix(const Run& run, std::size_t t) {
    std::vector<Event> out;
    for (std::size_t i = 1; i <= t; ++i) out.push_back(run.event(i));
    return out;
}

void check_tau(int tau) {
    if (tau <= 1) throw Error(ErrorKind::InvalidTau, "tau must exceed 1");
}

}  // namespace

std::vector<Value> legal_read_values(const Run& run, std::size_t t) {
    const Event& resp = run.event(t);
    const ProcessId p = resp.process;
    std::size_t invoked = 0;
    for (std::size_t i = t; i-- > 1;) {
        const Event& e = run.event(i);
        if (e.process == p && e.kind == EventKind::Invoke) {
            invoked = i;
            break;
        }
    }
    constexpr auto kNever = std::numeric_limits<std::size_t>::max();
    struct W {
        std::size_t inv, resp;
        Value value;
    };
    std::vector<W> writes;
    for (std::size_t i = 1; i <= run.size(); ++i) {
        const Event& e = run.event(i);
        if (e.process != kWriter) continue;
        if (e.kind == EventKind::Invoke) writes.push_back({i, kNever, e.op.value});
        else if (e.kind == EventKind::Respond && !writes.empty()) writes.back().resp = i;
    }
    std::vector<Value> out;
    const W* last = nullptr;
    for (const auto& w : writes) {
        if (w.resp < invoked && (!last || w.resp > last->resp)) last = &w;
        if (w.inv < t && (w.resp == kNever || w.resp > invoked)) out.push_back(w.value);
    }
    if (last) out.push_back(last->value);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Witness> regularity_at(const Run& run, std::size_t t) {
    const Event& e = run.event(t);
    if (e.kind != EventKind::Respond || e.op.kind != OpKind::Read) return std::nullopt;
    const auto legal = legal_read_values(run, t);
    if (std::binary_search(legal.begin(), legal.end(), e.result)) return std::nullopt;
    std::string note = "Read returned " + std::to_string(e.result) + "; legal:";
    for (auto v : legal) note += " " + std::to_string(v);
    return Witness{t, e.process, note, prefix(run, t)};
}

Verdict check_regularity(const Run& run) {
    Verdict v{"regularity"};
    for (std::size_t t = 1; t <= run.size(); ++t)
        if (auto w = regularity_at(run, t)) v.fail(*w);
    return v;
}

std::optional<Witness> disintegration_at(const Configuration& c, const Algorithm& alg, int tau, bool common_write,
                                         std::size_t t) {
    for (ProcessId p = 1; p < static_cast<int>(c.processes.size()); ++p) {
        const auto& ps = c.processes[p];
        if (!ps.pending || ps.pending->kind != OpKind::Read) continue;
        const Action a = enabled(c, alg, p);
        if (a.kind != ActionKind::Respond) continue;
        const LabelSet labels = l_labels(c, p, Subject::value(a.result));
        std::size_t have = labels.size();
        if (common_write) {
            std::map<std::int64_t, std::size_t> per_write;
            for (const auto& l : labels) ++per_write[l.write_id];
            have = 0;
            for (const auto& [w, n] : per_write) have = std::max(have, n);
        }
        if (have < static_cast<std::size_t>(tau))
            return Witness{t, p,
                           "return of " + std::to_string(a.result) + " enabled with " + std::to_string(have) +
                               (common_write ? " labels of one Write" : " labels"),
                           {}};
    }
    return std::nullopt;
}

namespace {

Verdict disintegration_run(const Run& run, int tau, bool common) {
    check_tau(tau);
    Verdict v{common ? "common_write" : "tau_disintegration"};
    for (std::size_t t = 0; t <= run.size(); ++t)
        if (auto w = disintegration_at(run.at(t), run.algorithm(), tau, common, t)) {
            w->trace = prefix(run, t);
            v.fail(*w);
        }
    return v;
}

LabelSet everything_at(const Configuration& c, ProcessId p) {
    LabelSet out = shared_labels(c);
    for (const auto& [payload, set] : c.shadow.local[p]) out.insert(set.begin(), set.end());
    return out;
}

}  // namespace

Verdict check_tau_disintegrated(const Run& run, int tau) { return disintegration_run(run, tau, false); }
Verdict check_common_write(const Run& run, int tau) { return disintegration_run(run, tau, true); }

std::optional<Witness> label_laws_at(const Run& run, std::size_t t) {
    const Configuration& c = run.at(t);
    const auto fail = [&](ProcessId p, std::string note) { return Witness{t, p, std::move(note), prefix(run, t)}; };

    if (t >= 1 && run.event(t).process != kWriter) {
        const Configuration& before = run.at(t - 1);
        for (ProcessId q = 1; q < static_cast<int>(c.processes.size()); ++q) {
            const LabelSet now = everything_at(c, q);
            const LabelSet prev = everything_at(before, q);
            if (!std::includes(prev.begin(), prev.end(), now.begin(), now.end()))
                return fail(q, "All-labels grew on a reader step");
        }
    }
    if (distinct_shared_labels(c) > c.objects.size())
        return fail(kWriter, "more distinct labels than objects");

    std::map<std::int64_t, Value> write_value;
    std::map<Label, const Bytes*> tagged;
    const auto record = [&](const Label& l, const Bytes& payload) -> std::optional<std::string> {
        auto [wit, fresh] = write_value.emplace(l.write_id, l.value);
        if (!fresh && wit->second != l.value) return "labels of one Write disagree on its value";
        auto [pit, new_label] = tagged.emplace(l, &payload);
        if (!new_label && *pit->second != payload) return "one label tags two different payloads";
        return std::nullopt;
    };
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        for (const auto& l : c.shadow.objects[o])
            if (auto err = record(l, c.objects[o].data.payload)) return fail(kWriter, *err);
    for (ProcessId p = 1; p < static_cast<int>(c.shadow.local.size()); ++p)
        for (const auto& [payload, set] : c.shadow.local[p])
            for (const auto& l : set)
                if (auto err = record(l, payload)) return fail(p, *err);
    return std::nullopt;
}

Verdict check_label_laws(const Run& run) {
    Verdict v{"label_laws"};
    for (std::size_t t = 0; t <= run.size(); ++t)
        if (auto w = label_laws_at(run, t)) v.fail(*w);
    return v;
}

std::optional<int> solo_completion(const Run& run, ProcessId p, int cap) {
    return solo_completion(run.final_config(), run.algorithm(), p, cap);
}

std::optional<int> solo_completion(Configuration c, const Algorithm& alg, ProcessId p, int cap) {
    int actions = 0;
    while (true) {
        const Event e = enabled_event(c, alg, p);
        if (e.kind == EventKind::Respond) return actions;
        if (++actions > cap) return std::nullopt;
        c = apply_event(c, e, alg);
    }
}

namespace {

std::optional<Witness> wait_freedom_at(const Run& run, const std::vector<int>& taken, int budget) {
    const auto& c = run.final_config();
    for (ProcessId p = 0; p < static_cast<int>(c.processes.size()); ++p) {
        if (!c.processes[p].pending) continue;
        const int left = budget - taken[p];
        if (!solo_completion(run, p, std::max(left, 0)))
            return Witness{run.size(), p,
                           process_name(p) + " does not return alone within " + std::to_string(budget) + " own actions",
                           prefix(run, run.size())};
    }
    return std::nullopt;
}

}  // namespace

Verdict check_wait_freedom_bounded(const AlgorithmPtr& algorithm, int budget, const std::vector<Workload>& workloads,
                                   const ExploreCaps& caps) {
    Verdict v{"bounded_wait_freedom"};
    if (budget < 1) throw Error(ErrorKind::InvalidParams, "budget must be positive");
    bool capped = false;
    for (const auto& wl : workloads) {
        const auto stats = explore(algorithm, wl, caps, [&](const Run& run, const std::vector<int>& taken) {
            if (auto w = wait_freedom_at(run, taken, budget)) {
                v.fail(*w);
                return false;
            }
            return true;
        });
        capped = capped || stats.capped;
        if (!v.passed()) return v;
    }
    if (capped) v.status = Status::Inconclusive;
    return v;
}

Verdict check_wait_freedom_on_run(const Run& run, int budget) {
    if (budget < 1) throw Error(ErrorKind::InvalidParams, "budget must be positive");
    Verdict v{"bounded_wait_freedom"};
    const auto& alg = run.algorithm();
    std::vector<int> taken(alg.processes(), 0);
    for (std::size_t t = 0; t <= run.size(); ++t) {
        if (t > 0) {
            const Event& e = run.event(t);
            if (e.kind == EventKind::Invoke) taken[e.process] = 0;
            else if (e.kind != EventKind::Respond) ++taken[e.process];
        }
        const auto& c = run.at(t);
        for (ProcessId p = 0; p < alg.processes(); ++p) {
            if (!c.processes[p].pending) continue;
            if (!solo_completion(c, alg, p, std::max(budget - taken[p], 0))) {
                v.fail({t, p, process_name(p) + " does not return alone within " + std::to_string(budget) + " own actions",
                        prefix(run, t)});
                return v;
            }
        }
    }
    return v;
}

bool SweepReport::passed(const Algorithm& alg) const {
    const Verdict& dis = alg.info().flavor == Flavor::CommonWrite ? common_write : disintegration;
    return !capped && regularity.passed() && dis.passed() && wait_freedom.passed() && label_laws.passed();
}

SweepReport sweep(const AlgorithmPtr& algorithm, const SweepOptions& options) {
    SweepReport r;
    const auto& info = algorithm->info();
    const auto workloads = two_write_workloads(info.d_bits, options.reads_per_reader);
    r.workloads = workloads.size();
    const int budget = options.budget > 0 ? options.budget : info.solo_budget;
    const auto keep = [](Verdict& v, std::optional<Witness> w) {
        if (w && v.witnesses.empty()) v.fail(std::move(*w));
        return !w;
    };
    for (const auto& wl : workloads) {
        const auto stats = explore(algorithm, wl, options.caps, [&](const Run& run, const std::vector<int>& taken) {
            const std::size_t t = run.size();
            const auto& c = run.final_config();
            bool ok = keep(r.regularity, regularity_at(run, t));
            auto dis = disintegration_at(c, *algorithm, info.tau, false, t);
            auto cw = disintegration_at(c, *algorithm, info.tau, true, t);
            for (auto* w : {&dis, &cw})
                if (*w) (*w)->trace = prefix(run, t);
            const bool dis_ok = keep(r.disintegration, dis);
            const bool cw_ok = keep(r.common_write, cw);
            ok = (info.flavor == Flavor::CommonWrite ? cw_ok : dis_ok) && ok;
            ok = keep(r.wait_freedom, wait_freedom_at(run, taken, budget)) && ok;
            ok = keep(r.label_laws, label_laws_at(run, t)) && ok;
            r.peak_labels = std::max(r.peak_labels, distinct_shared_labels(c));
            return ok || !options.stop_on_fail;
        });
        r.nodes += stats.nodes;
        r.capped = r.capped || stats.capped;
        if (stats.stopped) break;
    }
    if (r.capped)
        for (auto* v : {&r.regularity, &r.disintegration, &r.common_write, &r.wait_freedom, &r.label_laws})
            if (v->passed()) v->status = Status::Inconclusive;
    return r;
}

nlohmann::json to_json(const SweepReport& r) {
    return {{"workloads", r.workloads},
            {"nodes", r.nodes},
            {"peak_distinct_labels", r.peak_labels},
            {"capped", r.capped},
            {"verdicts",
             {to_json(r.regularity), to_json(r.disintegration), to_json(r.common_write), to_json(r.wait_freedom),
              to_json(r.label_laws)}}};
}

}  // namespace dstore
