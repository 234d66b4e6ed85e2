#include "dstore/adversary.hpp"

#include <algorithm>
#include <iterator>

#include "dstore/bounds.hpp"

namespace dstore {

namespace {

std::set<Value> domain(const Algorithm& alg) {
    std::set<Value> out;
    for (Value v = 0; v < (Value{1} << alg.info().d_bits); ++v) out.insert(v);
    return out;
}

std::set<Value> minus(const std::set<Value>& a, const std::set<Value>& b) {
    std::set<Value> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

std::set<Value> intersect(const std::set<Value>& a, const std::set<Value>& b) {
    std::set<Value> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

bool pending(const Run& r, ProcessId p) { return r.final_config().processes.at(p).pending.has_value(); }

void finish(Run& r, ProcessId p, const AdversaryCaps& caps) {
    if (pending(r, p)) run_solo(r, p, caps.solo_cap);
}

void write_solo(Run& r, Value v, const AdversaryCaps& caps) {
    finish(r, kWriter, caps);
    complete_solo(r, kWriter, {OpKind::Write, v}, caps.solo_cap);
}

std::size_t count(const Run& r, const Subject& z) { return s_labels(r.final_config(), z).size(); }

void check_reader(const Algorithm& alg, ProcessId p, const std::set<ProcessId>& frozen) {
    if (p < 1 || p > alg.readers()) throw Error(ErrorKind::InvalidParams, "p must be a reader");
    if (frozen.count(p)) throw Error(ErrorKind::InvalidParams, "p must not be frozen");
}

void check_values(const Algorithm& alg, const std::set<Value>& values) {
    if (values.empty()) throw Error(ErrorKind::InvalidParams, "value set must be non-empty");
    const auto all = domain(alg);
    for (Value v : values)
        if (!all.count(v)) throw Error(ErrorKind::InvalidParams, "value outside the domain");
}

std::set<ProcessId> with(std::set<ProcessId> s, ProcessId p) {
    s.insert(p);
    return s;
}

// Common prologue of both burning searches: settle p and the writer, write the
// smallest value of V solo, and invoke a Read at p that takes no steps yet.
Run prologue(const Run& run, const std::set<Value>& values, ProcessId p, const AdversaryCaps& caps) {
    Run r = run;
    finish(r, p, caps);
    write_solo(r, *values.begin(), caps);
    r.extend(Event::read(p));
    return r;
}

PermanenceVerdict ask(const Run& r, const PermanenceQuery& q, bool constancy = false) {
    auto v = constancy ? is_constant(r, q) : is_permanent(r, q);
    if (v.status == PermanenceStatus::Inconclusive)
        throw Error(ErrorKind::SearchExhausted, "permanence of " + describe(q.subject) + " hit the state cap");
    return v;
}

void splice(Run& r, const std::vector<Event>& witness, const std::set<Value>& allowed,
            const std::set<ProcessId>& frozen, std::vector<Segment>& segments) {
    const std::size_t begin = r.size();
    for (const auto& e : witness) r.extend(e);
    segments.push_back({begin, r.size(), allowed, frozen});
}

[[noreturn]] void read_returned(const Event& e) {
    throw Error(ErrorKind::NotAchieved, "the blocked Read of " + process_name(e.process) + " returned " +
                                            std::to_string(e.result) + "; the algorithm is not conforming");
}

std::optional<Value> write_value(const Configuration& c, ProcessId p, std::int64_t id) {
    for (const auto& [payload, labels] : c.shadow.local.at(p))
        for (const auto& l : labels)
            if (l.write_id == id) return l.value;
    return std::nullopt;
}

}  // namespace

std::size_t AdversaryReport::verified_count() const {
    return static_cast<std::size_t>(std::count_if(iterations.begin(), iterations.end(), [](const Iteration& i) {
        return i.kind != "constant" && i.verified && i.verified_final;
    }));
}

std::vector<std::string> restriction_violations(const Run& run, const Segment& s) {
    std::vector<std::string> out;
    for (std::size_t t = s.begin + 1; t <= std::min(s.end, run.size()); ++t) {
        const Event& e = run.event(t);
        if (s.frozen.count(e.process)) out.push_back(trace_line(t, e) + "\tfrozen reader moved");
        if (e.kind == EventKind::Invoke && e.op.kind == OpKind::Write && !s.allowed.count(e.op.value))
            out.push_back(trace_line(t, e) + "\tWrite outside the permitted values");
    }
    return out;
}

WindowResult two_write_window(const Run& run, Value v1, Value v2, ProcessId p, const AdversaryCaps& caps) {
    const auto& alg = run.algorithm();
    if (v1 == v2) throw Error(ErrorKind::InvalidParams, "the two values must differ");
    check_values(alg, {v1, v2});
    check_reader(alg, p, {});
    if (pending(run, p)) throw Error(ErrorKind::InvalidParams, process_name(p) + " has a pending Read");

    const std::size_t tau = static_cast<std::size_t>(alg.info().tau);
    WindowResult out{run, 0, 0};
    Run& r = out.run;
    write_solo(r, v1, caps);
    r.extend(Event::write(v2));
    int actions = 0;
    for (;;) {
        if (count(r, Subject::value(v2)) >= tau - 1) break;
        const Event& e = r.step(kWriter);
        if (e.kind == EventKind::Respond)
            throw Error(ErrorKind::NotAchieved, "Write(" + std::to_string(v2) + ") returned with fewer than tau-1 labels");
        if (++actions > caps.solo_cap) throw Error(ErrorKind::SearchExhausted, "writer did not return");
    }
    if (count(r, Subject::value(v1)) < tau)
        throw Error(ErrorKind::NotAchieved, "fewer than tau labels of " + std::to_string(v1) + " at the window");
    out.t = r.size();
    LabelSet both = s_labels(r.final_config(), Subject::value(v1));
    both.merge(s_labels(r.final_config(), Subject::value(v2)));
    out.label_count = both.size();
    finish(r, kWriter, caps);
    return out;
}

BurnResult burning_lemma_general(const Run& run, const std::set<Value>& values, const std::set<ProcessId>& frozen,
                                 ProcessId p, const AdversaryCaps& caps, int l_cap) {
    const auto& alg = run.algorithm();
    check_values(alg, values);
    check_reader(alg, p, frozen);
    const int tau = alg.info().tau;
    const std::size_t cap = static_cast<std::size_t>(l_cap > 0 ? l_cap : alg.info().l_cap);

    BurnResult out;
    out.run = prologue(run, values, p, caps);
    Run& r = out.run;
    out.segments.push_back({run.size(), r.size(), values, frozen});
    const auto frozen_p = with(frozen, p);

    for (int steps = 0; steps < caps.reader_steps; ++steps) {
        const auto before = values_p(r.final_config(), p);
        const Event& e = r.step(p);
        if (e.kind == EventKind::Respond) read_returned(e);
        const auto held = intersect(values_p(r.final_config(), p), values);
        for (Value u : minus(held, before)) {
            // Identical blocks of several values can sit in one slot, so S may
            // exceed L; keep u and the smallest others.
            std::set<Value> burned{u};
            for (Value v : held)
                if (burned.size() < cap) burned.insert(v);
            const auto allowed = minus(values, burned);
            const PermanenceQuery q{Subject::value(u), tau - 1, allowed, frozen_p, caps.perm};
            auto verdict = ask(r, q);
            if (verdict.permanent()) {
                out.burned = burned;
                out.value = u;
                out.verdict = std::move(verdict);
                return out;
            }
            splice(r, verdict.witness, allowed, frozen_p, out.segments);
            ++out.splices;
        }
    }
    throw Error(ErrorKind::SearchExhausted, "no permanent value after " + std::to_string(caps.reader_steps) +
                                                " reader actions");
}

BurnWriteResult burning_lemma_common_write(const Run& run, const std::set<Value>& values,
                                           const std::set<ProcessId>& frozen, ProcessId p,
                                           const std::set<std::int64_t>& constant, const AdversaryCaps& caps) {
    const auto& alg = run.algorithm();
    check_values(alg, values);
    check_reader(alg, p, frozen);
    const int tau = alg.info().tau;

    BurnWriteResult out;
    out.run = prologue(run, values, p, caps);
    Run& r = out.run;
    out.segments.push_back({run.size(), r.size(), values, frozen});
    const auto frozen_p = with(frozen, p);

    for (int steps = 0; steps < caps.reader_steps; ++steps) {
        const auto before = writes_p(r.final_config(), p);
        const Event& e = r.step(p);
        if (e.kind == EventKind::Respond) read_returned(e);
        for (std::int64_t w : writes_p(r.final_config(), p)) {
            if (before.count(w) || constant.count(w)) continue;
            const auto value = write_value(r.final_config(), p, w);
            if (!value || !values.count(*value)) continue;
            const PermanenceQuery q{Subject::write(w), tau - 1, values, frozen_p, caps.perm};
            auto verdict = ask(r, q);
            if (verdict.permanent()) {
                out.write_id = w;
                out.value = *value;
                out.verdict = std::move(verdict);
                return out;
            }
            const std::size_t begin = r.size();
            splice(r, verdict.witness, values, frozen_p, out.segments);
            finish(r, kWriter, caps);
            out.segments.back() = {begin, r.size(), values, frozen_p};
            ++out.splices;
        }
    }
    throw Error(ErrorKind::SearchExhausted, "no permanent Write after " + std::to_string(caps.reader_steps) +
                                                " reader actions");
}

namespace {

long long required(const Algorithm& alg, Visibility vis, Flavor flavor, int l_cap) {
    const auto& i = alg.info();
    return block_bound({i.tau, i.d_bits, l_cap, i.readers, vis, flavor}).convert_to<long long>();
}

// Shared tail of the drivers: the window, final re-verification and tallies.
// The window's first value is recorded but not required to be permanent.
struct Driver {
    AdversaryReport report;
    const AdversaryCaps& caps;
    Run& r;
    std::set<Value> values;
    std::set<Value> accumulated;
    std::set<ProcessId> frozen;
    int tau;

    Driver(const AlgorithmPtr& alg, std::string scenario, const AdversaryCaps& c)
        : caps(c), r(report.run), values(domain(*alg)), tau(alg->info().tau) {
        report.scenario = std::move(scenario);
        r = start_run(alg);
    }

    void add_segments(const std::vector<Segment>& s) {
        report.segments.insert(report.segments.end(), s.begin(), s.end());
    }

    void invariant(bool ok, const std::string& what) {
        if (!ok) report.notes.push_back("construction invariant broken: " + what);
    }

    void window(ProcessId p) {
        if (values.size() < 2) {
            report.notes.push_back("fewer than two values left for the window");
            return;
        }
        const Value v1 = *values.begin();
        const Value v2 = *std::next(values.begin());
        const std::size_t begin = r.size();
        auto w = two_write_window(r, v1, v2, p, caps);
        r = std::move(w.run);
        report.segments.push_back({begin, r.size(), values, frozen});
        report.notes.push_back("window at t=" + std::to_string(w.t) + " with " + std::to_string(w.label_count) +
                               " labels of " + std::to_string(v1) + " and " + std::to_string(v2));
        Iteration it{static_cast<int>(report.iterations.size()) + 1, Subject::value(v1), tau - 1, "window",
                     false, false, minus(values, {v1}), frozen};
        it.verified = ask(r, {it.subject, it.labels, it.allowed, it.frozen, caps.perm}).permanent();
        report.iterations.push_back(std::move(it));
    }

    AdversaryReport finish() {
        for (auto& it : report.iterations) {
            if (it.kind == "constant") {
                it.verified_final = it.verified;
                continue;
            }
            auto allowed = it.kind == "window" ? it.allowed : values;
            it.verified_final = ask(r, {it.subject, it.labels, allowed, frozen, caps.perm}).permanent();
        }
        for (const auto& s : report.segments)
            for (auto& v : restriction_violations(r, s)) report.restriction_violations.push_back(std::move(v));
        report.peak_distinct_labels = peak_distinct_labels(r);
        const bool all_verified =
            std::all_of(report.iterations.begin(), report.iterations.end(),
                        [](const Iteration& i) { return i.kind == "window" || (i.verified && i.verified_final); });
        report.achieved = report.peak_distinct_labels >= static_cast<std::size_t>(report.bound_required) &&
                          all_verified && report.restriction_violations.empty() &&
                          std::none_of(report.notes.begin(), report.notes.end(), [](const std::string& n) {
                              return n.rfind("construction invariant", 0) == 0 || n.rfind("fewer than", 0) == 0;
                          });
        return std::move(report);
    }
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidParams, what);
}

}  // namespace

AdversaryReport drive_invisible_general(const AlgorithmPtr& algorithm, const AdversaryCaps& caps, int l_cap) {
    const auto& info = algorithm->info();
    require(info.visibility == Visibility::Invisible, "the invisible driver needs invisible reads");
    const int cap = l_cap > 0 ? l_cap : info.l_cap;
    Driver d(algorithm, "invisible_general/" + info.name, caps);
    d.report.bound_required = required(*algorithm, Visibility::Invisible, Flavor::General, cap);
    const int domain_size = 1 << info.d_bits;
    const int m = (domain_size - 1 + cap - 1) / cap - 1;
    const ProcessId p = 1;

    for (int k = 0; k < m; ++k) {
        const std::size_t begin = d.r.size();
        const auto before = d.values;
        auto burn = burning_lemma_general(d.r, d.values, {}, p, caps, cap);
        d.r = std::move(burn.run);
        d.add_segments(burn.segments);
        d.report.iterations.push_back({k + 1, Subject::value(burn.value), d.tau - 1, "burn", burn.verdict.permanent(),
                                       false, minus(before, burn.burned), {p}});
        d.accumulated.insert(burn.value);
        d.values = minus(d.values, burn.burned);
        // An invisible reader's steps cannot touch shared storage.
        finish(d.r, p, caps);
        finish(d.r, kWriter, caps);
        d.report.segments.push_back({begin, d.r.size(), before, {}});
        d.invariant(static_cast<int>(d.values.size()) >= domain_size - cap * (k + 1), "|V_k| >= 2^D - Lk");
        d.invariant(static_cast<int>(d.accumulated.size()) == k + 1, "|U_k| = k");
        d.invariant(intersect(d.values, d.accumulated).empty(), "V_k and U_k disjoint");
    }
    d.window(p);
    return d.finish();
}

AdversaryReport drive_visible_general(const AlgorithmPtr& algorithm, const AdversaryCaps& caps, int l_cap) {
    const auto& info = algorithm->info();
    require(info.readers >= 1, "at least one reader is needed");
    const int cap = l_cap > 0 ? l_cap : info.l_cap;
    Driver d(algorithm, "visible_general/" + info.name, caps);
    d.report.bound_required = required(*algorithm, Visibility::Visible, Flavor::General, cap);
    const int domain_size = 1 << info.d_bits;
    const int n_iter = std::min((domain_size - 1 + cap - 1) / cap, info.readers) - 1;

    for (int k = 0; k < n_iter; ++k) {
        const ProcessId p = k + 1;
        const std::size_t begin = d.r.size();
        const auto before = d.values;
        const auto frozen_before = d.frozen;
        auto burn = burning_lemma_general(d.r, d.values, d.frozen, p, caps, cap);
        d.r = std::move(burn.run);
        d.add_segments(burn.segments);
        d.frozen.insert(p);
        d.report.iterations.push_back({k + 1, Subject::value(burn.value), d.tau - 1, "burn", burn.verdict.permanent(),
                                       false, minus(before, burn.burned), d.frozen});
        d.accumulated.insert(burn.value);
        d.values = minus(d.values, burn.burned);
        finish(d.r, kWriter, caps);
        d.report.segments.push_back({begin, d.r.size(), before, frozen_before});
        d.invariant(static_cast<int>(d.values.size()) >= domain_size - cap * (k + 1), "|V_k| >= 2^D - Lk");
        d.invariant(static_cast<int>(d.accumulated.size()) == k + 1, "|U_k| = k");
        d.invariant(static_cast<int>(d.frozen.size()) == k + 1, "|Theta_k| = k");
        d.invariant(intersect(d.values, d.accumulated).empty(), "V_k and U_k disjoint");
    }
    d.window(n_iter + 1);
    return d.finish();
}

AdversaryReport drive_invisible_common_write(const AlgorithmPtr& algorithm, const AdversaryCaps& caps) {
    const auto& info = algorithm->info();
    require(info.visibility == Visibility::Invisible, "the invisible driver needs invisible reads");
    Driver d(algorithm, "invisible_common_write/" + info.name, caps);
    d.report.bound_required = required(*algorithm, Visibility::Invisible, Flavor::CommonWrite, info.l_cap);
    const int domain_size = 1 << info.d_bits;
    // More constant Writes than this would not fit in the objects.
    const int attempts = (info.objects + d.tau - 2) / (d.tau - 1) + 1;
    const ProcessId p = 1;

    for (int k = 0; k < domain_size; ++k) {
        const std::size_t begin = d.r.size();
        const auto before = d.values;
        std::set<std::int64_t> constant;
        std::optional<Value> found;
        for (int j = 0; j < attempts && !found; ++j) {
            auto burn = burning_lemma_common_write(d.r, d.values, {}, p, constant, caps);
            d.r = std::move(burn.run);
            d.add_segments(burn.segments);
            const PermanenceQuery q{Subject::write(burn.write_id), d.tau, d.values, {p}, caps.perm};
            auto verdict = ask(d.r, q);
            if (verdict.permanent()) {
                found = burn.value;
                break;
            }
            splice(d.r, verdict.witness, d.values, {p}, d.report.segments);
            const PermanenceQuery c{Subject::write(burn.write_id), d.tau - 1, d.values, {}, caps.perm};
            d.report.iterations.push_back({k + 1, Subject::write(burn.write_id), d.tau - 1, "constant",
                                           ask(d.r, c, true).permanent(), false, d.values, {}});
            constant.insert(burn.write_id);
        }
        if (!found) {
            d.report.notes.push_back("fewer than 2^D tau-permanent values: no permanent Write among " +
                                     std::to_string(attempts) + " attempts");
            break;
        }
        d.values.erase(*found);
        d.accumulated.insert(*found);
        const PermanenceQuery q{Subject::value(*found), d.tau, d.values, {}, caps.perm};
        d.report.iterations.push_back(
            {k + 1, q.subject, d.tau, "tau", ask(d.r, q).permanent(), false, d.values, {}});
        finish(d.r, p, caps);
        finish(d.r, kWriter, caps);
        d.report.segments.push_back({begin, d.r.size(), before, {}});
        d.invariant(static_cast<int>(d.values.size()) == domain_size - (k + 1), "|V_k| = 2^D - k");
        d.invariant(static_cast<int>(d.accumulated.size()) == k + 1, "|U_k| = k");
        d.invariant(intersect(d.values, d.accumulated).empty(), "V_k and U_k disjoint");
    }
    return d.finish();
}

AdversaryReport drive_visible_common_write(const AlgorithmPtr& algorithm, const AdversaryCaps& caps) {
    const auto& info = algorithm->info();
    require(info.readers >= 1, "at least one reader is needed");
    Driver d(algorithm, "visible_common_write/" + info.name, caps);
    d.report.bound_required = required(*algorithm, Visibility::Visible, Flavor::CommonWrite, info.l_cap);
    const int domain_size = 1 << info.d_bits;
    const int n_iter = std::min(domain_size - 1, info.readers) - 1;

    for (int k = 0; k < n_iter; ++k) {
        const ProcessId p = k + 1;
        const std::size_t begin = d.r.size();
        const auto before = d.values;
        const auto frozen_before = d.frozen;
        auto burn = burning_lemma_common_write(d.r, d.values, d.frozen, p, {}, caps);
        d.r = std::move(burn.run);
        d.add_segments(burn.segments);
        d.frozen.insert(p);
        d.values.erase(burn.value);
        d.accumulated.insert(burn.value);
        const PermanenceQuery q{Subject::value(burn.value), d.tau - 1, d.values, d.frozen, caps.perm};
        d.report.iterations.push_back(
            {k + 1, q.subject, d.tau - 1, "burn", ask(d.r, q).permanent(), false, d.values, d.frozen});
        finish(d.r, kWriter, caps);
        d.report.segments.push_back({begin, d.r.size(), before, frozen_before});
        d.invariant(static_cast<int>(d.values.size()) == domain_size - (k + 1), "|V_k| = 2^D - k");
        d.invariant(static_cast<int>(d.accumulated.size()) == k + 1, "|U_k| = k");
        d.invariant(static_cast<int>(d.frozen.size()) == k + 1, "|Theta_k| = k");
        d.invariant(intersect(d.values, d.accumulated).empty(), "V_k and U_k disjoint");
    }
    d.window(n_iter + 1);
    return d.finish();
}

nlohmann::json to_json(const AdversaryReport& r) {
    auto iterations = nlohmann::json::array();
    for (const auto& i : r.iterations)
        iterations.push_back({{"k", i.k},
                              {"subject", describe(i.subject)},
                              {"kind", i.kind},
                              {"labels", i.labels},
                              {"verified", i.verified && i.verified_final},
                              {"allowed", std::vector<Value>(i.allowed.begin(), i.allowed.end())},
                              {"frozen", std::vector<ProcessId>(i.frozen.begin(), i.frozen.end())}});
    return {{"scenario", r.scenario},
            {"bound_required", r.bound_required},
            {"peak_distinct_labels", r.peak_distinct_labels},
            {"achieved", r.achieved},
            {"iterations", iterations},
            {"events", r.run.size()},
            {"restriction_violations", r.restriction_violations},
            {"notes", r.notes},
            {"trace_file", r.trace_file}};
}

}  // namespace dstore
