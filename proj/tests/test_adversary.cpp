#include "doctest.h"

#include "dstore/adversary.hpp"
#include "dstore/algorithms.hpp"
#include "dstore/bounds.hpp"
#include "dstore/checkers.hpp"
#include "support.hpp"

using namespace dstore;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::ConfigError;
}

std::set<Value> domain(int d_bits) {
    std::set<Value> out;
    for (Value v = 0; v < (Value{1} << d_bits); ++v) out.insert(v);
    return out;
}

// Independent count of labels of v1 or v2 in shared storage at time t.
std::size_t labels_of(const Run& r, std::size_t t, Value v1, Value v2) {
    std::size_t n = 0;
    for (const auto& set : r.at(t).shadow.objects)
        for (const auto& l : set) n += l.value == v1 || l.value == v2;
    return n;
}

void check_report_run(const AdversaryReport& rep) {
    const Run& r = rep.run;
    CHECK(validate_run(r).empty());
    CHECK(check_regularity(r).passed());
    CHECK(check_label_laws(r).passed());
    CHECK(rep.restriction_violations.empty());
    for (const auto& s : rep.segments) CHECK(restriction_violations(r, s).empty());
    CHECK(rep.peak_distinct_labels == peak_distinct_labels(r));
    CHECK(rep.peak_distinct_labels <= static_cast<std::size_t>(r.algorithm().objects()));
}

}  // namespace

TEST_SUITE("adversary") {

TEST_CASE("two-Write window") {
    for (int tau : {2, 3})
        for (const auto& alg : {make_coded_store_invisible(tau, 2), make_replicated_store(tau, 2)}) {
            CAPTURE(alg->info().name);
            CAPTURE(tau);
            const auto w = two_write_window(start_run(alg), 0, 1, 1);
            CHECK(w.label_count >= static_cast<std::size_t>(2 * tau - 1));
            CHECK(labels_of(w.run, w.t, 0, 1) == w.label_count);
            CHECK(s_labels(w.run.at(w.t), Subject::value(0)).size() >= static_cast<std::size_t>(tau));
            CHECK(s_labels(w.run.at(w.t), Subject::value(1)).size() >= static_cast<std::size_t>(tau - 1));
        }
    const auto alg = make_coded_store_invisible(2, 2);
    CHECK(kind_of([&] { two_write_window(start_run(alg), 1, 1, 1); }) == ErrorKind::InvalidParams);
    Run busy = start_run(alg);
    busy.extend(Event::read(1));
    CHECK(kind_of([&] { two_write_window(busy, 0, 1, 1); }) == ErrorKind::InvalidParams);
}

TEST_CASE("burning a single value") {
    const auto alg = make_replicated_store(2, 2);
    const auto b = burning_lemma_general(start_run(alg), {2}, {}, 1);
    CHECK(b.burned == std::set<Value>{2});
    CHECK(b.value == 2);
    CHECK(b.verdict.permanent());
    CHECK(is_permanent(b.run, {Subject::value(2), 1, {}, {1}, {}}).permanent());
}

TEST_CASE("burning over the whole domain") {
    for (const auto& alg : {make_replicated_store(2, 2), make_coded_store_invisible(2, 2)}) {
        CAPTURE(alg->info().name);
        const auto values = domain(2);
        const auto b = burning_lemma_general(start_run(alg), values, {}, 1);
        CHECK(b.burned.size() >= 1);
        CHECK(b.burned.size() <= static_cast<std::size_t>(alg->info().l_cap));
        CHECK(b.burned.contains(b.value));
        std::set<Value> rest;
        std::set_difference(values.begin(), values.end(), b.burned.begin(), b.burned.end(), std::inserter(rest, rest.end()));
        CHECK(is_permanent(b.run, {Subject::value(b.value), 1, rest, {1}, {}}).permanent());
        for (const auto& s : b.segments) CHECK(restriction_violations(b.run, s).empty());
    }
}

TEST_CASE("burning per Write") {
    const auto alg = make_coded_store_invisible(2, 2);
    const Run start = start_run(alg);
    const auto dummy = start.at(1).shadow.pending_ids[kWriter];
    const auto values = domain(2);
    REQUIRE(is_constant(start, {Subject::write(dummy), 2, values, {}, {}}).permanent());

    const auto b = burning_lemma_common_write(start, values, {}, 1, {});
    CHECK_FALSE(b.run.final_config().writer().pending);
    CHECK(is_permanent(b.run, {Subject::write(b.write_id), 1, values, {1}, {}}).permanent());

    CHECK(kind_of([&] { burning_lemma_common_write(start, values, {1}, 1, {}); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { burning_lemma_general(start, {}, {}, 1); }) == ErrorKind::InvalidParams);
}

TEST_CASE("restriction violations are found syntactically") {
    const auto alg = make_replicated_store(2, 2);
    Run r = test::write_solo(start_run(alg), 1);
    const std::size_t begin = r.size();
    r.extend(Event::read(1));
    r.step(1);
    r = test::write_solo(r, 3);
    const Segment ok{begin, r.size(), {1, 3}, {}};
    CHECK(restriction_violations(r, ok).empty());
    CHECK(restriction_violations(r, {begin, r.size(), {1}, {}}).size() == 1);
    CHECK(restriction_violations(r, {begin, r.size(), {1, 3}, {1}}).size() == 2);
}

TEST_CASE("invisible general driver") {
    const auto alg = make_replicated_store(2, 2);
    const auto rep = drive_invisible_general(alg);
    CHECK(rep.bound_required == 5);
    CHECK(rep.achieved);
    CHECK(rep.peak_distinct_labels >= 5);
    CHECK(rep.verified_count() >= 3);
    check_report_run(rep);

    CHECK(drive_invisible_general(make_replicated_store(2, 1)).bound_required == 3);
    // L covering all other values leaves only the window.
    const auto wide = drive_invisible_general(make_replicated_store(3, 2, 1, 3));
    CHECK(wide.bound_required == 5);
    CHECK(wide.achieved);
}

TEST_CASE("invisible common-write driver") {
    const auto rep = drive_invisible_common_write(make_coded_store_invisible(2, 2));
    CHECK(rep.bound_required == 8);
    CHECK(rep.achieved);
    CHECK(rep.peak_distinct_labels == 8);
    CHECK(rep.verified_count() == 4);
    // One tau-permanent value per iteration, covering the domain; constant
    // iterations are about Writes.
    std::set<std::int64_t> values;
    for (const auto& it : rep.iterations) {
        if (it.kind == "constant") CHECK(it.subject.kind == SubjectKind::Write);
        if (it.kind != "tau") continue;
        CHECK(it.subject.kind == SubjectKind::Value);
        CHECK(it.labels == 2);
        values.insert(it.subject.id);
    }
    CHECK(values == std::set<std::int64_t>{0, 1, 2, 3});
    check_report_run(rep);
    CHECK(check_common_write(rep.run, 2).passed());

    const auto j = to_json(rep);
    for (const char* key : {"scenario", "bound_required", "peak_distinct_labels", "achieved", "iterations", "trace_file"})
        CHECK(j.contains(key));
}

TEST_CASE("visible general driver with a buffer large enough for the whole domain") {
    const auto rep = drive_visible_general(make_peterson_buffer(2, 2, 2));
    CHECK(rep.bound_required == block_bound({2, 2, 4, 2, Visibility::Visible, Flavor::General}));
    CHECK(rep.achieved);
    check_report_run(rep);
}

}  // TEST_SUITE
