#include "doctest.h"

#include "dstore/algorithms.hpp"
#include "dstore/labels.hpp"
#include "dstore/permanence.hpp"
#include "support.hpp"

using namespace dstore;

namespace {

std::int64_t write_id_at(const Run& r, std::size_t t) { return r.at(t).shadow.pending_ids[kWriter]; }

// Time of the last Write invocation in r.
std::size_t last_write_time(const Run& r) {
    for (std::size_t t = r.size(); t >= 1; --t)
        if (r.event(t).kind == EventKind::Invoke && r.event(t).process == kWriter) return t;
    return 0;
}

std::int64_t last_write(const Run& r) { return write_id_at(r, last_write_time(r)); }

PermanenceQuery query(Subject z, int k, std::set<Value> allowed, std::set<ProcessId> frozen = {}) {
    return {z, k, std::move(allowed), std::move(frozen), {}};
}

std::vector<Run> prefixes(const AlgorithmPtr& alg) {
    std::vector<Run> out;
    Run r = start_run(alg);
    out.push_back(r);
    r.extend(Event::write(1));
    r.step(kWriter);
    out.push_back(r);
    r.extend(Event::read(1));
    r.step(1);
    out.push_back(r);
    run_solo(r, kWriter);
    out.push_back(r);
    return out;
}

const std::vector<std::set<Value>> kAllowed{{}, {0}, {1}, {0, 1}};

bool subset(const std::set<Value>& a, const std::set<Value>& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_SUITE("permanence") {

TEST_CASE("a value with no labels is refuted by the empty extension") {
    const Run r = start_run(make_toy_overwrite(2));
    const auto v = is_permanent(r, query(Subject::value(1), 1, {0, 1}));
    CHECK(v.refuted());
    CHECK(v.witness.empty());
}

TEST_CASE("a completed coded Write keeps tau labels under any later Writes") {
    const auto alg = make_coded_store_invisible(2, 2);
    const Run r = test::write_solo(start_run(alg), 2);
    const auto w = last_write(r);
    CHECK(is_permanent(r, query(Subject::write(w), 2, {0, 1, 3})).permanent());
    CHECK(is_permanent(r, query(Subject::write(w), 2, {0, 1, 2, 3})).permanent());
    CHECK(is_permanent(r, query(Subject::value(2), 2, {0, 1, 2, 3})).permanent());
    CHECK(is_permanent(r, query(Subject::write(w), 3, {})).refuted());
}

TEST_CASE("overwriting refutes permanence with a replayable witness") {
    const auto alg = make_toy_overwrite(2);
    const Run r = test::write_solo(start_run(alg), 1);
    const auto v = is_permanent(r, query(Subject::value(1), 1, {0}));
    REQUIRE(v.refuted());
    const Run after = extended(r, v.witness);
    CHECK(s_labels(after.final_config(), Subject::value(1)).empty());
    // Shortest: invoke Write(0) and overwrite both objects, no response needed.
    CHECK(v.witness.size() == 3);
    CHECK(is_permanent(r, query(Subject::value(1), 1, {1})).permanent());
}

TEST_CASE("constancy") {
    const auto alg = make_toy_rewrite();
    Run r = start_run(alg);
    r.extend(Event::write(1));
    r.step(kWriter);
    const auto w = last_write(r);
    // Completing the pending Write relabels object 1.
    CHECK(is_constant(r, query(Subject::write(w), 1, {0})).refuted());
    run_solo(r, kWriter);
    CHECK(is_constant(r, query(Subject::write(w), 1, {0})).permanent());
    CHECK(is_constant(r, query(Subject::write(w), 1, {1})).refuted());
    CHECK(is_constant(r, query(Subject::write(w), 2, {0})).refuted());
    CHECK_THROWS_AS(is_constant(r, query(Subject::value(1), 1, {0})), Error);
}

TEST_CASE("malformed queries") {
    const Run r = start_run(make_toy_overwrite(2));
    for (const auto& q : {query(Subject::value(0), 0, {}), query(Subject::value(0), 1, {2}),
                          query(Subject::value(5), 1, {}), query(Subject::value(0), 1, {}, {0}),
                          query(Subject::value(0), 1, {}, {2})}) {
        try {
            is_permanent(r, q);
            FAIL("expected MalformedQuery");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::MalformedQuery);
        }
    }
}

TEST_CASE("horizon zero only inspects the current configuration") {
    const Run r = test::write_solo(start_run(make_toy_overwrite(2)), 1);
    CHECK(brute_force_permanence(r, query(Subject::value(1), 2, {0}), 0).permanent());
    CHECK(brute_force_permanence(r, query(Subject::value(1), 3, {0}), 0).refuted());
    CHECK(brute_force_permanence(r, query(Subject::value(1), 2, {0}), 4).refuted());
}

TEST_CASE("permanence properties on small algorithms") {
    for (const auto& alg : {make_toy_overwrite(2), make_toy_overwrite(2, 1, true), make_toy_rewrite()}) {
        CAPTURE(alg->info().name);
        const bool invisible = alg->info().visibility == Visibility::Invisible;
        for (const Run& r : prefixes(alg)) {
            const auto w = last_write(r);
            for (Value v : {0u, 1u})
                for (int k : {1, 2})
                    for (const auto& a : kAllowed)
                        for (const std::set<ProcessId>& frozen : {std::set<ProcessId>{}, {1}}) {
                            const auto base = is_permanent(r, query(Subject::value(v), k, a, frozen));
                            REQUIRE(base.status != PermanenceStatus::Inconclusive);
                            if (base.refuted()) {
                                // A refutation replays to a configuration below k.
                                const Run after = extended(r, base.witness);
                                CHECK(s_labels(after.final_config(), Subject::value(v)).size() < static_cast<std::size_t>(k));
                                continue;
                            }
                            if (k > 1) CHECK(is_permanent(r, query(Subject::value(v), k - 1, a, frozen)).permanent());
                            for (const auto& b : kAllowed)
                                if (subset(b, a)) CHECK(is_permanent(r, query(Subject::value(v), k, b, frozen)).permanent());
                            if (frozen.empty()) CHECK(is_permanent(r, query(Subject::value(v), k, a, {1})).permanent());
                            // Still permanent after an allowed Write completes.
                            for (Value u : a) {
                                const Run later = test::write_solo(r.final_config().writer().pending ? [&] {
                                    Run c = r;
                                    run_solo(c, kWriter);
                                    return c;
                                }() : r, u);
                                CHECK(is_permanent(later, query(Subject::value(v), k, a, frozen)).permanent());
                            }
                        }
            const Value written = r.event(last_write_time(r)).op.value;
            for (int k : {1, 2})
                for (const auto& a : kAllowed) {
                    const auto of_write = is_permanent(r, query(Subject::write(w), k, a));
                    if (of_write.permanent()) CHECK(is_permanent(r, query(Subject::value(written), k, a)).permanent());
                    if (invisible)
                        CHECK(is_permanent(r, query(Subject::write(w), k, a, {1})).status == of_write.status);
                }
        }
    }
}

TEST_CASE("closure agrees with brute force on small queries") {
    const auto alg = make_toy_rewrite();
    for (const Run& r : prefixes(alg))
        for (Value v : {0u, 1u})
            for (const auto& a : kAllowed) {
                const auto q = query(Subject::value(v), 1, a);
                CHECK(is_permanent(r, q).status == brute_force_permanence(r, q, 8).status);
            }
}

}  // TEST_SUITE
