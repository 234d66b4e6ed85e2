#include "doctest.h"

#include "dstore/bounds.hpp"

using namespace dstore;

namespace {

// Plain 64-bit evaluation of the four block formulas and the bit formulas.
long long oracle_blocks(int tau, int d, int l, int r, Visibility vis, Flavor f) {
    const long long domain = 1LL << d;
    const long long spread = (domain - 1 + l - 1) / l;
    if (f == Flavor::General)
        return tau + (tau - 1) * (vis == Visibility::Invisible ? spread : std::min<long long>(spread, r));
    if (vis == Visibility::Invisible) return tau * domain;
    return tau + (tau - 1) * std::min<long long>(domain - 1, r);
}

long long oracle_bits(int tau, int d, int r, Visibility vis) {
    const long long domain = 1LL << d;
    if (vis == Visibility::Invisible) return d * domain;
    const long long num = static_cast<long long>(d) * tau + static_cast<long long>(d) * (tau - 1) * std::min<long long>(domain - 1, r);
    return (num + tau - 1) / tau;
}

BigInt blocks(int tau, int d, int l, int r, Visibility vis, Flavor f) { return block_bound({tau, d, l, r, vis, f}); }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("block and bit bounds match an independent evaluation") {
    for (int tau = 2; tau <= 4; ++tau)
        for (int d = 1; d <= 6; ++d)
            for (int l = 1; l <= 4; ++l)
                for (int r = 1; r <= 5; ++r)
                    for (auto vis : {Visibility::Invisible, Visibility::Visible})
                        for (auto f : {Flavor::General, Flavor::CommonWrite}) {
                            CAPTURE(tau);
                            CAPTURE(d);
                            CAPTURE(l);
                            CAPTURE(r);
                            REQUIRE(blocks(tau, d, l, r, vis, f) == oracle_blocks(tau, d, l, r, vis, f));
                            if (f == Flavor::CommonWrite)
                                REQUIRE(bit_bound_symmetric({tau, d, l, r, vis, f}) == oracle_bits(tau, d, r, vis));
                        }
}

TEST_CASE("spot values") {
    using enum Visibility;
    using enum Flavor;
    CHECK(blocks(2, 2, 1, 1, Invisible, General) == 5);
    CHECK(blocks(2, 2, 1, 1, Invisible, CommonWrite) == 8);
    CHECK(blocks(2, 2, 1, 2, Visible, CommonWrite) == 4);
    CHECK(blocks(2, 3, 1, 2, Visible, General) == 4);
    CHECK(blocks(2, 1, 1, 1, Invisible, General) == 3);
    CHECK(blocks(2, 1, 1, 1, Invisible, CommonWrite) == 4);
    CHECK(blocks(3, 2, 1, 1, Invisible, CommonWrite) == 12);
    // L covering the rest of the domain collapses to the two-Write floor.
    CHECK(blocks(3, 3, 7, 1, Invisible, General) == 2 * 3 - 1);
    CHECK(blocks(2, 3, 1, 7, Visible, General) == blocks(2, 3, 1, 1, Invisible, General));
    CHECK(bit_bound_symmetric({2, 2, 1, 1, Invisible, CommonWrite}) == 8);
    CHECK(bit_bound_symmetric({2, 2, 1, 2, Visible, CommonWrite}) == 4);
}

TEST_CASE("twenty-byte values") {
    const BigInt bits = bit_bound_symmetric({2, 160, 1, 1, Visibility::Invisible, Flavor::CommonWrite});
    CHECK(bits == BigInt(160) << 160);
    CHECK(bits_as_terabytes(bits) == "2.66e37");
    CHECK(scientific(bits) == "2.34e50");
    CHECK(scientific(BigInt(12345), 2) == "1.2e4");
    CHECK(scientific(BigInt(7), 2) == "7.0e0");
}

TEST_CASE("monotonicity") {
    for (int tau = 2; tau <= 4; ++tau)
        for (int d = 1; d <= 4; ++d)
            for (int l = 1; l <= 4; ++l)
                for (int r = 1; r <= 4; ++r)
                    for (auto f : {Flavor::General, Flavor::CommonWrite}) {
                        for (auto vis : {Visibility::Invisible, Visibility::Visible}) {
                            const auto b = blocks(tau, d, l, r, vis, f);
                            CHECK(blocks(tau + 1, d, l, r, vis, f) >= b);
                            CHECK(blocks(tau, d + 1, l, r, vis, f) >= b);
                            if (f == Flavor::General) CHECK(blocks(tau, d, l + 1, r, vis, f) <= b);
                        }
                        CHECK(blocks(tau, d, l, r, Visibility::Visible, f) <= blocks(tau, d, l, r, Visibility::Invisible, f));
                        CHECK(blocks(tau, d, l, r, Visibility::Invisible, Flavor::CommonWrite) >=
                              blocks(tau, d, l, r, Visibility::Invisible, Flavor::General));
                    }
}

TEST_CASE("invalid parameters") {
    for (const BoundParams& p : {BoundParams{1, 2, 1, 1}, BoundParams{2, 0, 1, 1}, BoundParams{2, 2, 0, 1},
                                 BoundParams{2, 2, 1, 0}}) {
        try {
            block_bound(p);
            FAIL("expected InvalidParams");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidParams);
        }
    }
    CHECK_THROWS_AS(bit_bound_symmetric({2, 2, 1, 1, Visibility::Invisible, Flavor::General}), Error);
}

TEST_CASE("csv and table output") {
    const auto csv = bounds_csv({2}, {2}, {1}, {1});
    CHECK(csv.find("tau,d_bits,l_cap,readers,flavor,visibility,blocks,bits") == 0);
    CHECK(csv.find("2,2,1,1,general,invisible,5,") != std::string::npos);
    CHECK(csv.find("2,2,1,1,common_write,invisible,8,8") != std::string::npos);
    CHECK_FALSE(bounds_table(2, 2, 1, 1).empty());
}

}  // TEST_SUITE
