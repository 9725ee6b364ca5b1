#include <doctest.h>

#include <array>
#include <cstdint>
#include <vector>

#include "pamea/rng.hpp"

using pamea::RngStream;

TEST_CASE("equal seed and label reproduce the first 10000 draws") {
    RngStream a(42, "cpv");
    RngStream b(42, "cpv");
    for (int i = 0; i < 10000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("seed and label both separate streams") {
    RngStream base(42, "cpv");
    RngStream other_seed(43, "cpv");
    RngStream other_label(42, "init");
    bool seed_differs = false;
    bool label_differs = false;
    RngStream base2(42, "cpv");
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t v = base.next_u64();
        seed_differs |= v != other_seed.next_u64();
        label_differs |= base2.next_u64() != other_label.next_u64();
    }
    CHECK(seed_differs);
    CHECK(label_differs);
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
    RngStream rng(7, "u");
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_index respects the range and is roughly uniform") {
    RngStream rng(11, "idx");
    std::array<int, 6> counts{};
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        const std::size_t k = rng.uniform_index(6);
        REQUIRE(k < 6);
        ++counts[k];
    }
    for (const int c : counts) {
        CHECK(c > 9500);
        CHECK(c < 10500);
    }
}

TEST_CASE("coin is roughly fair") {
    RngStream rng(13, "coin");
    int heads = 0;
    for (int i = 0; i < 100000; ++i) heads += rng.coin() ? 1 : 0;
    CHECK(heads > 48500);
    CHECK(heads < 51500);
}

TEST_CASE("uniform_real maps into the requested interval") {
    RngStream rng(17, "real");
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform_real(-3.0, 7.0);
        CHECK(v >= -3.0);
        CHECK(v < 7.0);
    }
}

TEST_CASE("copied streams evolve independently from the copy point") {
    RngStream rng(19, "copy");
    rng.next_u64();
    RngStream clone = rng;
    const std::uint64_t a = rng.next_u64();
    const std::uint64_t b = clone.next_u64();
    CHECK(a == b);
}
