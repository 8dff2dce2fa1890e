#include <doctest.h>

#include <cstdint>
#include <vector>

#include "recon/bits.hpp"
#include "recon/prng.hpp"

using namespace recon;

TEST_CASE("splitmix64 reference sequence from state 0") {
    std::uint64_t state = 0;
    CHECK(splitmix64_next(state) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64_next(state) == 0x6e789e6aa1b965f4ULL);
    CHECK(splitmix64_next(state) == 0x06c45d188009454fULL);
}

TEST_CASE("mix64 reference values") {
    CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(mix64(1) == 0x910a2dec89025cc1ULL);
    CHECK(mix64(0x123456789ABCDEF0ULL) == 0x161922c645ce50e8ULL);
}

TEST_CASE("xoshiro256** reference sequences") {
    const struct {
        std::uint64_t seed;
        std::uint64_t expected[5];
    } vectors[] = {
        {0x0, {0x99ec5f36cb75f2b4ULL, 0xbf6e1f784956452aULL, 0x1a5f849d4933e6e0ULL,
               0x6aa594f1262d2d2cULL, 0xbba5ad4a1f842e59ULL}},
        {0x1, {0xb3f2af6d0fc710c5ULL, 0x853b559647364ceaULL, 0x92f89756082a4514ULL,
               0x642e1c7bc266a3a7ULL, 0xb27a48e29a233673ULL}},
        {0x2a, {0x15780b2e0c2ec716ULL, 0x6104d9866d113a7eULL, 0xae17533239e499a1ULL,
                0xecb8ad4703b360a1ULL, 0xfde6dc7fe2ec5e64ULL}},
        {0xdeadbeefcafebabeULL, {0x2299b3421aa78b66ULL, 0x9af6550483e02887ULL,
                                 0xda059cb5eec5c979ULL, 0xcf86bd29360fff98ULL,
                                 0x5cc883c940089820ULL}},
    };
    for (const auto& v : vectors) {
        CAPTURE(v.seed);
        Xoshiro256StarStar rng(v.seed);
        for (const auto expected : v.expected) {
            CHECK(rng.next() == expected);
        }
    }
}

TEST_CASE("next_double uses the high 53 bits and stays in [0, 1)") {
    Xoshiro256StarStar rng(42);
    CHECK(rng.next_double() == doctest::Approx(0.08386297105988216).epsilon(1e-15));
    CHECK(rng.next_double() == doctest::Approx(0.3789802506626686).epsilon(1e-15));
    CHECK(rng.next_double() == doctest::Approx(0.6800434110281394).epsilon(1e-15));

    Xoshiro256StarStar a(7);
    Xoshiro256StarStar b(7);
    for (int i = 0; i < 1000; ++i) {
        const double d = a.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        CHECK(d == static_cast<double>(b.next() >> 11) * 0x1.0p-53);
    }
}

TEST_CASE("next_below is in range and matches a fresh generator per bound") {
    Xoshiro256StarStar rng(123);
    for (const std::uint64_t bound : {1ULL, 2ULL, 3ULL, 10ULL, 1000ULL, 1ULL << 62}) {
        for (int i = 0; i < 200; ++i) {
            CHECK(rng.next_below(bound) < bound);
        }
    }
    // bound 1 draws nothing surprising: always zero.
    Xoshiro256StarStar ones(9);
    for (int i = 0; i < 10; ++i) {
        CHECK(ones.next_below(1) == 0);
    }
}

TEST_CASE("next_below is unbiased enough over a small modulus") {
    Xoshiro256StarStar rng(2024);
    const std::uint64_t bound = 6;
    const int draws = 60000;
    int counts[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < draws; ++i) {
        ++counts[rng.next_below(bound)];
    }
    for (const int c : counts) {
        // expectation 10000, sd ~91; allow 6 sigma.
        CHECK(c > 10000 - 550);
        CHECK(c < 10000 + 550);
    }
}

TEST_CASE("next_bit consumes words MSB-first") {
    Xoshiro256StarStar bits(31337);
    Xoshiro256StarStar words(31337);
    for (int w = 0; w < 3; ++w) {
        const std::uint64_t word = words.next();
        for (int i = 63; i >= 0; --i) {
            CHECK(bits.next_bit() == ((word >> i) & 1U));
        }
    }
}

TEST_CASE("derive_seed reference values and stream separation") {
    CHECK(derive_seed(1, 0) == 0x9478dcbcb9ca8043ULL);
    CHECK(derive_seed(1, 1) == 0xd398f50f5e14ca23ULL);
    CHECK(derive_seed(2, 0) == 0xf5a9e0808d81fdc3ULL);

    CHECK(derive_seed(99, 0) != derive_seed(99, 1));
    CHECK(derive_seed(99, 0) != derive_seed(100, 0));
    CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}

TEST_CASE("random_bits is deterministic per seed") {
    Xoshiro256StarStar a(404);
    Xoshiro256StarStar b(404);
    Xoshiro256StarStar c(405);
    const Bits x = random_bits(256, a);
    const Bits y = random_bits(256, b);
    const Bits z = random_bits(256, c);
    CHECK(x == y);
    CHECK(x != z);
    for (const auto bit : x) {
        CHECK(bit <= 1);
    }
}

TEST_CASE("pack and unpack bits round trip MSB-first") {
    const Bits bits = {1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0};
    const auto bytes = pack_bits(bits);
    REQUIRE(bytes.size() == 2);
    CHECK(bytes[0] == 0xB3);
    CHECK(bytes[1] == 0x80);
    CHECK(unpack_bits(bytes, bits.size()) == bits);
    CHECK_THROWS_AS(unpack_bits(bytes, 17), std::invalid_argument);
}

TEST_CASE("hamming_distance counts mismatches and rejects length mismatch") {
    CHECK(hamming_distance({0, 1, 1, 0}, {0, 1, 1, 0}) == 0);
    CHECK(hamming_distance({0, 1, 1, 0}, {1, 1, 0, 0}) == 2);
    CHECK_THROWS_AS(hamming_distance({0, 1}, {0, 1, 0}), std::invalid_argument);
}
