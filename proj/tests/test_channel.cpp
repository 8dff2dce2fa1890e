#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "recon/bits.hpp"
#include "recon/channel.hpp"
#include "recon/prng.hpp"

using namespace recon;

TEST_CASE("bsc_transmit is deterministic per seed and identity at zero crossover") {
    Xoshiro256StarStar rng(17);
    const Bits word = random_bits(4096, rng);

    const Bits a = bsc_transmit(word, {0.1, 55});
    const Bits b = bsc_transmit(word, {0.1, 55});
    const Bits c = bsc_transmit(word, {0.1, 56});
    CHECK(a == b);
    CHECK(a != c);

    CHECK(bsc_transmit(word, {0.0, 55}) == word);
}

TEST_CASE("bsc_transmit rejects crossover outside [0, 0.5]") {
    const Bits word = {0, 1, 0};
    CHECK_THROWS_AS(bsc_transmit(word, {-0.01, 1}), std::invalid_argument);
    CHECK_THROWS_AS(bsc_transmit(word, {0.51, 1}), std::invalid_argument);
    CHECK_NOTHROW(bsc_transmit(word, {0.5, 1}));
}

TEST_CASE("bsc_transmit flip rate concentrates near the crossover") {
    const std::size_t n = 100000;
    Xoshiro256StarStar rng(3);
    const Bits word = random_bits(n, rng);
    const double e = 0.11;
    const Bits out = bsc_transmit(word, {e, 900});
    const double rate = static_cast<double>(hamming_distance(word, out)) / n;
    // sd of the empirical rate is ~0.001; allow 5 sigma.
    CHECK(std::abs(rate - e) < 0.005);
}

TEST_CASE("generate_key_pair draws a uniform key and a BSC image of it") {
    const std::size_t n = 100000;
    const double e = 0.065;
    const auto [alice, bob] = generate_key_pair(n, {e, 12});

    REQUIRE(alice.size() == n);
    REQUIRE(bob.size() == n);

    std::size_t ones = 0;
    for (const auto bit : alice) {
        ones += bit;
    }
    CHECK(std::abs(static_cast<double>(ones) / n - 0.5) < 0.008);

    const double rate = static_cast<double>(hamming_distance(alice, bob)) / n;
    CHECK(std::abs(rate - e) < 0.004);
}

TEST_CASE("generate_key_pair separates the key and noise streams") {
    const auto [alice, bob] = generate_key_pair(2048, {0.08, 71});
    // Same derivation as the implementation: key stream 0, noise stream 1.
    Xoshiro256StarStar key_rng(derive_seed(71, 0));
    CHECK(alice == random_bits(2048, key_rng));
    CHECK(bob == bsc_transmit(alice, {0.08, derive_seed(71, 1)}));

    const auto [alice2, bob2] = generate_key_pair(2048, {0.08, 71});
    CHECK(alice == alice2);
    CHECK(bob == bob2);
    const auto [alice3, bob3] = generate_key_pair(2048, {0.08, 72});
    CHECK(alice != alice3);
    (void)bob3;
}
