#include "recon/channel.hpp"

#include <stdexcept>

namespace recon {

namespace {

void check_crossover(double e) {
    if (!(e >= 0.0 && e <= 0.5)) {
        throw std::invalid_argument("bsc crossover must be in [0, 0.5]");
    }
}

} // namespace

Bits bsc_transmit(const Bits& word, const BscParams& params) {
    check_crossover(params.crossover);
    Xoshiro256StarStar rng(params.seed);
    Bits out(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        const bool flip = rng.next_double() < params.crossover;
        out[i] = static_cast<std::uint8_t>((word[i] ^ (flip ? 1U : 0U)) & 1U);
    }
    return out;
}

std::pair<Bits, Bits> generate_key_pair(std::size_t length, const BscParams& params) {
    if (length < 1) {
        throw std::invalid_argument("generate_key_pair: length must be >= 1");
    }
    check_crossover(params.crossover);
    Xoshiro256StarStar key_rng(derive_seed(params.seed, 0));
    Bits x = random_bits(length, key_rng);
    BscParams noise{params.crossover, derive_seed(params.seed, 1)};
    Bits y = bsc_transmit(x, noise);
    return {std::move(x), std::move(y)};
}

} // namespace recon
