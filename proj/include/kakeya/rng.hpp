#pragma once

#include <cstdint>
#include <random>

namespace kakeya {

// All seeded randomness in the engine goes through std::mt19937_64 with
// rejection-sampled bounds, so reports reproduce bit-for-bit across standard
// library implementations (std::uniform_int_distribution does not promise
// that).
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t k) {
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % k;
    std::uint64_t r;
    do {
        r = gen();
    } while (r >= limit);
    return r % k;
}

} // namespace kakeya
