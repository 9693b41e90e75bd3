#pragma once

#include <cstdint>
#include <random>

namespace maxlab {

// mt19937_64 with hand-rolled conversions, so streams are identical across
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }  // [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + std::int64_t(eng_() % std::uint64_t(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace maxlab
