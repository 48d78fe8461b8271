#pragma once

#include <cstdint>

#include "orehom/rational.hpp"

namespace orehom {

// xoshiro256** seeded through splitmix64. The report format pins this
// generator: identical seeds must reproduce identical verification runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    // Numerator in [-9, 9], denominator in [1, 9].
    Rat small_rational();

    // Small rational, nonzero.
    Rat small_rational_nonzero();

private:
    std::uint64_t state_[4];
};

}  // namespace orehom
