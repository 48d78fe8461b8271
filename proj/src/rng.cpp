#include "orehom/rng.hpp"

namespace orehom {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next() {
    std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

Rat Rng::small_rational() {
    long num = static_cast<long>(below(19)) - 9;
    long den = static_cast<long>(below(9)) + 1;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat Rng::small_rational_nonzero() {
    Rat r = small_rational();
    while (r == 0) r = small_rational();
    return r;
}

}  // namespace orehom
