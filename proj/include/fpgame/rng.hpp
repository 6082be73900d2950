#pragma once

// Counter-based splittable RNG (SplitMix64 finalizer over a keyed counter,
// the SplittableRandom construction). Streams derived from (master seed,
// task index) are independent, so parallel episodes reproduce bit-exactly
// regardless of scheduling.

#include <cstdint>

namespace fpgame {

namespace detail {
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

class Rng {
  public:
    explicit Rng(uint64_t seed) : key_(detail::mix64(seed)), counter_(0) {}

    // independent stream for a numbered subtask of a master seed
    static Rng stream(uint64_t master_seed, uint64_t task_index) {
        return Rng(detail::mix64(master_seed) ^ detail::mix64(~task_index));
    }

    uint64_t next_u64() { return detail::mix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    // uniform on [0,1) with 53 random bits
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform on (0,1], handy for inverse-CDF transforms that reject 0
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // fair coin: true with probability 1/2
    bool coin() { return (next_u64() >> 63) != 0; }

  private:
    uint64_t key_;
    uint64_t counter_;
};

}  // namespace fpgame
