#pragma once

#include <cstdint>
#include <random>

namespace subtrees {

// splitmix64 finalizer; used to derive decorrelated per-task seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed of the i-th child stream of a master seed. Replicate i of a
// simulation always uses child_seed(master, i), independent of threading.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Tag mixed into the master seed for the bootstrap stream so resampling
// never shares a stream with tree generation.
inline constexpr std::uint64_t kBootstrapTag = 0xB00757AB5EEDB007ULL;

// mt19937_64 is fully specified by the standard, so streams are reproducible
// across platforms. Bounded draws use explicit rejection sampling because
// std::uniform_int_distribution is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, bound), bound >= 1. Rejection from the top of the range.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform vertex label in [1, n].
    int label(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))) + 1; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace subtrees
