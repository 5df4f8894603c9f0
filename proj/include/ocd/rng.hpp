#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace ocd {

std::uint64_t splitmix64(std::uint64_t x);

// Seeded generator with portable output: mt19937_64 bits (fully specified by
// the standard) and our own uniform/normal transforms, so a seed produces the
// same numbers on every platform.
//
// Stream splitting: split(k) returns a generator seeded with
// splitmix64(seed ^ splitmix64(k + 1)). It depends only on the parent's seed
// and k, never on how many numbers the parent has produced.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    Rng split(std::uint64_t stream) const;

    std::uint64_t next_u64() { return engine_(); }
    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    double normal(double mean = 0, double sd = 1);
    // Uniform integer in [0, n), unbiased.
    std::size_t uniform_index(std::size_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(i)]);
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace ocd
