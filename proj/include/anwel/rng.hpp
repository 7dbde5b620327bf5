#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace anwel {

// Counter-based deterministic generator. A value is a pure function of
// (seed, stream, counter), so independent trials can draw from disjoint
// streams without sharing state, and replays are exact across platforms.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0x7f4a7c159e3779b9ull))) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(key_ + 0x632be59bd9b4e019ull * ++counter_); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniformly distributed point on the unit circle.
    std::complex<double> unit_circle() {
        const double theta = 6.283185307179586476925286766559 * uniform01();
        return {std::cos(theta), std::sin(theta)};
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace anwel
