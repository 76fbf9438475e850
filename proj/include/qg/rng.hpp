#pragma once

#include <cstdint>
#include <random>

#include "qg/vec.hpp"

namespace qg {

// Seeded generator used by instance batteries. mt19937_64 has a fixed bit
// stream by standard; the uniform mappings below avoid the
// implementation-defined std distributions so outputs are identical across
// toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(eng_() % span);
    }

    Vec uniform_vec(int d, double lo, double hi) {
        Vec v(static_cast<std::size_t>(d));
        for (auto& c : v) c = uniform(lo, hi);
        return v;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace qg
