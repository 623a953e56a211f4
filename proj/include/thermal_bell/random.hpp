#pragma once

#include <cstdint>
#include <random>

namespace thermal_bell {

// Seeded uniform draws built directly on the mt19937_64 bit stream, so the
// same seed reproduces the same sequence on every platform (the standard
// distribution objects are implementation defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace thermal_bell
