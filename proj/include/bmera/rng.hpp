#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bmera {

// Seeded random stream. Gaussian variates are produced by an explicit
// Box-Muller transform on top of mt19937_64 so that equal seeds give
// bit-identical output independent of the standard library in use.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t raw() { return eng_(); }

    // uniform in [0, 1) with 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bmera
