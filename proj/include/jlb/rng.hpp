#pragma once

#include <cmath>
#include <cstdint>

namespace jlb {

// Deterministic counter-seeded random stream.  The n-th draw of
// RngStream(seed, index) is a pure function of (seed, index, n), with no
// dependence on platform, standard library, or any other stream, so
// Monte Carlo results are reproducible bit for bit.  Core generator is
// splitmix64; normals come from the Marsaglia polar transform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t z = mix(seed + 0x9e3779b97f4a7c15ULL);
        z ^= mix(stream_index + 0xbf58476d1ce4e5b9ULL);
        state_ = mix(z);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1): 53-bit resolution, never 0 or 1.
    double uniform() {
        const std::uint64_t u = next_u64() >> 11;
        return (static_cast<double>(u) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via the polar method; caches the paired deviate.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace jlb
