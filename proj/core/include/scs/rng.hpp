#ifndef SCS_RNG_HPP
#define SCS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <utility>

namespace scs {

// SplitMix64 (Steele/Lea/Flood). Chosen over engine-dependent standard
// distributions so streams reproduce bit-for-bit across platforms; report
// files record the algorithm name "splitmix64+box-muller".
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] (inclusive); span must be modest.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    // Box-Muller pair of independent standard normals.
    std::pair<double, double> normal_pair() {
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    std::uint64_t state_;
};

inline constexpr const char* kRngAlgorithm = "splitmix64+box-muller";

}  // namespace scs

#endif
