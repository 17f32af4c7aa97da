#pragma once

#include <cstdint>

namespace streetlight {

// splitmix64 (Steele/Lea/Vigna). This is the pinned generator behind every
// randomized feature: same seed and draw order give byte-identical streams on
// any platform, which is what makes simulation replays reproducible.
//
// Reference outputs for seed 0 (first three draws):
//   0xE220A8397B1DCDAF  0x6E789E6AA1B965F4  0x06C45D188009454F
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). Modulo bias is irrelevant at the n used here (<= 255)
    // and keeping a single documented reduction matters more for replays.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

}  // namespace streetlight
