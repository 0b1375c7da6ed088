#ifndef UTIL_RNG_H
#define UTIL_RNG_H

#include <cstdint>

namespace tplan {

// splitmix64; chosen over <random> distributions so that generated
// benchmark files are byte-identical across platforms and standard
// library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Inclusive range.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double uniform_real(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
        return lo + u * (hi - lo);
    }

    bool chance(double p) { return uniform_real(0.0, 1.0) < p; }

private:
    std::uint64_t state_;
};

}  // namespace tplan

#endif
