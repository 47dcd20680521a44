#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ckcontact/linalg.hpp"

namespace ckc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Platform-stable sampler: mt19937_64 bits mapped to doubles by hand, since
// the standard distributions are implementation-defined.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t bits() { return eng_(); }
    int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    Vec box(const std::vector<std::pair<double, double>>& b) {
        Vec v;
        v.reserve(b.size());
        for (const auto& [lo, hi] : b) v.push_back(uniform(lo, hi));
        return v;
    }

    Vec cube(int n, double lo, double hi) {
        Vec v(static_cast<std::size_t>(n));
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }

    Rng split(std::uint64_t stream) { return Rng(splitmix64(bits() ^ splitmix64(stream))); }

   private:
    std::mt19937_64 eng_;
};

using Box = std::vector<std::pair<double, double>>;

}  // namespace ckc
