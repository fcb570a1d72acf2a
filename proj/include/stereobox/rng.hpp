#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace stereobox {

/// Deterministic random source for the synthetic generators.
///
/// Every draw is fully specified here (mt19937 core, 53-bit uniforms,
/// Box-Muller normals, rejection-sampled integers), so a given seed produces
/// the same stream on every platform and standard library. Dataset headers
/// record the identity as "mt19937-bm".
class Rng {
  public:
    static constexpr const char* kIdentity = "mt19937-bm";

    explicit Rng(std::uint32_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        const std::uint64_t hi = gen_() >> 5;  // 27 bits
        const std::uint64_t lo = gen_() >> 6;  // 26 bits
        return (static_cast<double>(hi) * 67108864.0 + static_cast<double>(lo)) /
               9007199254740992.0;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; the second value of each pair is
    /// cached and returned by the next call.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double gaussian(double sigma) { return sigma * gaussian(); }

    /// Uniform integer in [0, n); n must be positive. Rejection sampling,
    /// so there is no modulo bias.
    std::uint32_t below(std::uint32_t n) {
        const std::uint64_t span = std::uint64_t{1} << 32;
        const std::uint64_t limit = span - span % n;
        std::uint64_t draw = gen_();
        while (draw >= limit) draw = gen_();
        return static_cast<std::uint32_t>(draw % n);
    }

    /// Fisher-Yates shuffle driven by below().
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(static_cast<std::uint32_t>(i))]);
        }
    }

  private:
    static constexpr double kPi = 3.14159265358979323846;

    std::mt19937 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace stereobox
