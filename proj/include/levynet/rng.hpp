#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace levynet {

/// splitmix64 step; also used as a 64-bit finalizer for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed = splitmix64 finalize of FNV-1a over (master seed bytes || job id).
/// This rule is echoed in every run manifest so outputs are reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view job_id) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < 8; ++i) {
        h ^= (master >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    for (unsigned char c : job_id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(h);
}

/// xoshiro256++ with a self-contained double generation path, so streams are
/// bit-identical across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        for (auto& s : state_) s = splitmix64(seed);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() noexcept {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    /// Exp(1).
    double exponential() noexcept { return -std::log(uniform_open()); }

    /// N(0, 1) via Box-Muller.
    double gaussian() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(2.0 * exponential());
        const double t = 6.283185307179586476925287 * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace levynet
