#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ecotrip::rng {

// splitmix64 step, used to derive independent stream seeds.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return mix(a ^ (b + 0x9e3779b97f4a7c15ULL));
}

// mt19937 with hand-rolled distributions. The mt19937 sequence is fixed by
// the standard; the std:: distributions are not, so sampling is done here to
// keep identical seeds producing identical bytes on any toolchain.
class Generator {
public:
    explicit Generator(std::uint64_t seed)
        : gen_(static_cast<std::uint32_t>(mix(seed))) {}

    std::uint32_t next_u32() { return gen_(); }

    // [0,1)
    double uniform() {
        return static_cast<double>(gen_()) * (1.0 / 4294967296.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 =
            (static_cast<double>(gen_()) + 1.0) * (1.0 / 4294967296.0); // (0,1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(gen_() % static_cast<std::uint32_t>(n));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ecotrip::rng
