#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace viewforge {

// splitmix64, used to derive independent substream seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(seed ^ mix_seed(stream + 0x517cc1b727220a95ull));
}

// mt19937_64 with hand-rolled distributions. std:: distribution output is
// implementation-defined; these keep seeded runs byte-identical.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, 1)
    double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform integer in [0, n), n > 0
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

    // standard normal via Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

    // k distinct indices from [0, n), order of draw preserved
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        k = std::min(k, n);
        std::vector<std::size_t> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + index(n - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace viewforge
