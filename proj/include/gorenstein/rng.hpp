#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace gorenstein {

// xoshiro256** seeded through splitmix64. Self-contained so that streams are
// bit-identical across platforms and standard-library versions; all
// randomness in the library flows through instances of this generator.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, bound). Multiply-shift reduction; the modulo bias is
    // irrelevant here but the output must stay platform-independent.
    std::uint64_t uniform(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Uniform integer in [lo, hi], inclusive.
    long uniform_int(long lo, long hi) {
        return lo + static_cast<long>(uniform(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Independent child stream; distinct `stream` values give distinct seeds.
    Rng fork(std::uint64_t stream) const {
        std::uint64_t x = state_[0] ^ (0x9e3779b97f4a7c15ULL + stream);
        Rng child(0);
        for (auto& word : child.state_) word = splitmix64(x);
        return child;
    }

    // Sorted random k-subset of {0, ..., m-1} (Fisher-Yates prefix).
    std::vector<int> subset(int m, int k) {
        std::vector<int> idx(m);
        for (int i = 0; i < m; ++i) idx[i] = i;
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(uniform(static_cast<std::uint64_t>(m - i)));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace gorenstein
