#pragma once

#include <cstdint>
#include <vector>

namespace linkpred {

// splitmix64, Steele et al. Output quality is good enough for sampling and
// tie-breaking, and the stream is identical on every platform, which the
// standard <random> distributions do not guarantee.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One round of splitmix used as a mixing function for seed derivation.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // decorrelate trivially related seeds
        next();
        next();
    }

    std::uint64_t next() { return splitmix64(state_); }

    // uniform in [0, n), unbiased via rejection
    std::uint64_t bounded(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // uniform double in [0, 1) with 53 random bits
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    // Derive an independent child stream.
    Rng child(std::uint64_t key) const { return Rng(mix_seed(state_, key)); }

private:
    std::uint64_t state_;
};

// First k elements of a uniform random sample without replacement from
// {0, 1, ..., n-1} (partial Fisher-Yates).
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
        std::size_t j = i + std::size_t(rng.bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace linkpred
