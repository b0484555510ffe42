#pragma once

#include <cstdint>
#include <random>

namespace cbd {

/// splitmix64 finalizer; used both as a generator step and as the
/// seed-derivation hash.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic stream splitting: per-trial seeds are a hash of
/// (master_seed, stream_index), so results are independent of how trials
/// are distributed over threads.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    uint64_t h = splitmix64(master ^ 0x5851f42d4c957f2dULL);
    return splitmix64(h + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

/// Counter-based generator: output i is splitmix64(seed, i). Stateless up
/// to a counter, so any (seed, index) pair reproduces the same draw.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(splitmix64(seed ^ 0x853c49e6748fea9bULL)) {}

    uint64_t next_u64() { return splitmix64(seed_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    int next_int(int n) {
        return static_cast<int>(next_double() * n) % n;
    }

    /// Draws an index from a probability vector (assumed normalized).
    int sample_pmf(const std::vector<double>& p) {
        double u = next_double();
        double acc = 0.0;
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            acc += p[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(p.size()) - 1;
    }

private:
    uint64_t seed_;
    uint64_t counter_ = 0;
};

}  // namespace cbd
