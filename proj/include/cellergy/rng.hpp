/*
   Copyright 2026 the cellergy authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstdint>

namespace cellergy {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 step; advances `state` and returns the next word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += kGoldenGamma);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Folds a master seed and a list of stream identifiers into a stream key.
/// Identical identifier tuples always map to the same key, which is how
/// replications (and users within a replication) get reproducible,
/// worker-count-independent randomness.
template <class... Ids>
std::uint64_t derive_key(std::uint64_t master_seed, Ids... ids) {
    std::uint64_t key = mix64(master_seed + kGoldenGamma);
    ((key = mix64(key ^ (static_cast<std::uint64_t>(ids) + kGoldenGamma))), ...);
    return key;
}

/// Replication-identifying record. All randomness of a replication flows
/// from (master_seed, replication); draw_count records how many words the
/// position stream consumed.
struct SeedLineage {
    std::uint64_t master_seed = 1;
    std::uint64_t replication = 0;
    std::uint64_t draw_count = 0;
};

/// xoshiro256++ stream seeded from a 64-bit key via SplitMix64.
///
/// The standard library distributions are not used anywhere: every variate
/// below is generated with a pinned algorithm so that a (seed, ids) tuple
/// yields the same sequence on every build of this code base.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) {
        std::uint64_t sm = key;
        for (auto& w : state_) w = splitmix64(sm);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGoldenGamma;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        ++draws_;
        return result;
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1); safe to pass to log().
    double uniform01_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential(double rate) { return -std::log(uniform01_open()) / rate; }

    std::uint64_t draw_count() const { return draws_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    std::uint64_t draws_ = 0;
};

/// Exact Poisson variate.
///
/// Small means use Knuth's product-of-uniforms inversion; large means use
/// Hormann's PTRS transformed rejection. Both sample the exact distribution;
/// no normal approximation is involved at any mean.
long poisson_draw(RngStream& rng, double mean);

} // namespace cellergy
