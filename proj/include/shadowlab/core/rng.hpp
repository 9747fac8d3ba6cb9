/*
 * Copyright 2026 The shadowlab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>

namespace shadowlab {

/**
 * Counter-based deterministic random stream (splitmix64 output function).
 *
 * The i-th output is a pure function of (seed, i), so streams can be split
 * and replayed independently of evaluation order or thread count, and the
 * same (seed, counter) pair produces the same value on every platform.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix(std::uint64_t s, std::uint64_t counter) {
        std::uint64_t z = s + counter * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(seed_, counter_++); }

    /// Value at an explicit counter, without advancing the stream.
    std::uint64_t at(std::uint64_t counter) const { return mix(seed_, counter); }

    /// Uniform double in [0, 1) using the top 53 bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; deterministic consumption of two uniforms.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Independent child stream; deterministic function of (seed, id).
    SplitMix64 fork(std::uint64_t id) const { return SplitMix64(mix(seed_, 0x5851f42d4c957f2dULL + id)); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace shadowlab
