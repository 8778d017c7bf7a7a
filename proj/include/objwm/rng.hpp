// Copyright 2026 the objwm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OBJWM_RNG_HPP
#define OBJWM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace objwm {

// splitmix64: 64-bit multiply-xor-shift mixer. Every randomized path in
// the toolkit (watermark sequences, noise attacks, test data) goes through
// this generator so results are reproducible across platforms and builds.
// Test vectors for seed 0 live in tests/test_watermark.cpp.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double next_range(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Standard normal via Box-Muller; one sample per call, spare cached.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = next_unit();
        } while (u1 <= 0.0);
        u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Zero-mean Laplacian with scale b, by inverse CDF.
    double next_laplacian(double b) {
        const double u = next_unit() - 0.5;
        const double s = (u >= 0.0) ? 1.0 : -1.0;
        return -b * s * std::log(1.0 - 2.0 * std::fabs(u));
    }

    // Uniform integer in [0, bound) without modulo bias worth worrying
    // about for bound << 2^64.
    uint64_t next_below(uint64_t bound) { return next() % bound; }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace objwm

#endif  // OBJWM_RNG_HPP
