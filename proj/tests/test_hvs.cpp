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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "objwm/hvs.hpp"
#include "testutil.hpp"

using namespace objwm;

namespace {

// A free-standing 8x8 grid wrapped as a CoeffGrid for direct block tests.
CoeffGrid grid_from(const std::vector<int32_t>& vals) {
    CoeffGrid g;
    g.width = g.height = 8;
    g.levels = 3;
    g.coeffs = vals;
    g.mask.assign(64, 1);
    return g;
}

const WaveletBlock kBlock{0, 0, 0, 8};

}  // namespace

TEST_CASE("constant block has zero texture and zero activity") {
    const CoeffGrid g = grid_from(std::vector<int32_t>(64, 57));
    const BlockActivity a = block_activity(g, kBlock, 0.318);
    CHECK(a.brightness == doctest::Approx(57.0));
    CHECK(a.texture == doctest::Approx(0.0));
    CHECK(a.vm == doctest::Approx(0.0));
}

TEST_CASE("alternating 0/2 block has brightness 1, texture 1, vm 1") {
    std::vector<int32_t> vals(64);
    for (size_t i = 0; i < 64; ++i) vals[i] = (i % 2) ? 2 : 0;
    const CoeffGrid g = grid_from(vals);
    for (double beta : {0.0, 0.318, 1.0, 2.5}) {
        const BlockActivity a = block_activity(g, kBlock, beta);
        CHECK(a.brightness == doctest::Approx(1.0));
        CHECK(a.texture == doctest::Approx(1.0));
        CHECK(a.vm == doctest::Approx(1.0));
    }
}

TEST_CASE("beta exponent scales texture as a power law") {
    // texture = 16 exactly: half the block at brightness-4, half at +4.
    std::vector<int32_t> vals(64);
    for (size_t i = 0; i < 64; ++i) vals[i] = (i % 2) ? 14 : 6;
    const CoeffGrid g = grid_from(vals);
    const BlockActivity a = block_activity(g, kBlock, 0.318);
    CHECK(a.brightness == doctest::Approx(10.0));
    CHECK(a.texture == doctest::Approx(16.0));
    // 16^0.318 = 2.4149611829729926, frozen from a high-precision evaluation.
    CHECK(a.vm == doctest::Approx(10.0 * 2.4149611829729926).epsilon(1e-9));
}

TEST_CASE("classify: all-equal activities give t=+1 everywhere (sign(0)=+1)") {
    std::vector<BlockActivity> acts(5);
    for (auto& a : acts) a.vm = 3.25;
    const double tc = classify(acts);
    CHECK(tc == doctest::Approx(3.25));
    for (const auto& a : acts) CHECK(a.t == 1);
}

TEST_CASE("classify: vm = [0, 10] splits at Tc = 5") {
    std::vector<BlockActivity> acts(2);
    acts[0].vm = 0.0;
    acts[1].vm = 10.0;
    const double tc = classify(acts);
    CHECK(tc == doctest::Approx(5.0));
    CHECK(acts[0].t == -1);
    CHECK(acts[1].t == 1);
}

TEST_CASE("classify is total and permutation-equivariant") {
    SplitMix64 rng(15);
    std::vector<BlockActivity> acts(200);
    for (auto& a : acts) a.vm = rng.next_range(-50.0, 50.0);

    std::vector<BlockActivity> reversed(acts.rbegin(), acts.rend());
    const double tc1 = classify(acts);
    const double tc2 = classify(reversed);
    CHECK(tc1 == doctest::Approx(tc2));

    int plus = 0, minus = 0;
    for (size_t i = 0; i < acts.size(); ++i) {
        CHECK(acts[i].t == reversed[acts.size() - 1 - i].t);
        (acts[i].t == 1 ? plus : minus) += 1;
    }
    CHECK(plus + minus == 200);

    std::vector<BlockActivity> empty;
    CHECK_THROWS_AS(classify(empty), std::invalid_argument);
}

TEST_CASE("positive scaling of nonnegative blocks preserves the classifier") {
    SplitMix64 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int32_t> vals(64);
        for (auto& v : vals) v = static_cast<int32_t>(rng.next_below(200));
        const int scale = 2 + static_cast<int>(rng.next_below(5));
        std::vector<int32_t> scaled(64);
        std::transform(vals.begin(), vals.end(), scaled.begin(),
                       [&](int32_t v) { return v * scale; });

        // Two-block instance: the block vs. a flat companion.
        std::vector<BlockActivity> base(2), big(2);
        base[0] = block_activity(grid_from(vals), kBlock, 0.318);
        base[1] = block_activity(grid_from(std::vector<int32_t>(64, 10)), kBlock, 0.318);
        big[0] = block_activity(grid_from(scaled), kBlock, 0.318);
        big[1] = block_activity(
            grid_from(std::vector<int32_t>(64, 10 * scale)), kBlock, 0.318);
        classify(base);
        classify(big);
        CHECK(base[0].t == big[0].t);
        CHECK(base[1].t == big[1].t);
    }
}
