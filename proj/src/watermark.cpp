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

#include "objwm/watermark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "objwm/rng.hpp"

namespace objwm {

namespace {

inline int sign_of(double x) { return x >= 0.0 ? 1 : -1; }

inline int32_t round_half_away(double v) {
    return static_cast<int32_t>(v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5));
}

void validate_config(const EmbedConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 8)
        throw WatermarkError("n must be in [1, 8]");
    if (cfg.block_size != (1 << cfg.levels))
        throw WatermarkError("block size must equal 2^levels");
    if (cfg.alpha < 0.0)
        throw WatermarkError("alpha must be non-negative");
    if (cfg.margin < 0 || (cfg.n >= 2 && cfg.margin >= (1 << (cfg.n - 2))))
        throw WatermarkError("margin must satisfy 0 <= margin < 2^(n-2)");
    if (cfg.length < 1)
        throw WatermarkError("watermark length must be >= 1");
}

// Blocks carrying watermark bits, in the blind-recoverable order: raster
// enumeration of fully-in-mask tiles, optionally skipping zero-average
// blocks (a content-dependent rule that desynchronizes under attack, so it
// is off by default).
std::vector<WaveletBlock> embeddable_blocks(const CoeffGrid& grid,
                                            const EmbedConfig& cfg) {
    std::vector<WaveletBlock> blocks = level_blocks(grid, cfg.block_size);
    if (cfg.skip_zero_average) {
        std::vector<WaveletBlock> kept;
        kept.reserve(blocks.size());
        for (const auto& b : blocks)
            if (block_average(grid, b, cfg.n) != 0.0) kept.push_back(b);
        return kept;
    }
    return blocks;
}

}  // namespace

WatermarkSequence generate_watermark(uint64_t seed, size_t length) {
    if (length < 1) throw WatermarkError("watermark length must be >= 1");
    WatermarkSequence seq;
    seq.seed = seed;
    seq.values.reserve(length);
    SplitMix64 rng(seed);
    for (size_t i = 0; i < length; ++i)
        seq.values.push_back((rng.next() >> 63) == 0 ? 1 : -1);
    return seq;
}

int lsb(int32_t coef, int n) {
    return static_cast<int>(coef & ((1 << n) - 1));
}

double block_average(const CoeffGrid& grid, const WaveletBlock& block, int n) {
    long long sum = 0;
    for (int dr = 0; dr < block.side; ++dr)
        for (int dc = 0; dc < block.side; ++dc)
            sum += lsb(grid.at(block.row + dr, block.col + dc), n);
    return static_cast<double>(sum) / (block.side * block.side);
}

int flag_sign(int coef_lsb, int w, int n) {
    const int half = 1 << (n - 1);
    // w * sign(half - lsb): identical to sign((half - lsb) * w) except at
    // lsb == half, where the tabulated rule ("<= 0") puts the flag at
    // w rather than +1.
    return w * sign_of(static_cast<double>(half - coef_lsb));
}

int strength_sign(double avg, int w, int n) {
    const int half = 1 << (n - 1);
    return sign_of((half - avg) * w);
}

void perturb_block(CoeffGrid& grid, const WaveletBlock& block, int w, int t,
                   const EmbedConfig& cfg) {
    const double avg = block_average(grid, block, cfg.n);
    const int s = strength_sign(avg, w, cfg.n);
    const double bracket =
        std::ldexp(1.0, cfg.n - 2 - s) + t * std::ldexp(1.0, cfg.n - 3);
    for (int dr = 0; dr < block.side; ++dr) {
        for (int dc = 0; dc < block.side; ++dc) {
            int32_t& coef = grid.at(block.row + dr, block.col + dc);
            const int f = cfg.flag_table_variant ? w : flag_sign(lsb(coef, cfg.n), w, cfg.n);
            coef += round_half_away(cfg.alpha * w * f * bracket);
        }
    }
}

bool enforce_average(CoeffGrid& grid, const CoeffGrid& anchor,
                     const WaveletBlock& block, int w, const EmbedConfig& cfg) {
    const int half = 1 << (cfg.n - 1);
    const int top = (1 << cfg.n) - 1;
    const int period = 1 << cfg.n;
    const int count = block.side * block.side;

    auto in_target = [&](double avg) {
        return w > 0 ? avg >= half && avg < period : avg >= 0.0 && avg < half;
    };

    if (cfg.mode == EmbedMode::Literal)
        return in_target(block_average(grid, block, cfg.n));

    const int lo = w > 0 ? half + cfg.margin : 0;
    const int hi = w > 0 ? top : half - cfg.margin;

    long long sum = 0;
    for (int dr = 0; dr < block.side; ++dr) {
        for (int dc = 0; dc < block.side; ++dc) {
            int32_t& coef = grid.at(block.row + dr, block.col + dc);
            const int32_t base = anchor.at(block.row + dr, block.col + dc);
            const int res = lsb(base, cfg.n);
            int32_t fresh = base;
            if (res < lo || res > hi) {
                // Wrapped residue distances to the two band edges.
                const int up = (lo - res + period) & (period - 1);
                const int down = (res - hi + period) & (period - 1);
                int delta = up <= down ? up : -down;
                // Smoothing attacks shrink coefficient amplitudes, which
                // pulls residues of small positive coefficients toward 0
                // and of small negative ones toward 2^n. If exactly one
                // direction gives the new coefficient the sign whose
                // shrunk residue still reads as w, take that direction.
                if (std::abs(base) <= 2 * top) {
                    const bool up_read = w > 0 ? base + up < 0 : base + up >= 0;
                    const bool down_read = w > 0 ? base - down < 0 : base - down >= 0;
                    if (up_read != down_read) delta = up_read ? up : -down;
                }
                fresh = base + delta;
            }
            coef = fresh;
            sum += lsb(fresh, cfg.n);
        }
    }
    return in_target(static_cast<double>(sum) / count);
}

std::pair<ObjectImage, EmbedReport> embed(const ObjectImage& obj, uint64_t seed,
                                          const EmbedConfig& cfg) {
    validate_config(cfg);
    CoeffGrid grid = forward(obj, cfg.levels);
    const std::vector<WaveletBlock> blocks = embeddable_blocks(grid, cfg);
    if (blocks.empty())
        throw WatermarkError("no eligible wavelet blocks inside the mask");

    EmbedReport report;
    report.blocks_eligible = blocks.size();
    report.l_used = std::min(cfg.length, blocks.size());

    std::vector<BlockActivity> activities;
    activities.reserve(report.l_used);
    for (size_t k = 0; k < report.l_used; ++k)
        activities.push_back(block_activity(grid, blocks[k], cfg.beta));
    report.tc = classify(activities);

    // Anchoring the enforcement on the pre-perturbation coefficients keeps
    // the Eq. 7 nudge from inflating guaranteed-mode distortion: the band
    // placement supersedes it anyway.
    const CoeffGrid original = grid;
    const WatermarkSequence wm = generate_watermark(seed, report.l_used);
    for (size_t k = 0; k < report.l_used; ++k) {
        const int w = wm.values[k];
        perturb_block(grid, blocks[k], w, activities[k].t, cfg);
        if (enforce_average(grid, original, blocks[k], w, cfg))
            ++report.eq_average_satisfied;
    }

    ObjectImage marked = inverse(grid);

    // Diagnostic: coefficients that fail to round-trip indicate [0,255]
    // clamp saturation in the inverse.
    {
        const CoeffGrid check = forward(marked, cfg.levels);
        for (size_t i = 0; i < check.coeffs.size(); ++i)
            if (grid.mask[i] && check.coeffs[i] != grid.coeffs[i])
                ++report.clamped_pixels;
    }

    // Masked PSNR vs. the input.
    double mse = 0.0;
    size_t inside = 0;
    for (size_t i = 0; i < obj.size(); ++i) {
        if (!obj.mask[i]) continue;
        const double d = static_cast<double>(obj.pixels[i]) - marked.pixels[i];
        mse += d * d;
        ++inside;
    }
    mse /= static_cast<double>(inside);
    report.psnr = mse == 0.0 ? std::numeric_limits<double>::infinity()
                             : 10.0 * std::log10(255.0 * 255.0 / mse);
    return {std::move(marked), report};
}

std::vector<int8_t> extract(const ObjectImage& marked,
                            const std::vector<uint8_t>& mask,
                            const EmbedConfig& cfg) {
    validate_config(cfg);
    ObjectImage obj = marked;
    obj.mask = mask;
    CoeffGrid grid = forward(obj, cfg.levels);
    const std::vector<WaveletBlock> blocks = embeddable_blocks(grid, cfg);
    if (blocks.empty())
        throw WatermarkError("no eligible wavelet blocks inside the mask");

    const size_t l_used = std::min(cfg.length, blocks.size());
    const int half = 1 << (cfg.n - 1);
    std::vector<int8_t> bits;
    bits.reserve(l_used);
    for (size_t k = 0; k < l_used; ++k)
        bits.push_back(block_average(grid, blocks[k], cfg.n) < half ? -1 : 1);
    return bits;
}

DetectionReport detect(const ObjectImage& marked,
                       const std::vector<uint8_t>& mask, uint64_t seed,
                       const EmbedConfig& cfg) {
    validate_config(cfg);
    ObjectImage obj = marked;
    obj.mask = mask;
    CoeffGrid grid = forward(obj, cfg.levels);
    const std::vector<WaveletBlock> blocks = embeddable_blocks(grid, cfg);
    if (blocks.empty())
        throw WatermarkError("no eligible wavelet blocks inside the mask");

    DetectionReport report;
    report.l_used = std::min(cfg.length, blocks.size());
    report.threshold = cfg.rho_threshold;
    report.bits.reserve(report.l_used);
    report.block_averages.reserve(report.l_used);
    const int half = 1 << (cfg.n - 1);
    for (size_t k = 0; k < report.l_used; ++k) {
        const double avg = block_average(grid, blocks[k], cfg.n);
        report.block_averages.push_back(avg);
        report.bits.push_back(avg < half ? -1 : 1);
    }

    const WatermarkSequence wm = generate_watermark(seed, report.l_used);
    long long dot = 0;
    for (size_t k = 0; k < report.l_used; ++k)
        dot += static_cast<long long>(report.bits[k]) * wm.values[k];
    report.rho = static_cast<double>(dot) / static_cast<double>(report.l_used);
    report.present = report.rho >= cfg.rho_threshold;
    return report;
}

uint64_t parse_seed(const std::string& text) {
    if (text.empty()) throw WatermarkError("empty seed string");
    size_t pos = 0;
    const int base = text.size() > 2 && (text[1] == 'x' || text[1] == 'X') ? 16 : 10;
    const uint64_t v = std::stoull(text, &pos, base);
    if (pos != text.size()) throw WatermarkError("malformed seed: " + text);
    return v;
}

}  // namespace objwm
