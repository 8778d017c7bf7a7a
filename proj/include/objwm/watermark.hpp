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

#ifndef OBJWM_WATERMARK_HPP
#define OBJWM_WATERMARK_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "objwm/hvs.hpp"
#include "objwm/image.hpp"
#include "objwm/sadwt.hpp"

namespace objwm {

// Key-seeded +/-1 sequence. Regeneration from (seed, length) is
// bit-identical: value k is +1 when the top bit of the k-th splitmix64
// output word is 0, else -1.
struct WatermarkSequence {
    uint64_t seed = 0;
    std::vector<int8_t> values;
};

enum class EmbedMode { Literal, Guaranteed };

struct EmbedConfig {
    int n = 5;                    // LSB count
    int levels = 3;
    int block_size = 8;           // must equal 2^levels
    double alpha = 0.3;
    double beta = 0.318;
    size_t length = 1700;         // requested watermark length L
    double rho_threshold = 0.1;
    EmbedMode mode = EmbedMode::Guaranteed;
    int margin = 4;               // LSB-average margin for guaranteed mode
    bool flag_table_variant = false;   // tabulated variant: flag == w
    bool skip_zero_average = false;    // skip blocks whose LSB average is 0
};

struct EmbedReport {
    size_t l_used = 0;
    size_t blocks_eligible = 0;
    size_t eq_average_satisfied = 0;  // blocks whose final average is in
                                      // the target half-interval
    size_t clamped_pixels = 0;
    double tc = 0.0;
    double psnr = 0.0;  // masked PSNR vs. the input
};

struct DetectionReport {
    double rho = 0.0;
    bool present = false;
    size_t l_used = 0;
    double threshold = 0.0;
    std::vector<int8_t> bits;            // extracted W'
    std::vector<double> block_averages;  // per-block LSB averages
};

class WatermarkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

WatermarkSequence generate_watermark(uint64_t seed, size_t length);

// Floor-modulus residue of a coefficient, always in [0, 2^n).
int lsb(int32_t coef, int n);

// Mean of the n-LSB residues over the block's coefficients.
double block_average(const CoeffGrid& grid, const WaveletBlock& block, int n);

// Per-coefficient flag and per-block strength signs. sign(0) = +1; the
// flag at the exact half-range residue is defined as flag = w, which
// is also what makes
// w * flag == sign(2^(n-1) - lsb) an identity over the whole domain.
int flag_sign(int coef_lsb, int w, int n);
int strength_sign(double avg, int w, int n);

// One-pass perturbation: I += round(alpha * w * flag * (2^(n-2-S) + t*2^(n-3))),
// rounding half away from zero.
void perturb_block(CoeffGrid& grid, const WaveletBlock& block, int w, int t,
                   const EmbedConfig& cfg);

// Guaranteed-mode average adjustment. Each coefficient is moved to the
// value nearest its anchor whose n-LSB residue lies inside the watermark
// band ([2^(n-1)+margin, 2^n-1] for w=+1, [0, 2^(n-1)-margin] for w=-1);
// with every residue in the band the block average is in w's half-interval
// by construction. For small coefficients the move additionally prefers
// the sign that survives amplitude-shrinking attacks (negative for w=+1,
// positive for w=-1), since smoothing drives residues of small positive
// coefficients toward 0 and of small negative ones toward 2^n. `anchor`
// is normally the pre-perturbation grid so the Eq. 7 nudge does not
// inflate the distortion; passing `grid` itself is allowed. No-op in
// literal mode. Returns true if the final average lies in w's
// half-interval.
bool enforce_average(CoeffGrid& grid, const CoeffGrid& anchor,
                     const WaveletBlock& block, int w, const EmbedConfig& cfg);

// Full embedding pipeline: forward SA-DWT, block enumeration, HVS
// classification over the first L_used blocks, per-block perturb +
// enforce, inverse transform with [0,255] clamp.
std::pair<ObjectImage, EmbedReport> embed(const ObjectImage& obj, uint64_t seed,
                                          const EmbedConfig& cfg);

// Blind extraction: bit k is -1 when block k's LSB average falls in
// [0, 2^(n-1)), else +1. Depends only on the marked image, mask and cfg.
std::vector<int8_t> extract(const ObjectImage& marked,
                            const std::vector<uint8_t>& mask,
                            const EmbedConfig& cfg);

// Correlation detector: rho = sum(W' * W) / L_used, present iff
// rho >= cfg.rho_threshold.
DetectionReport detect(const ObjectImage& marked,
                       const std::vector<uint8_t>& mask, uint64_t seed,
                       const EmbedConfig& cfg);

// Parses a seed given as decimal or 0x-prefixed hex.
uint64_t parse_seed(const std::string& text);

}  // namespace objwm

#endif  // OBJWM_WATERMARK_HPP
