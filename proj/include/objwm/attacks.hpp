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

#ifndef OBJWM_ATTACKS_HPP
#define OBJWM_ATTACKS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "objwm/image.hpp"
#include "objwm/watermark.hpp"

namespace objwm {

// Attack simulators. All operate on the full raster, carry the mask
// through unchanged, and are deterministic given their seeds.
//
// Noise percent conventions (the source experiments leave these
// unspecified; these definitions are recorded in every bench report):
//   uniform   p -> U[-255p/200, +255p/200]
//   gaussian  p -> normal, sigma = 2.55p
//   laplacian p -> scale b = 2.55p/sqrt(2)  (sigma-matched to gaussian)

enum class NoiseKind { Uniform, Gaussian, Laplacian };

class CodecUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ObjectImage add_noise(const ObjectImage& img, NoiseKind kind, double percent,
                      uint64_t seed);

// 3x3 uniform box mean, replicate borders.
ObjectImage blur3(const ObjectImage& img);

// 5x5 median, replicate borders.
ObjectImage median5(const ObjectImage& img);

// 3x3 gaussian, sigma = 0.5, kernel normalized, replicate borders.
ObjectImage gaussian_filter(const ObjectImage& img);

// Bilinear downscale to (round(w*f), round(h*f)) then bilinear upscale
// back. Requires 0 < factor <= 1 and a target of at least 8x8.
ObjectImage rescale_roundtrip(const ObjectImage& img, double factor);

// Baseline JPEG encode/decode at the given quality (1..100), grayscale.
ObjectImage jpeg_roundtrip(const ObjectImage& img, int quality);

// Optional JPEG2000 round-trip through an external command invoked as
// `cmd <in.pgm> <out.pgm> <quality>`. Throws CodecUnavailable when the
// command is empty or fails, so bench rows can be marked skipped.
ObjectImage jpeg2000_roundtrip(const ObjectImage& img, int quality,
                               const std::string& command);

// Embeds a second watermark with another key on an already-marked object.
ObjectImage rewatermark(const ObjectImage& img, const std::vector<uint8_t>& mask,
                        uint64_t seed2, const EmbedConfig& cfg);

// A parsed attack row: kind keyword, strength (percent / quality factor /
// scale, per kind) and the noise seed.
struct AttackSpec {
    std::string kind;
    double strength = 0.0;
    uint64_t rng_seed = 0;
};

// Dispatches one AttackSpec. `jpeg2000_command` may be empty (row throws
// CodecUnavailable); `embed_cfg`/`mask` feed the rewatermark kind, whose
// strength is reinterpreted as the second key.
ObjectImage apply_attack(const ObjectImage& img, const AttackSpec& spec,
                         const std::vector<uint8_t>& mask,
                         const EmbedConfig& embed_cfg,
                         const std::string& jpeg2000_command);

}  // namespace objwm

#endif  // OBJWM_ATTACKS_HPP
