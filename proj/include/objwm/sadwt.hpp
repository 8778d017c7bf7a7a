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

#ifndef OBJWM_SADWT_HPP
#define OBJWM_SADWT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "objwm/image.hpp"

namespace objwm {

// Multi-level in-place lifting shape-adaptive DWT over an arbitrary mask.
//
// The kernel is the integer Haar S-transform (d = odd - even,
// s = even + floor(d/2)). Each level operates on the lattice of positions
// whose coordinates are multiples of 2^(level-1), rows then columns, and
// pairs samples by global coordinate parity so subbands stay interleaved
// at their original pixel coordinates. Out-of-mask positions are never
// read or written; samples without an in-mask partner pass through
// unchanged, which keeps the transform exactly invertible and the
// coefficient count equal to the mask popcount.

// Wavelet coefficients stored in-place at original pixel coordinates.
// Cells with mask=0 still hold the untouched input pixels.
struct CoeffGrid {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<int32_t> coeffs;
    std::vector<uint8_t> mask;

    int32_t at(int r, int c) const { return coeffs[static_cast<size_t>(r) * width + c]; }
    int32_t& at(int r, int c) { return coeffs[static_cast<size_t>(r) * width + c]; }
    bool in_mask(int r, int c) const { return mask[static_cast<size_t>(r) * width + c] != 0; }
};

// A 2^levels x 2^levels aligned tile of the interleaved arrangement.
// `index` is the tile's rank in the raster enumeration of eligible tiles.
struct WaveletBlock {
    int index = 0;
    int row = 0;
    int col = 0;
    int side = 0;
};

enum class Band { LL, HL, LH, HH };

struct SubbandId {
    int level;  // 1..levels
    Band band;
};

// A deinterleaved subband plane. valid[i]=0 where the source cell is
// outside the mask (or outside the raster for ragged dimensions).
struct SubbandPlane {
    int width = 0;
    int height = 0;
    std::vector<int32_t> values;
    std::vector<uint8_t> valid;
};

class TransformError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One forward/inverse lifting pass along a line of `extent` cells with the
// given element stride, visiting lattice positions 0, step, 2*step, ...
// Exposed for direct testing of the pairing/passthrough rules.
void lift_line_forward(int32_t* data, const uint8_t* mask, int extent,
                       int stride, int step);
void lift_line_inverse(int32_t* data, const uint8_t* mask, int extent,
                       int stride, int step);

// Forward multi-level SA-DWT. Requires levels >= 1, 2^levels <= min(w, h)
// and a non-empty mask.
CoeffGrid forward(const ObjectImage& obj, int levels);

// Exact inverse. Perfect integer reconstruction on unmodified forward
// output; pixels are clamped to [0, 255] when coefficients were perturbed.
ObjectImage inverse(const CoeffGrid& grid);

// Lazy-wavelet extraction of one deinterleaved subband plane.
SubbandPlane extract_subband(const CoeffGrid& grid, SubbandId id);

// Raster-order enumeration of N x N aligned tiles fully inside the mask.
// N must equal 2^levels so each tile is one basic coefficient group.
std::vector<WaveletBlock> level_blocks(const CoeffGrid& grid, int n);

// Subband name like "HL2", for report keys and dump file names.
std::string subband_name(SubbandId id);

}  // namespace objwm

#endif  // OBJWM_SADWT_HPP
