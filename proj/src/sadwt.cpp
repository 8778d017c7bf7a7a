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

#include "objwm/sadwt.hpp"

#include <algorithm>

namespace objwm {

namespace {

inline int32_t floor_half(int32_t v) { return v >> 1; }  // floor(v/2), also for negatives

void check_levels(int width, int height, int levels) {
    if (levels < 1) throw TransformError("levels must be >= 1");
    if ((1 << levels) > std::min(width, height))
        throw TransformError("levels too large for image dimensions: 2^" +
                             std::to_string(levels) + " > min(" +
                             std::to_string(width) + "," + std::to_string(height) + ")");
}

}  // namespace

void lift_line_forward(int32_t* data, const uint8_t* mask, int extent,
                       int stride, int step) {
    for (int e = 0; e < extent; e += 2 * step) {
        const int o = e + step;
        const bool me = mask[static_cast<size_t>(e) * stride] != 0;
        const bool mo = o < extent && mask[static_cast<size_t>(o) * stride] != 0;
        if (me && mo) {
            int32_t& xe = data[static_cast<size_t>(e) * stride];
            int32_t& xo = data[static_cast<size_t>(o) * stride];
            const int32_t d = xo - xe;
            xe += floor_half(d);  // s
            xo = d;
        }
        // Lone samples (either parity) pass through unchanged.
    }
}

void lift_line_inverse(int32_t* data, const uint8_t* mask, int extent,
                       int stride, int step) {
    for (int e = 0; e < extent; e += 2 * step) {
        const int o = e + step;
        const bool me = mask[static_cast<size_t>(e) * stride] != 0;
        const bool mo = o < extent && mask[static_cast<size_t>(o) * stride] != 0;
        if (me && mo) {
            int32_t& s = data[static_cast<size_t>(e) * stride];
            int32_t& d = data[static_cast<size_t>(o) * stride];
            const int32_t xe = s - floor_half(d);
            s = xe;       // even sample
            d = d + xe;   // odd sample
        }
    }
}

CoeffGrid forward(const ObjectImage& obj, int levels) {
    check_levels(obj.width, obj.height, levels);
    if (obj.mask_popcount() == 0) throw TransformError("empty mask");
    if (obj.pixels.size() != obj.mask.size())
        throw TransformError("pixel/mask dimension mismatch");

    CoeffGrid grid;
    grid.width = obj.width;
    grid.height = obj.height;
    grid.levels = levels;
    grid.mask = obj.mask;
    grid.coeffs.assign(obj.pixels.begin(), obj.pixels.end());

    for (int lev = 1; lev <= levels; ++lev) {
        const int step = 1 << (lev - 1);
        // Rows pass: lift along each lattice row.
        for (int r = 0; r < grid.height; r += step) {
            lift_line_forward(grid.coeffs.data() + static_cast<size_t>(r) * grid.width,
                              grid.mask.data() + static_cast<size_t>(r) * grid.width,
                              grid.width, 1, step);
        }
        // Columns pass.
        for (int c = 0; c < grid.width; c += step) {
            lift_line_forward(grid.coeffs.data() + c, grid.mask.data() + c,
                              grid.height, grid.width, step);
        }
    }
    return grid;
}

ObjectImage inverse(const CoeffGrid& grid) {
    check_levels(grid.width, grid.height, grid.levels);
    if (grid.coeffs.size() != grid.mask.size() ||
        grid.coeffs.size() != static_cast<size_t>(grid.width) * grid.height)
        throw TransformError("inconsistent coefficient grid dimensions");

    std::vector<int32_t> work = grid.coeffs;
    for (int lev = grid.levels; lev >= 1; --lev) {
        const int step = 1 << (lev - 1);
        for (int c = 0; c < grid.width; c += step) {
            lift_line_inverse(work.data() + c, grid.mask.data() + c,
                              grid.height, grid.width, step);
        }
        for (int r = 0; r < grid.height; r += step) {
            lift_line_inverse(work.data() + static_cast<size_t>(r) * grid.width,
                              grid.mask.data() + static_cast<size_t>(r) * grid.width,
                              grid.width, 1, step);
        }
    }

    ObjectImage out;
    out.width = grid.width;
    out.height = grid.height;
    out.mask = grid.mask;
    out.pixels.resize(work.size());
    for (size_t i = 0; i < work.size(); ++i)
        out.pixels[i] = static_cast<uint8_t>(std::clamp(work[i], 0, 255));
    return out;
}

SubbandPlane extract_subband(const CoeffGrid& grid, SubbandId id) {
    if (id.level < 1 || id.level > grid.levels)
        throw TransformError("subband level out of range");

    const int step = 1 << id.level;
    const int half = step >> 1;
    int roff = 0, coff = 0;
    switch (id.band) {
        case Band::LL: break;
        case Band::HL: coff = half; break;                // odd column, even row
        case Band::LH: roff = half; break;                // even column, odd row
        case Band::HH: roff = half; coff = half; break;   // odd/odd
    }

    SubbandPlane plane;
    plane.height = grid.height > roff ? (grid.height - roff + step - 1) / step : 0;
    plane.width = grid.width > coff ? (grid.width - coff + step - 1) / step : 0;
    plane.values.assign(static_cast<size_t>(plane.width) * plane.height, 0);
    plane.valid.assign(plane.values.size(), 0);

    for (int i = 0; i < plane.height; ++i) {
        for (int j = 0; j < plane.width; ++j) {
            const int r = i * step + roff;
            const int c = j * step + coff;
            if (grid.in_mask(r, c)) {
                plane.values[static_cast<size_t>(i) * plane.width + j] = grid.at(r, c);
                plane.valid[static_cast<size_t>(i) * plane.width + j] = 1;
            }
        }
    }
    return plane;
}

std::vector<WaveletBlock> level_blocks(const CoeffGrid& grid, int n) {
    if (n != (1 << grid.levels))
        throw TransformError("block size must equal 2^levels");

    std::vector<WaveletBlock> blocks;
    int k = 0;
    for (int r = 0; r + n <= grid.height; r += n) {
        for (int c = 0; c + n <= grid.width; c += n) {
            bool full = true;
            for (int dr = 0; dr < n && full; ++dr)
                for (int dc = 0; dc < n; ++dc)
                    if (!grid.in_mask(r + dr, c + dc)) {
                        full = false;
                        break;
                    }
            if (full) blocks.push_back({k++, r, c, n});
        }
    }
    return blocks;
}

std::string subband_name(SubbandId id) {
    static const char* names[] = {"LL", "HL", "LH", "HH"};
    return std::string(names[static_cast<int>(id.band)]) + std::to_string(id.level);
}

}  // namespace objwm
