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

#ifndef OBJWM_IMAGE_HPP
#define OBJWM_IMAGE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace objwm {

// Thrown for unreadable/unwritable files and malformed rasters.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An 8-bit grayscale raster plus a binary shape mask of identical
// dimensions. mask[i] != 0 means "inside the object". Row-major.
struct ObjectImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;
    std::vector<uint8_t> mask;

    ObjectImage() = default;
    ObjectImage(int w, int h, uint8_t fill = 0)
        : width(w), height(h),
          pixels(static_cast<size_t>(w) * h, fill),
          mask(static_cast<size_t>(w) * h, 1) {}

    size_t size() const { return pixels.size(); }
    uint8_t at(int r, int c) const { return pixels[static_cast<size_t>(r) * width + c]; }
    uint8_t& at(int r, int c) { return pixels[static_cast<size_t>(r) * width + c]; }
    bool in_mask(int r, int c) const { return mask[static_cast<size_t>(r) * width + c] != 0; }

    size_t mask_popcount() const {
        size_t n = 0;
        for (uint8_t m : mask) n += (m != 0);
        return n;
    }
};

// Binary PGM (P5, maxval 255) I/O. P2 is accepted on read for hand-written
// test fixtures. The loaded mask is all-true.
ObjectImage load_image(const std::string& path);
void save_image(const ObjectImage& img, const std::string& path);

// Loads a mask raster and thresholds it: value > 127 -> inside object.
// Dimensions must match (width, height); an all-false mask is an error.
std::vector<uint8_t> load_mask(const std::string& path, int width, int height);
void save_mask(const std::vector<uint8_t>& mask, int width, int height,
               const std::string& path);

// Line-oriented key/value report. Keys keep insertion order so golden-file
// diffs stay stable. Doubles are serialized with 6 decimals; infinity uses
// the "inf" sentinel.
class Report {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);
    void set_u64(const std::string& key, uint64_t value);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

    std::string to_text() const;
    static Report from_text(const std::string& text);

    void save(const std::string& path) const;
    static Report load(const std::string& path);

    static std::string format_double(double v);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace objwm

#endif  // OBJWM_IMAGE_HPP
