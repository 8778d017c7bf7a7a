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

#include "objwm/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <vector>

#include <jpeglib.h>
#include <unistd.h>

#include "objwm/rng.hpp"

namespace objwm {

namespace {

inline uint8_t clamp8(double v) {
    return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

double bilinear_sample(const std::vector<uint8_t>& src, int w, int h, double x,
                       double y) {
    const int x0 = clampi(static_cast<int>(std::floor(x)), 0, w - 1);
    const int y0 = clampi(static_cast<int>(std::floor(y)), 0, h - 1);
    const int x1 = clampi(x0 + 1, 0, w - 1);
    const int y1 = clampi(y0 + 1, 0, h - 1);
    const double fx = std::clamp(x - x0, 0.0, 1.0);
    const double fy = std::clamp(y - y0, 0.0, 1.0);
    const double top = src[static_cast<size_t>(y0) * w + x0] * (1 - fx) +
                       src[static_cast<size_t>(y0) * w + x1] * fx;
    const double bot = src[static_cast<size_t>(y1) * w + x0] * (1 - fx) +
                       src[static_cast<size_t>(y1) * w + x1] * fx;
    return top * (1 - fy) + bot * fy;
}

std::vector<uint8_t> bilinear_resize(const std::vector<uint8_t>& src, int sw,
                                     int sh, int dw, int dh) {
    std::vector<uint8_t> dst(static_cast<size_t>(dw) * dh);
    const double sx = static_cast<double>(sw) / dw;
    const double sy = static_cast<double>(sh) / dh;
    for (int y = 0; y < dh; ++y) {
        for (int x = 0; x < dw; ++x) {
            const double px = (x + 0.5) * sx - 0.5;
            const double py = (y + 0.5) * sy - 0.5;
            dst[static_cast<size_t>(y) * dw + x] =
                clamp8(bilinear_sample(src, sw, sh, px, py));
        }
    }
    return dst;
}

}  // namespace

ObjectImage add_noise(const ObjectImage& img, NoiseKind kind, double percent,
                      uint64_t seed) {
    if (percent < 0.0) throw std::invalid_argument("noise percent must be >= 0");
    ObjectImage out = img;
    if (percent == 0.0) return out;
    SplitMix64 rng(seed);
    for (size_t i = 0; i < out.size(); ++i) {
        double noise = 0.0;
        switch (kind) {
            case NoiseKind::Uniform: {
                const double amp = 255.0 * percent / 200.0;
                noise = rng.next_range(-amp, amp);
                break;
            }
            case NoiseKind::Gaussian:
                noise = rng.next_normal() * 2.55 * percent;
                break;
            case NoiseKind::Laplacian:
                noise = rng.next_laplacian(2.55 * percent / std::sqrt(2.0));
                break;
        }
        out.pixels[i] = clamp8(img.pixels[i] + noise);
    }
    return out;
}

ObjectImage blur3(const ObjectImage& img) {
    ObjectImage out = img;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int sum = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    sum += img.at(clampi(y + dy, 0, img.height - 1),
                                  clampi(x + dx, 0, img.width - 1));
            out.at(y, x) = clamp8(sum / 9.0);
        }
    }
    return out;
}

ObjectImage median5(const ObjectImage& img) {
    ObjectImage out = img;
    uint8_t window[25];
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int n = 0;
            for (int dy = -2; dy <= 2; ++dy)
                for (int dx = -2; dx <= 2; ++dx)
                    window[n++] = img.at(clampi(y + dy, 0, img.height - 1),
                                         clampi(x + dx, 0, img.width - 1));
            std::nth_element(window, window + 12, window + 25);
            out.at(y, x) = window[12];
        }
    }
    return out;
}

ObjectImage gaussian_filter(const ObjectImage& img) {
    // 3x3, sigma = 0.5: weights exp(-(dx^2+dy^2)/(2*0.25)), normalized.
    double kernel[3][3];
    double total = 0.0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            kernel[dy + 1][dx + 1] = std::exp(-(dx * dx + dy * dy) / 0.5);
            total += kernel[dy + 1][dx + 1];
        }
    ObjectImage out = img;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    acc += kernel[dy + 1][dx + 1] *
                           img.at(clampi(y + dy, 0, img.height - 1),
                                  clampi(x + dx, 0, img.width - 1));
            out.at(y, x) = clamp8(acc / total);
        }
    }
    return out;
}

ObjectImage rescale_roundtrip(const ObjectImage& img, double factor) {
    if (factor <= 0.0 || factor > 1.0)
        throw std::invalid_argument("rescale factor must be in (0, 1]");
    const int dw = static_cast<int>(std::lround(img.width * factor));
    const int dh = static_cast<int>(std::lround(img.height * factor));
    if (dw < 8 || dh < 8)
        throw std::invalid_argument("rescale target smaller than 8x8");
    if (dw == img.width && dh == img.height) return img;

    const std::vector<uint8_t> small =
        bilinear_resize(img.pixels, img.width, img.height, dw, dh);
    ObjectImage out = img;
    out.pixels = bilinear_resize(small, dw, dh, img.width, img.height);
    return out;
}

ObjectImage jpeg_roundtrip(const ObjectImage& img, int quality) {
    if (quality < 1 || quality > 100)
        throw std::invalid_argument("JPEG quality must be in [1, 100]");

    unsigned char* buf = nullptr;
    unsigned long buf_size = 0;
    {
        jpeg_compress_struct cinfo;
        jpeg_error_mgr jerr;
        cinfo.err = jpeg_std_error(&jerr);
        jpeg_create_compress(&cinfo);
        jpeg_mem_dest(&cinfo, &buf, &buf_size);
        cinfo.image_width = static_cast<JDIMENSION>(img.width);
        cinfo.image_height = static_cast<JDIMENSION>(img.height);
        cinfo.input_components = 1;
        cinfo.in_color_space = JCS_GRAYSCALE;
        jpeg_set_defaults(&cinfo);
        jpeg_set_quality(&cinfo, quality, TRUE);
        jpeg_start_compress(&cinfo, TRUE);
        std::vector<uint8_t> row(img.width);
        while (cinfo.next_scanline < cinfo.image_height) {
            std::copy_n(img.pixels.data() +
                            static_cast<size_t>(cinfo.next_scanline) * img.width,
                        img.width, row.data());
            JSAMPROW rows[1] = {row.data()};
            jpeg_write_scanlines(&cinfo, rows, 1);
        }
        jpeg_finish_compress(&cinfo);
        jpeg_destroy_compress(&cinfo);
    }

    ObjectImage out = img;
    {
        jpeg_decompress_struct dinfo;
        jpeg_error_mgr jerr;
        dinfo.err = jpeg_std_error(&jerr);
        jpeg_create_decompress(&dinfo);
        jpeg_mem_src(&dinfo, buf, buf_size);
        jpeg_read_header(&dinfo, TRUE);
        dinfo.out_color_space = JCS_GRAYSCALE;
        jpeg_start_decompress(&dinfo);
        if (static_cast<int>(dinfo.output_width) != img.width ||
            static_cast<int>(dinfo.output_height) != img.height) {
            jpeg_destroy_decompress(&dinfo);
            std::free(buf);
            throw CodecUnavailable("JPEG round-trip changed dimensions");
        }
        std::vector<uint8_t> row(img.width);
        while (dinfo.output_scanline < dinfo.output_height) {
            JSAMPROW rows[1] = {row.data()};
            const JDIMENSION y = dinfo.output_scanline;
            jpeg_read_scanlines(&dinfo, rows, 1);
            std::copy_n(row.data(), img.width,
                        out.pixels.data() + static_cast<size_t>(y) * img.width);
        }
        jpeg_finish_decompress(&dinfo);
        jpeg_destroy_decompress(&dinfo);
    }
    std::free(buf);
    return out;
}

ObjectImage jpeg2000_roundtrip(const ObjectImage& img, int quality,
                               const std::string& command) {
    if (command.empty())
        throw CodecUnavailable("no external JPEG2000 command configured");

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const fs::path in = dir / ("objwm_jp2_in_" + std::to_string(::getpid()) + ".pgm");
    const fs::path out = dir / ("objwm_jp2_out_" + std::to_string(::getpid()) + ".pgm");
    save_image(img, in.string());

    const std::string cmdline =
        command + " " + in.string() + " " + out.string() + " " + std::to_string(quality);
    const int rc = std::system(cmdline.c_str());
    if (rc != 0) {
        fs::remove(in);
        throw CodecUnavailable("JPEG2000 command failed: " + cmdline);
    }
    ObjectImage result = load_image(out.string());
    fs::remove(in);
    fs::remove(out);
    if (result.width != img.width || result.height != img.height)
        throw CodecUnavailable("JPEG2000 round-trip changed dimensions");
    result.mask = img.mask;
    return result;
}

ObjectImage rewatermark(const ObjectImage& img, const std::vector<uint8_t>& mask,
                        uint64_t seed2, const EmbedConfig& cfg) {
    ObjectImage obj = img;
    obj.mask = mask;
    return embed(obj, seed2, cfg).first;
}

ObjectImage apply_attack(const ObjectImage& img, const AttackSpec& spec,
                         const std::vector<uint8_t>& mask,
                         const EmbedConfig& embed_cfg,
                         const std::string& jpeg2000_command) {
    if (spec.kind == "uniform_noise")
        return add_noise(img, NoiseKind::Uniform, spec.strength, spec.rng_seed);
    if (spec.kind == "gaussian_noise")
        return add_noise(img, NoiseKind::Gaussian, spec.strength, spec.rng_seed);
    if (spec.kind == "laplacian_noise")
        return add_noise(img, NoiseKind::Laplacian, spec.strength, spec.rng_seed);
    if (spec.kind == "blur3") return blur3(img);
    if (spec.kind == "median5") return median5(img);
    if (spec.kind == "gaussian_filter") return gaussian_filter(img);
    if (spec.kind == "rescale") return rescale_roundtrip(img, spec.strength);
    if (spec.kind == "jpeg")
        return jpeg_roundtrip(img, static_cast<int>(std::lround(spec.strength)));
    if (spec.kind == "jpeg2000")
        return jpeg2000_roundtrip(img, static_cast<int>(std::lround(spec.strength)),
                                  jpeg2000_command);
    if (spec.kind == "rewatermark") {
        const uint64_t second_key =
            spec.rng_seed ? spec.rng_seed
                          : static_cast<uint64_t>(std::llround(spec.strength));
        return rewatermark(img, mask, second_key, embed_cfg);
    }
    throw std::invalid_argument("unknown attack kind: " + spec.kind);
}

}  // namespace objwm
