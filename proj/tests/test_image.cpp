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

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "objwm/image.hpp"
#include "testutil.hpp"

using namespace objwm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("objwm_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("load_image decodes a 2x2 binary graymap directly") {
    TempDir tmp;
    const std::string p = tmp.file("a.pgm");
    {
        std::ofstream out(p, std::ios::binary);
        out << "P5\n2 2\n255\n";
        const uint8_t bytes[4] = {0, 255, 128, 64};
        out.write(reinterpret_cast<const char*>(bytes), 4);
    }
    const ObjectImage img = load_image(p);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<uint8_t>{0, 255, 128, 64});
    CHECK(img.mask == std::vector<uint8_t>{1, 1, 1, 1});
}

TEST_CASE("save/load round-trip is bit-exact") {
    TempDir tmp;
    ObjectImage img = testutil::synth_image(64, 64, 7);
    // Exercise the full 8-bit range, not only the synth band.
    SplitMix64 rng(99);
    for (auto& p : img.pixels) p = static_cast<uint8_t>(rng.next_below(256));
    const std::string p = tmp.file("rt.pgm");
    save_image(img, p);
    const ObjectImage back = load_image(p);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);
}

TEST_CASE("704x480 object loads with matching dimensions") {
    TempDir tmp;
    const ObjectImage img = testutil::smooth_object();
    const std::string p = tmp.file("smooth_object.pgm");
    save_image(img, p);
    const ObjectImage back = load_image(p);
    CHECK(back.width == 704);
    CHECK(back.height == 480);
}

TEST_CASE("load_image error paths") {
    TempDir tmp;
    CHECK_THROWS_AS(load_image(tmp.file("missing.pgm")), IoError);

    const std::string bad = tmp.file("bad.pgm");
    {
        std::ofstream out(bad, std::ios::binary);
        out << "P6\n2 2\n255\n";  // PPM, not PGM
    }
    CHECK_THROWS_AS(load_image(bad), IoError);

    const std::string zero = tmp.file("zero.pgm");
    {
        std::ofstream out(zero, std::ios::binary);
        out << "P5\n0 0\n255\n";
    }
    CHECK_THROWS_AS(load_image(zero), IoError);

    const std::string truncated = tmp.file("trunc.pgm");
    {
        std::ofstream out(truncated, std::ios::binary);
        out << "P5\n4 4\n255\nab";
    }
    CHECK_THROWS_AS(load_image(truncated), IoError);
}

TEST_CASE("load_mask thresholds at 127 and rejects empty masks") {
    TempDir tmp;

    ObjectImage raster(4, 4, 255);
    const std::string all = tmp.file("all.pgm");
    save_image(raster, all);
    const auto mask = load_mask(all, 4, 4);
    CHECK(std::count(mask.begin(), mask.end(), 1) == 16);

    for (auto& p : raster.pixels) p = 0;
    const std::string none = tmp.file("none.pgm");
    save_image(raster, none);
    CHECK_THROWS_WITH_AS(load_mask(none, 4, 4), doctest::Contains("empty mask"),
                         IoError);

    // Checkerboard, straddling the threshold.
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) raster.at(y, x) = (x + y) % 2 ? 255 : 0;
    const std::string checker = tmp.file("checker.pgm");
    save_image(raster, checker);
    const auto cmask = load_mask(checker, 4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            CHECK(cmask[static_cast<size_t>(y) * 4 + x] == ((x + y) % 2 ? 1 : 0));

    CHECK_THROWS_AS(load_mask(checker, 8, 8), IoError);  // dimension mismatch
}

TEST_CASE("mask thresholding is idempotent through save/load") {
    TempDir tmp;
    const auto mask = testutil::random_mask(32, 24, 5);
    const std::string p = tmp.file("mask.pgm");
    save_mask(mask, 32, 24, p);
    CHECK(load_mask(p, 32, 24) == mask);
}

TEST_CASE("report round-trips values including rho and the inf sentinel") {
    Report r;
    r.set("attack.0.rho", 0.7101);
    r.set("psnr", std::numeric_limits<double>::infinity());
    r.set("name", "sans attack");
    const Report back = Report::from_text(r.to_text());
    CHECK(back.get_double("attack.0.rho") == doctest::Approx(0.7101));
    CHECK(std::isinf(back.get_double("psnr")));
    CHECK(back.get("name") == "sans attack");
}

TEST_CASE("empty report serializes to a valid empty record set") {
    const Report r;
    CHECK(r.to_text().empty());
    const Report back = Report::from_text("");
    CHECK(back.entries().empty());
}
