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

#include "objwm/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace objwm {

namespace {

// Reads one PNM header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (!std::isspace(ch)) {
            tok.push_back(static_cast<char>(ch));
            break;
        }
    }
    while ((ch = in.get()) != EOF && !std::isspace(ch) && ch != '#') {
        tok.push_back(static_cast<char>(ch));
    }
    if (ch == '#') in.unget();
    return tok;
}

int parse_int(const std::string& tok, const std::string& path, const char* what) {
    try {
        size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw IoError(path + ": bad " + what + " in PGM header");
    }
}

}  // namespace

ObjectImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");

    const std::string magic = next_token(in);
    if (magic != "P5" && magic != "P2")
        throw IoError(path + ": not a PGM file (magic '" + magic + "')");

    ObjectImage img;
    img.width = parse_int(next_token(in), path, "width");
    img.height = parse_int(next_token(in), path, "height");
    const int maxval = parse_int(next_token(in), path, "maxval");
    if (img.width <= 0 || img.height <= 0)
        throw IoError(path + ": zero-area image");
    if (maxval <= 0 || maxval > 255)
        throw IoError(path + ": unsupported bit depth (maxval " +
                      std::to_string(maxval) + ")");

    const size_t count = static_cast<size_t>(img.width) * img.height;
    img.pixels.resize(count);
    img.mask.assign(count, 1);

    if (magic == "P5") {
        // The single whitespace after maxval was already consumed.
        in.read(reinterpret_cast<char*>(img.pixels.data()),
                static_cast<std::streamsize>(count));
        if (static_cast<size_t>(in.gcount()) != count)
            throw IoError(path + ": truncated pixel data");
    } else {
        for (size_t i = 0; i < count; ++i) {
            int v = 0;
            if (!(in >> v)) throw IoError(path + ": truncated pixel data");
            if (v < 0 || v > maxval) throw IoError(path + ": sample out of range");
            img.pixels[i] = static_cast<uint8_t>(v);
        }
    }
    if (maxval != 255) {
        for (auto& p : img.pixels)
            p = static_cast<uint8_t>(std::lround(p * 255.0 / maxval));
    }
    return img;
}

void save_image(const ObjectImage& img, const std::string& path) {
    if (img.width <= 0 || img.height <= 0)
        throw IoError(path + ": refusing to save zero-area image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.size()));
    if (!out) throw IoError(path + ": write failure");
}

std::vector<uint8_t> load_mask(const std::string& path, int width, int height) {
    const ObjectImage raster = load_image(path);
    if (raster.width != width || raster.height != height) {
        throw IoError(path + ": mask dimensions " + std::to_string(raster.width) +
                      "x" + std::to_string(raster.height) + " do not match image " +
                      std::to_string(width) + "x" + std::to_string(height));
    }
    std::vector<uint8_t> mask(raster.size());
    size_t inside = 0;
    for (size_t i = 0; i < raster.size(); ++i) {
        mask[i] = raster.pixels[i] > 127 ? 1 : 0;
        inside += mask[i];
    }
    if (inside == 0) throw IoError(path + ": empty mask");
    return mask;
}

void save_mask(const std::vector<uint8_t>& mask, int width, int height,
               const std::string& path) {
    ObjectImage img(width, height);
    for (size_t i = 0; i < img.size(); ++i)
        img.pixels[i] = mask[i] ? 255 : 0;
    save_image(img, path);
}

void Report::set(const std::string& key, const std::string& value) {
    for (auto& e : entries_) {
        if (e.first == key) {
            e.second = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void Report::set(const std::string& key, double value) {
    set(key, format_double(value));
}

void Report::set(const std::string& key, long long value) {
    set(key, std::to_string(value));
}

void Report::set_u64(const std::string& key, uint64_t value) {
    set(key, std::to_string(value));
}

bool Report::has(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.first == key) return true;
    return false;
}

const std::string& Report::get(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.first == key) return e.second;
    throw std::out_of_range("report key not found: " + key);
}

double Report::get_double(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(v);
}

std::string Report::format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string Report::to_text() const {
    std::ostringstream out;
    for (const auto& e : entries_)
        out << e.first << "=" << e.second << "\n";
    return out.str();
}

Report Report::from_text(const std::string& text) {
    Report r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("malformed report line: " + line);
        r.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return r;
}

void Report::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << to_text();
    if (!out) throw IoError(path + ": write failure");
}

Report Report::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

}  // namespace objwm
