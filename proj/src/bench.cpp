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

#include "objwm/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "objwm/rng.hpp"

namespace objwm {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
}

std::string attack_name(const AttackSpec& spec) {
    std::ostringstream name;
    name << spec.kind;
    if (spec.kind == "jpeg" || spec.kind == "jpeg2000")
        name << " q=" << static_cast<int>(std::lround(spec.strength));
    else if (spec.kind == "rescale")
        name << " f=" << Report::format_double(spec.strength);
    else if (spec.kind.find("noise") != std::string::npos)
        name << " p=" << Report::format_double(spec.strength);
    return name.str();
}

}  // namespace

double psnr_masked(const ObjectImage& a, const ObjectImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("psnr_masked: dimension mismatch");
    if (a.mask != b.mask)
        throw std::invalid_argument("psnr_masked: mask mismatch");

    double mse = 0.0;
    size_t inside = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a.mask[i]) continue;
        const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
        mse += d * d;
        ++inside;
    }
    if (inside == 0) throw std::invalid_argument("psnr_masked: empty mask");
    mse /= static_cast<double>(inside);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::vector<double> key_sweep(const ObjectImage& marked,
                              const std::vector<uint8_t>& mask,
                              uint64_t true_seed, int n_keys,
                              const EmbedConfig& cfg, uint64_t wrong_key_seed) {
    if (n_keys < 1) throw std::invalid_argument("key_sweep: n_keys must be >= 1");
    const std::vector<int8_t> bits = extract(marked, mask, cfg);
    const size_t l_used = bits.size();

    SplitMix64 keygen(wrong_key_seed);
    std::vector<double> responses;
    responses.reserve(n_keys);
    const int true_index = n_keys / 2;
    for (int i = 0; i < n_keys; ++i) {
        uint64_t seed;
        if (i == true_index) {
            seed = true_seed;
        } else {
            do {
                seed = keygen.next();
            } while (seed == true_seed);
        }
        const WatermarkSequence wm = generate_watermark(seed, l_used);
        long long dot = 0;
        for (size_t k = 0; k < l_used; ++k)
            dot += static_cast<long long>(bits[k]) * wm.values[k];
        responses.push_back(static_cast<double>(dot) / static_cast<double>(l_used));
    }
    return responses;
}

std::optional<double> reference_rho(const AttackSpec& spec) {
    // Canonical detector responses for the standard attack matrix.
    const int q = static_cast<int>(std::lround(spec.strength));
    if (spec.kind == "jpeg") {
        if (q == 65) return 0.2435;
        if (q == 70) return 0.3102;
        if (q == 85) return 0.4676;
    } else if (spec.kind == "jpeg2000") {
        if (q == 65) return 0.3491;
        if (q == 75) return 0.4231;
        if (q == 85) return 0.5296;
    } else if (spec.kind == "uniform_noise") {
        if (q == 10) return 0.6673;
        if (q == 20) return 0.6024;
        if (q == 30) return 0.5338;
        if (q == 100) return 0.1556;
    } else if (spec.kind == "laplacian_noise") {
        if (q == 20) return 0.2298;
    } else if (spec.kind == "gaussian_noise") {
        if (q == 10) return 0.1357;
    } else if (spec.kind == "blur3") {
        return 0.1983;
    } else if (spec.kind == "median5") {
        return 0.2224;
    } else if (spec.kind == "gaussian_filter") {
        return 0.6404;
    } else if (spec.kind == "rescale") {
        if (std::fabs(spec.strength - 0.75) < 1e-9) return 0.2382;
        if (std::fabs(spec.strength - 0.5) < 1e-9) return 0.1084;
    }
    return std::nullopt;
}

BenchRun run_attack_matrix(const ObjectImage& obj, uint64_t seed, const EmbedConfig& cfg,
                    const std::vector<AttackSpec>& attacks,
                    const std::string& image_id,
                    const std::string& jpeg2000_command) {
    BenchRun run;
    run.image_id = image_id;
    run.cfg = cfg;
    run.seed = seed;

    const auto embed_start = std::chrono::steady_clock::now();
    auto [marked, embed_rep] = embed(obj, seed, cfg);
    run.embed_millis = elapsed_ms(embed_start);
    run.embed_report = embed_rep;

    for (const AttackSpec& spec : attacks) {
        BenchRow row;
        row.spec = spec;
        row.name = attack_name(spec);
        row.reference_rho = reference_rho(spec);
        const auto start = std::chrono::steady_clock::now();
        try {
            const ObjectImage attacked =
                apply_attack(marked, spec, obj.mask, cfg, jpeg2000_command);
            row.psnr_after = attacked.width == marked.width &&
                                     attacked.height == marked.height
                                 ? psnr_masked(marked, attacked)
                                 : std::numeric_limits<double>::quiet_NaN();
            const DetectionReport det = detect(attacked, obj.mask, seed, cfg);
            row.rho = det.rho;
            row.present = det.present;
            if (spec.kind == "rewatermark" && cfg.mode == EmbedMode::Guaranteed) {
                row.note =
                    "expected-fail: guaranteed mode rewrites block averages, "
                    "so a second embedding overwrites the first key's bits";
            }
        } catch (const CodecUnavailable& e) {
            row.skipped = true;
            row.note = e.what();
        } catch (const std::exception& e) {
            row.skipped = true;
            row.note = std::string("error: ") + e.what();
        }
        row.millis = elapsed_ms(start);
        run.rows.push_back(std::move(row));
    }
    return run;
}

Report bench_report(const BenchRun& run) {
    Report r;
    r.set("image", run.image_id);
    r.set_u64("seed", run.seed);
    r.set("mode", run.cfg.mode == EmbedMode::Guaranteed ? "guaranteed" : "literal");
    r.set("n", static_cast<long long>(run.cfg.n));
    r.set("levels", static_cast<long long>(run.cfg.levels));
    r.set("block_size", static_cast<long long>(run.cfg.block_size));
    r.set("alpha", run.cfg.alpha);
    r.set("beta", run.cfg.beta);
    r.set("length", static_cast<long long>(run.cfg.length));
    r.set("rho_threshold", run.cfg.rho_threshold);
    r.set("margin", static_cast<long long>(run.cfg.margin));
    r.set("noise_convention",
          "uniform:U(+-255p/200) gaussian:sigma=2.55p laplacian:b=2.55p/sqrt2");
    r.set("embed.l_used", static_cast<long long>(run.embed_report.l_used));
    r.set("embed.blocks_eligible",
          static_cast<long long>(run.embed_report.blocks_eligible));
    r.set("embed.eq_average_satisfied",
          static_cast<long long>(run.embed_report.eq_average_satisfied));
    r.set("embed.psnr", run.embed_report.psnr);
    r.set("embed.millis", run.embed_millis);

    for (size_t i = 0; i < run.rows.size(); ++i) {
        const BenchRow& row = run.rows[i];
        const std::string p = "attack." + std::to_string(i) + ".";
        r.set(p + "name", row.name);
        r.set(p + "strength", row.spec.strength);
        r.set_u64(p + "rng_seed", row.spec.rng_seed);
        if (row.skipped) {
            r.set(p + "status", "skipped");
        } else {
            r.set(p + "status", row.present ? "present" : "absent");
            r.set(p + "rho", row.rho);
            r.set(p + "psnr_after", row.psnr_after);
        }
        if (row.reference_rho) r.set(p + "reference_rho", *row.reference_rho);
        if (!row.note.empty()) r.set(p + "note", row.note);
        r.set(p + "millis", row.millis);
    }
    return r;
}

std::string bench_csv(const BenchRun& run) {
    std::ostringstream out;
    out << "attack,strength,rng_seed,rho,present,reference_rho,psnr_after,status\n";
    for (const BenchRow& row : run.rows) {
        out << row.name << "," << Report::format_double(row.spec.strength) << ","
            << row.spec.rng_seed << ",";
        if (row.skipped) {
            out << ",,";
        } else {
            out << Report::format_double(row.rho) << ","
                << (row.present ? "yes" : "no") << ",";
        }
        if (row.reference_rho)
            out << Report::format_double(*row.reference_rho);
        out << ",";
        if (!row.skipped) out << Report::format_double(row.psnr_after);
        out << "," << (row.skipped ? "skipped" : "ok") << "\n";
    }
    return out.str();
}

std::vector<AttackSpec> parse_attack_list(const std::string& text) {
    std::vector<AttackSpec> specs;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        AttackSpec spec;
        if (!(fields >> spec.kind)) continue;  // blank line
        if (!(fields >> spec.strength))
            throw WatermarkError("attack list: missing or malformed strength: " +
                                 line);
        std::string seed_text;
        if (fields >> seed_text) spec.rng_seed = parse_seed(seed_text);
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<AttackSpec> load_attack_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_attack_list(buf.str());
}

}  // namespace objwm
