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

// objwm: blind watermarking of arbitrarily shaped image objects.
//
// Exit codes: 0 success, 1 watermark absent (detect --strict),
// 2 usage error, 3 I/O or codec error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "objwm/attacks.hpp"
#include "objwm/bench.hpp"
#include "objwm/image.hpp"
#include "objwm/sadwt.hpp"
#include "objwm/watermark.hpp"

namespace {

using namespace objwm;

std::string jpeg2000_command_from_env() {
    const char* cmd = std::getenv("OBJWM_JPEG2000_CMD");
    return cmd ? cmd : "";
}

void add_config_options(CLI::App* cmd, EmbedConfig& cfg, std::string& mode) {
    cmd->add_option("--n", cfg.n, "LSB count")->check(CLI::Range(1, 8));
    cmd->add_option("--levels", cfg.levels, "wavelet levels");
    cmd->add_option("--block-size", cfg.block_size, "block side (2^levels)");
    cmd->add_option("--alpha", cfg.alpha, "embedding strength");
    cmd->add_option("--beta", cfg.beta, "texture sensitivity exponent");
    cmd->add_option("--length", cfg.length, "watermark length L");
    cmd->add_option("--threshold", cfg.rho_threshold, "detection threshold");
    cmd->add_option("--mode", mode, "embedding mode: guaranteed|literal")
        ->check(CLI::IsMember({"guaranteed", "literal"}));
    cmd->add_option("--margin", cfg.margin, "LSB-average margin (guaranteed mode)");
    cmd->add_flag("--flag-table-variant", cfg.flag_table_variant,
                  "use the tabulated flag variant (flag == w)");
    cmd->add_flag("--skip-zero-average", cfg.skip_zero_average,
                  "skip blocks whose LSB average is zero (desync risk)");
    cmd->set_config("--config");
}

EmbedMode mode_from(const std::string& mode) {
    return mode == "literal" ? EmbedMode::Literal : EmbedMode::Guaranteed;
}

ObjectImage load_object(const std::string& image_path, const std::string& mask_path) {
    ObjectImage img = load_image(image_path);
    if (!mask_path.empty())
        img.mask = load_mask(mask_path, img.width, img.height);
    return img;
}

// 16-bit signed raster as P5 maxval 65535 (big-endian), offset +32768.
void save_plane16(const SubbandPlane& plane, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P5\n" << plane.width << " " << plane.height << "\n65535\n";
    for (int32_t v : plane.values) {
        const int32_t biased = std::clamp(v + 32768, 0, 65535);
        out.put(static_cast<char>((biased >> 8) & 0xFF));
        out.put(static_cast<char>(biased & 0xFF));
    }
    if (!out) throw IoError(path + ": write failure");
}

int run(int argc, char** argv) {
    CLI::App app{"blind watermarking for arbitrarily shaped image objects"};
    app.require_subcommand(1);

    std::string image_path, mask_path, out_path, report_path;
    std::string seed_text = "0";
    EmbedConfig cfg;
    std::string mode = "guaranteed";

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "embed a watermark");
    embed_cmd->add_option("--image", image_path)->required();
    embed_cmd->add_option("--mask", mask_path)->required();
    embed_cmd->add_option("--seed", seed_text)->required();
    embed_cmd->add_option("--out", out_path)->required();
    embed_cmd->add_option("--report", report_path);
    add_config_options(embed_cmd, cfg, mode);

    // detect
    bool strict = false;
    auto* detect_cmd = app.add_subcommand("detect", "detect a watermark");
    detect_cmd->add_option("--image", image_path)->required();
    detect_cmd->add_option("--mask", mask_path)->required();
    detect_cmd->add_option("--seed", seed_text)->required();
    detect_cmd->add_option("--report", report_path);
    detect_cmd->add_flag("--strict", strict, "exit 1 when absent");
    add_config_options(detect_cmd, cfg, mode);

    // extract
    auto* extract_cmd = app.add_subcommand("extract", "print the extracted bits");
    extract_cmd->add_option("--image", image_path)->required();
    extract_cmd->add_option("--mask", mask_path)->required();
    add_config_options(extract_cmd, cfg, mode);

    // attack
    std::string attack_kind;
    double attack_strength = 0.0;
    std::string attack_seed_text = "0";
    auto* attack_cmd = app.add_subcommand("attack", "apply one attack");
    attack_cmd->add_option("--image", image_path)->required();
    attack_cmd->add_option("--out", out_path)->required();
    attack_cmd->add_option("--kind", attack_kind)->required();
    attack_cmd->add_option("--strength", attack_strength);
    attack_cmd->add_option("--rng-seed", attack_seed_text);
    attack_cmd->add_option("--mask", mask_path, "required for rewatermark");
    add_config_options(attack_cmd, cfg, mode);

    // psnr
    std::string path_a, path_b;
    auto* psnr_cmd = app.add_subcommand("psnr", "masked PSNR between two images");
    psnr_cmd->add_option("--a", path_a)->required();
    psnr_cmd->add_option("--b", path_b)->required();
    psnr_cmd->add_option("--mask", mask_path);

    // transform
    std::string dump_dir;
    int levels = 3;
    auto* transform_cmd =
        app.add_subcommand("transform", "dump subband planes (debug)");
    transform_cmd->add_option("--image", image_path)->required();
    transform_cmd->add_option("--mask", mask_path);
    transform_cmd->add_option("--levels", levels);
    transform_cmd->add_option("--dump-dir", dump_dir)->required();

    // bench
    std::string attacks_path, csv_path;
    auto* bench_cmd = app.add_subcommand("bench", "run an attack matrix");
    bench_cmd->add_option("--image", image_path)->required();
    bench_cmd->add_option("--mask", mask_path)->required();
    bench_cmd->add_option("--seed", seed_text)->required();
    bench_cmd->add_option("--attacks", attacks_path)->required();
    bench_cmd->add_option("--out", report_path)->required();
    bench_cmd->add_option("--csv", csv_path);
    add_config_options(bench_cmd, cfg, mode);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message / help text
        return e.get_exit_code() == 0 ? 0 : 2;
    }
    cfg.mode = mode_from(mode);

    if (embed_cmd->parsed()) {
        const ObjectImage obj = load_object(image_path, mask_path);
        const auto [marked, rep] = embed(obj, parse_seed(seed_text), cfg);
        save_image(marked, out_path);
        std::printf("embedded L=%zu blocks (eligible %zu), masked PSNR %s dB\n",
                    rep.l_used, rep.blocks_eligible,
                    Report::format_double(rep.psnr).c_str());
        if (!report_path.empty()) {
            Report r;
            r.set("l_used", static_cast<long long>(rep.l_used));
            r.set("blocks_eligible", static_cast<long long>(rep.blocks_eligible));
            r.set("eq_average_satisfied",
                  static_cast<long long>(rep.eq_average_satisfied));
            r.set("tc", rep.tc);
            r.set("psnr", rep.psnr);
            r.save(report_path);
        }
        return 0;
    }

    if (detect_cmd->parsed()) {
        const ObjectImage img = load_image(image_path);
        const auto mask = load_mask(mask_path, img.width, img.height);
        const DetectionReport rep = detect(img, mask, parse_seed(seed_text), cfg);
        std::printf("rho=%s %s\n", Report::format_double(rep.rho).c_str(),
                    rep.present ? "PRESENT" : "ABSENT");
        if (!report_path.empty()) {
            Report r;
            r.set("rho", rep.rho);
            r.set("present", rep.present ? "yes" : "no");
            r.set("threshold", rep.threshold);
            r.set("l_used", static_cast<long long>(rep.l_used));
            r.save(report_path);
        }
        return rep.present || !strict ? 0 : 1;
    }

    if (extract_cmd->parsed()) {
        const ObjectImage img = load_image(image_path);
        const auto mask = load_mask(mask_path, img.width, img.height);
        const auto bits = extract(img, mask, cfg);
        std::string line;
        line.reserve(bits.size());
        for (int8_t b : bits) line.push_back(b > 0 ? '1' : '0');
        std::printf("%s\n", line.c_str());
        return 0;
    }

    if (attack_cmd->parsed()) {
        ObjectImage img = load_image(image_path);
        std::vector<uint8_t> mask;
        if (attack_kind == "rewatermark") {
            if (mask_path.empty())
                throw CLI::ValidationError("attack", "rewatermark needs --mask");
            mask = load_mask(mask_path, img.width, img.height);
        }
        const AttackSpec spec{attack_kind, attack_strength,
                              parse_seed(attack_seed_text)};
        const ObjectImage attacked =
            apply_attack(img, spec, mask, cfg, jpeg2000_command_from_env());
        save_image(attacked, out_path);
        return 0;
    }

    if (psnr_cmd->parsed()) {
        ObjectImage a = load_image(path_a);
        ObjectImage b = load_image(path_b);
        if (!mask_path.empty()) {
            a.mask = load_mask(mask_path, a.width, a.height);
            b.mask = a.mask;
        }
        std::printf("%s\n", Report::format_double(psnr_masked(a, b)).c_str());
        return 0;
    }

    if (transform_cmd->parsed()) {
        const ObjectImage obj = load_object(image_path, mask_path);
        const CoeffGrid grid = forward(obj, levels);
        std::filesystem::create_directories(dump_dir);
        for (int lev = 1; lev <= levels; ++lev) {
            for (Band band : {Band::LL, Band::HL, Band::LH, Band::HH}) {
                if (band == Band::LL && lev != levels) continue;
                const SubbandId id{lev, band};
                const SubbandPlane plane = extract_subband(grid, id);
                const std::string base = dump_dir + "/" + subband_name(id);
                save_plane16(plane, base + ".pgm");
                save_mask(plane.valid, plane.width, plane.height,
                          base + "_valid.pgm");
            }
        }
        return 0;
    }

    if (bench_cmd->parsed()) {
        const ObjectImage obj = load_object(image_path, mask_path);
        const auto attacks = load_attack_list(attacks_path);
        const BenchRun run_result =
            run_attack_matrix(obj, parse_seed(seed_text), cfg, attacks,
                       std::filesystem::path(image_path).stem().string(),
                       jpeg2000_command_from_env());
        bench_report(run_result).save(report_path);
        if (!csv_path.empty()) {
            std::ofstream out(csv_path);
            if (!out) throw IoError(csv_path + ": cannot open for writing");
            out << bench_csv(run_result);
        }
        for (const BenchRow& row : run_result.rows) {
            std::printf("%-24s %s\n", row.name.c_str(),
                        row.skipped ? "skipped"
                                    : (Report::format_double(row.rho) +
                                       (row.present ? " PRESENT" : " ABSENT"))
                                          .c_str());
        }
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const objwm::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const objwm::CodecUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
