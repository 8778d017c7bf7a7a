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

#ifndef OBJWM_BENCH_HPP
#define OBJWM_BENCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "objwm/attacks.hpp"
#include "objwm/image.hpp"
#include "objwm/watermark.hpp"

namespace objwm {

// Masked PSNR in dB: MSE over mask-true pixels only. Identical content
// yields +infinity (serialized as "inf"). Dimensions and masks must match.
double psnr_masked(const ObjectImage& a, const ObjectImage& b);

// Detector responses for n_keys keys against one marked image. The block
// averages are extracted once; each key only re-correlates. Index
// n_keys/2 carries the true key, the rest are drawn from a splitmix64
// stream over wrong_key_seed (skipping collisions with the true key).
std::vector<double> key_sweep(const ObjectImage& marked,
                              const std::vector<uint8_t>& mask,
                              uint64_t true_seed, int n_keys,
                              const EmbedConfig& cfg, uint64_t wrong_key_seed);

struct BenchRow {
    AttackSpec spec;
    std::string name;
    double rho = 0.0;
    bool present = false;
    bool skipped = false;        // codec unavailable or row error
    double psnr_after = 0.0;     // masked PSNR of attacked vs. marked image
    std::optional<double> reference_rho;  // reference value, annotation only
    std::string note;
    double millis = 0.0;
};

struct BenchRun {
    std::string image_id;
    EmbedConfig cfg;
    uint64_t seed = 0;
    EmbedReport embed_report;
    double embed_millis = 0.0;
    std::vector<BenchRow> rows;
};

// Embeds once, applies each attack to a fresh copy of the marked image,
// detects each. A failing row is marked skipped with its error in `note`;
// it never aborts the run.
BenchRun run_attack_matrix(const ObjectImage& obj, uint64_t seed, const EmbedConfig& cfg,
                    const std::vector<AttackSpec>& attacks,
                    const std::string& image_id,
                    const std::string& jpeg2000_command);

// Report rendering: flat key/value records plus a CSV table with one line
// per attack row.
Report bench_report(const BenchRun& run);
std::string bench_csv(const BenchRun& run);

// Attack list file: one attack per line, `kind strength [rng_seed]`,
// '#' comments and blank lines ignored.
std::vector<AttackSpec> parse_attack_list(const std::string& text);
std::vector<AttackSpec> load_attack_list(const std::string& path);

// Canonical reference detector responses for well-known attack settings,
// used as report annotations only (never asserted).
std::optional<double> reference_rho(const AttackSpec& spec);

}  // namespace objwm

#endif  // OBJWM_BENCH_HPP
