/*
 * Copyright 2026 the cordic-dct authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cdct/dct8.hpp"

namespace cdct {

// Batch front end. Commands write their report to a stream and throw
// (std::invalid_argument / std::runtime_error) on bad input; the binary
// turns that into a one-line diagnostic and a nonzero exit.

struct RunConfig {
    std::string variant = "II";
    int in_width = 8;   // terminal input width (samples are level-shifted)
    int out_width = 12; // terminal output width, verified by interval analysis
    int internal_width = 16;
    uint64_t seed = 1;
    int trials = 1000;
    std::string format = "text"; // text | json | csv
    std::string mode = "real";   // real | fxp (transform, roundtrip)
    std::string dump_graph;      // write the variant graph as JSON here
    std::string qtable_path;     // empty: uniform demo table
    double qtable_value = 1.0;
};

Dct8Variant parse_variant(const std::string& name);

/// Operation counts and critical path for one variant, or for variants I
/// and II plus the binDCT-C literature row with `all`.
void cmd_analyze(const RunConfig& cfg, bool all, std::ostream& out);

/// Matrix error against the exact DCT-II plus fixed-point statistics over
/// seeded random blocks; JSON output carries the full report schema
/// (variant, cost, accuracy, scales).
void cmd_accuracy(const RunConfig& cfg, std::ostream& out);

/// Microrotation search for one target angle.
void cmd_search_atr(const RunConfig& cfg, double target,
                    const std::vector<int>& indices, bool use_all,
                    int max_steps, std::ostream& out);

/// 8x8 block transform of a PGM image; writes per-block coefficient grids
/// and the scale grid to `out_path` (json or csv).
void cmd_transform(const RunConfig& cfg, const std::string& image_path,
                   const std::string& out_path, std::ostream& out);

/// Forward transform, quantization with the scale-folded table,
/// dequantization with the original table and exact-matrix inverse; reports
/// the reconstruction PSNR.
void cmd_roundtrip(const RunConfig& cfg, const std::string& image_path,
                   std::ostream& out);

} // namespace cdct
