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

#include <array>
#include <cstdint>
#include <string>

#include "cdct/flowgraph.hpp"

namespace cdct {

// Quantization folds the transform's extracted output scales into the table
// entries, so the multiplierless datapath never has to apply them.

struct QuantTable {
    std::array<std::array<double, 8>, 8> q{};
};

struct FoldedQuantTable {
    std::array<std::array<double, 8>, 8> q_folded{};
    QuantTable source;
    std::array<double, 8> scales{};
};

struct LevelGrid {
    std::array<std::array<int64_t, 8>, 8> level{};
};

/// Uniform table with every entry equal to `value` (> 0).
QuantTable uniform_qtable(double value);

/// Reads a whitespace-separated 8x8 matrix of positive reals.
QuantTable load_qtable(const std::string& path);

/// q_folded[i][j] = q[i][j] / (out_scale[i] * out_scale[j]). Quantizing
/// unscaled graph outputs with the folded table equals quantizing true
/// coefficients with the original one (up to rounding ties).
FoldedQuantTable fold_scales(const QuantTable& q,
                             const std::array<double, 8>& out_scale);

/// Round half away from zero of coeff / entry.
LevelGrid quantize(const Matrix& coeffs,
                   const std::array<std::array<double, 8>, 8>& entries);

Matrix dequantize(const LevelGrid& levels,
                  const std::array<std::array<double, 8>, 8>& entries);

} // namespace cdct
