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

#include "cdct/quant.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace cdct {

QuantTable uniform_qtable(double value) {
    if (!(value > 0.0))
        throw std::invalid_argument("quant: table entries must be > 0");
    QuantTable t;
    for (auto& row : t.q)
        row.fill(value);
    return t;
}

QuantTable load_qtable(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("quant: cannot open " + path);
    QuantTable t;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            double v;
            if (!(in >> v))
                throw std::runtime_error("quant: " + path +
                                         " does not hold an 8x8 matrix");
            if (!(v > 0.0))
                throw std::runtime_error("quant: nonpositive entry in " + path);
            t.q[r][c] = v;
        }
    return t;
}

FoldedQuantTable fold_scales(const QuantTable& q,
                             const std::array<double, 8>& out_scale) {
    for (double s : out_scale)
        if (!(s > 0.0))
            throw std::invalid_argument("fold_scales: scales must be > 0");
    FoldedQuantTable f;
    f.source = q;
    f.scales = out_scale;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (!(q.q[i][j] > 0.0))
                throw std::invalid_argument(
                    "fold_scales: table entries must be > 0");
            f.q_folded[i][j] = q.q[i][j] / (out_scale[i] * out_scale[j]);
        }
    return f;
}

LevelGrid quantize(const Matrix& coeffs,
                   const std::array<std::array<double, 8>, 8>& entries) {
    if (coeffs.rows != 8 || coeffs.cols != 8)
        throw std::invalid_argument("quantize: expected an 8x8 grid");
    LevelGrid g;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            // llround rounds halfway cases away from zero
            g.level[i][j] = std::llround(coeffs.at(i, j) / entries[i][j]);
    return g;
}

Matrix dequantize(const LevelGrid& levels,
                  const std::array<std::array<double, 8>, 8>& entries) {
    Matrix m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            m.at(i, j) = static_cast<double>(levels.level[i][j]) * entries[i][j];
    return m;
}

} // namespace cdct
