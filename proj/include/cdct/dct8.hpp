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
#include <optional>
#include <set>

#include "cdct/cordic.hpp"
#include "cdct/flowgraph.hpp"

namespace cdct {

// 8-point DCT-II as a shift-add flow graph. The structure is a Loeffler
// factorization: input butterflies, one plane rotation on the even half and
// two on the odd half, then two more butterfly stages. All scalar constants
// (butterfly sqrt(2) factors and the CORDIC scale factors) are extracted
// into a per-output scale vector so the graph itself stays multiplierless.

/// The three rotation angles of the factorization.
inline constexpr double kAlpha = -0.39269908169872414; // -pi/8
inline constexpr double kBeta = -0.19634954084936207;  // -pi/16
inline constexpr double kGamma = -0.5890486225480862;  // -3*pi/16

/// One plane rotation of the factorization: exact (constant multipliers,
/// real semantics only) when `plan` is empty, otherwise the CORDIC plan.
struct RotationSpec {
    double angle = 0.0;
    std::optional<RotationPlan> plan;
};

/// A flow graph together with the extracted output scales: true DCT
/// coefficient k = out_scale[k] * graph output k.
struct ScaledTransform {
    FlowGraph graph;
    std::array<double, 8> out_scale{};
};

enum class Dct8Variant {
    reference,     // exact rotations; the correctness oracle
    variant_c_raw, // CORDIC rotations, two explicit stage-5 negations
    variant_c_i,   // raw after merging the lower negation into an adder
    variant_c_ii,  // variant I with the remaining negation as a NOT gate
};

const char* variant_name(Dct8Variant v);

/// Orthonormal DCT-II matrix: C[k][n] = c_k/2 * cos((2n+1)k*pi/16).
Matrix dct2_matrix_exact();

/// The microrotation plans used by variant C: beta and gamma share the
/// index set {1,2,4} (hence one common scale factor), alpha uses {1,4}.
struct VariantCPlans {
    RotationPlan alpha, beta, gamma;
};
VariantCPlans variant_c_plans();

ScaledTransform build(Dct8Variant v);

/// Removes every negation whose consumers are all adders, turning each
/// consuming add into a subtract (one adder saved per negation). Leaves the
/// graph unchanged (merged == 0) when nothing qualifies.
struct MergeResult {
    FlowGraph graph;
    int merged = 0;
};
MergeResult rewrite_merge_neg_into_adder(const FlowGraph& g);

/// Replaces each remaining negation with a bitwise NOT and re-injects the
/// missing +1 through free carry inputs of downstream adders. Consumers
/// whose carry is already spoken for (subtractors use it themselves) cannot
/// absorb it; every output port reachable through such a consumer must be
/// listed in `allow_uncompensated` and keeps a one-LSB error in fixed-point
/// semantics. Real-valued semantics are unchanged.
FlowGraph rewrite_neg_to_not_with_carry(const FlowGraph& g,
                                        const std::set<int>& allow_uncompensated);

std::array<double, 8> transform_1d_real(const ScaledTransform& t,
                                        const std::array<double, 8>& x);

/// Fixed-point 1-D transform under a format assignment for t.graph; the
/// caller applies out_scale (or folds it into quantization).
std::vector<FxpValue> transform_1d_fxp(const ScaledTransform& t,
                                       const std::vector<FxpValue>& x,
                                       const FormatAssignment& fmts);

/// Row-column 2-D transform in real semantics; true coefficients are the
/// returned grid times scale_grid(t).
Matrix transform_2d_real(const ScaledTransform& t, const Matrix& block);

/// S[i][j] = out_scale[i] * out_scale[j].
Matrix scale_grid(const ScaledTransform& t);

/// Fixed-point row-column transform: 8x8 raw samples in `in_fmt` through
/// the graph twice. `pass1_out_width` of 0 derives the minimal row-pass
/// output width; the column pass always derives its widths by interval
/// analysis from the row pass's range.
struct Fxp2dResult {
    std::array<std::array<int64_t, 8>, 8> raw{};
    FxpFormat row_pass_out;
    FxpFormat out_format;
};
Fxp2dResult transform_2d_fxp(const ScaledTransform& t,
                             const std::array<std::array<int64_t, 8>, 8>& block,
                             FxpFormat in_fmt, int internal_width,
                             int pass1_out_width = 0);

struct AccuracyReport {
    double matrix_max_abs = 0.0;    // |diag(scale)*M - DCT| max entry
    double matrix_frobenius = 0.0;
    double fxp_max_abs = 0.0;       // vs real-mode reference, seeded blocks
    double fxp_rms = 0.0;
    int trials = 0;
    uint64_t seed = 0;
};
AccuracyReport accuracy_report(Dct8Variant v, int trials, uint64_t seed,
                               FxpFormat in_fmt, int internal_width = 16);

/// Complexity of the binDCT-C transform as reported in the literature; kept
/// for side-by-side comparison, never recomputed here.
CostReport bindct_c_reported();

} // namespace cdct
