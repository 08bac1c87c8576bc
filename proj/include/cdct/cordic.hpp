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

#include <utility>
#include <vector>

#include "cdct/flowgraph.hpp"

namespace cdct {

// CORDIC arc-tangent-radix decomposition of plane rotations. A rotation by
// phi is approximated by a sequence of microrotations through +-atan(2^-i),
// each costing two shifts and two additions; the product of the per-step
// sqrt(1 + 2^-2i) magnifications is extracted as a single scale factor.

/// One elementary rotation: shift index i and direction sigma = +-1.
/// An omitted iteration is simply absent from the plan.
struct Microrotation {
    int shift = 0;
    int sign = 1;
};

struct RotationPlan {
    double target_angle = 0.0;
    std::vector<Microrotation> steps; // ascending shift index
};

/// Sum of sigma_i * atan(2^-i) over the plan's steps.
double achieved_angle(const RotationPlan& plan);

/// Product of sqrt(1 + 2^-2i); depends only on the shift indices, never on
/// the signs.
double scale_factor(const RotationPlan& plan);

/// The normalized product (1/K) * prod [[1, -s*2^-i], [s*2^-i, 1]]; equals
/// the exact rotation matrix R(achieved_angle).
Matrix rotation_matrix_approx(const RotationPlan& plan);

/// Appends the plan's iterations x' = x - s*2^-i*y, y' = y + s*2^-i*x to the
/// builder: two shifts, two additions and one adder level of depth per step.
/// The 1/K normalization is not emitted; callers fold it into their output
/// scales. Returns the (x, y) node ids after the final step.
std::pair<int, int> expand_to_graph(const RotationPlan& plan, GraphBuilder& b,
                                    int x_in, int y_in);

/// Exhaustive search over subsets of `allowed_indices` (each index at most
/// once, at most `max_steps` steps) and sign assignments, minimizing the
/// absolute angle error; ties prefer fewer steps, then a smaller scale
/// factor. With `use_all`, only plans using every given index are
/// considered. Throws std::invalid_argument on an empty search space.
RotationPlan search_atr(double target, const std::vector<int>& allowed_indices,
                        int max_steps, bool use_all = false);

/// Joint search for two angles constrained to one shared set of shift
/// indices (so both plans have identical scale factors), indices drawn from
/// 0..max_shift_index, at most max_steps steps; signs are free per plan.
/// Minimizes the larger of the two angle errors.
std::pair<RotationPlan, RotationPlan> paired_search(double target_a,
                                                    double target_b,
                                                    int max_shift_index,
                                                    int max_steps);

} // namespace cdct
