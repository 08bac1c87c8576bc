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

// Acceptance suite: each check prints one PASS/FAIL line; the process exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cdct/cordic.hpp"
#include "cdct/dct8.hpp"

using namespace cdct;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool ok,
            const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx,
                what.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok)
        ++g_failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

Matrix scaled_matrix(const ScaledTransform& t) {
    Matrix m = implied_matrix(t.graph);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            m.at(i, j) *= t.out_scale[i];
    return m;
}

// 1. Table 2 regression, runtime < 1 s.
void criterion_1() {
    const double t0 = now_seconds();
    const CostReport v1 = cost_report(build(Dct8Variant::variant_c_i).graph);
    const CostReport v2 = cost_report(build(Dct8Variant::variant_c_ii).graph);
    const double elapsed = now_seconds() - t0;
    const bool ok = v1.additions == 37 && v1.shifts == 16 &&
                    v1.bit_inversions == 0 &&
                    v1.critical_path == PathDelay{7, 0} &&
                    v2.additions == 36 && v2.shifts == 16 &&
                    v2.bit_inversions == 1 &&
                    v2.critical_path == PathDelay{6, 1} && elapsed < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "I = {%d add, %d sh, %d inv, %s}; II = {%d add, %d sh, %d "
                  "inv, %s}; %.3fs",
                  v1.additions, v1.shifts, v1.bit_inversions,
                  v1.critical_path.to_string().c_str(), v2.additions,
                  v2.shifts, v2.bit_inversions,
                  v2.critical_path.to_string().c_str(), elapsed);
    report(1, "arithmetic complexity and critical path regression", ok,
           detail);
}

// 2. Exactness gate.
void criterion_2() {
    const double err =
        max_abs_diff(scaled_matrix(build(Dct8Variant::reference)),
                     dct2_matrix_exact());
    char detail[64];
    std::snprintf(detail, sizeof detail, "max abs error %.3e", err);
    report(2, "reference build reproduces the orthonormal DCT-II", err <= 1e-12,
           detail);
}

// 3. CORDIC algebra.
void criterion_3() {
    bool ok = true;
    std::string why;

    auto rot_exact = [](double angle) {
        Matrix r(2, 2);
        r.at(0, 0) = std::cos(angle);
        r.at(0, 1) = -std::sin(angle);
        r.at(1, 0) = std::sin(angle);
        r.at(1, 1) = std::cos(angle);
        return r;
    };

    std::mt19937_64 rng(3);
    std::vector<RotationPlan> plans;
    const VariantCPlans vc = variant_c_plans();
    plans.push_back(vc.alpha);
    plans.push_back(vc.beta);
    plans.push_back(vc.gamma);
    for (int i = 0; i < 250; ++i) {
        RotationPlan p;
        int shift = int(rng() % 3);
        const int steps = 1 + int(rng() % 5);
        for (int s = 0; s < steps; ++s) {
            p.steps.push_back({shift, rng() % 2 ? 1 : -1});
            shift += 1 + int(rng() % 3);
        }
        plans.push_back(p);
    }
    for (const RotationPlan& p : plans) {
        if (max_abs_diff(rotation_matrix_approx(p),
                         rot_exact(achieved_angle(p))) > 1e-12) {
            ok = false;
            why = "matrix != R(achieved angle)";
            break;
        }
        RotationPlan flipped = p;
        for (auto& s : flipped.steps)
            s.sign = -s.sign;
        if (scale_factor(flipped) != scale_factor(p)) {
            ok = false;
            why = "scale factor changed under sign flips";
            break;
        }
    }
    if (ok && scale_factor(vc.beta) != scale_factor(vc.gamma)) {
        ok = false;
        why = "K_beta != K_gamma over the shared index set";
    }
    report(3, "rotation algebra (matrix identity, sign-invariant equal scales)",
           ok, ok ? "253 plans checked to 1e-12" : why);
}

// 4. Variant C reproduction by search.
void criterion_4() {
    const auto [beta, gamma] = paired_search(kBeta, kGamma, 4, 3);
    auto signs = [](const RotationPlan& p) {
        std::vector<int> v;
        for (const auto& s : p.steps)
            v.push_back(s.sign);
        return v;
    };
    auto shifts = [](const RotationPlan& p) {
        std::vector<int> v;
        for (const auto& s : p.steps)
            v.push_back(s.shift);
        return v;
    };
    bool ok = shifts(beta) == std::vector<int>{1, 2, 4} &&
              shifts(gamma) == std::vector<int>{1, 2, 4} &&
              signs(beta) == std::vector<int>{-1, 1, 1} &&
              signs(gamma) == std::vector<int>{-1, -1, 1};

    const RotationPlan alpha = search_atr(kAlpha, {1, 4}, 2, true);
    ok = ok && signs(alpha) == std::vector<int>{-1, 1};
    report(4, "searches reproduce the published microrotation sets", ok,
           "paired {1,2,4}: beta {-,+,+}, gamma {-,-,+}; alpha over {1,4}: "
           "{-,+}");
}

// 5. Rewrite soundness.
void criterion_5() {
    const ScaledTransform raw = build(Dct8Variant::variant_c_raw);
    const Matrix m0 = implied_matrix(raw.graph);
    const int a0 = cost_report(raw.graph).additions;

    const MergeResult merged = rewrite_merge_neg_into_adder(raw.graph);
    const int a1 = cost_report(merged.graph).additions;
    const double e1 = max_abs_diff(implied_matrix(merged.graph), m0);

    const FlowGraph notted = rewrite_neg_to_not_with_carry(merged.graph, {5});
    const int a2 = cost_report(notted).additions;
    const double e2 = max_abs_diff(implied_matrix(notted), m0);

    const bool ok = a0 == 38 && a1 == 37 && a2 == 36 && e1 <= 1e-12 &&
                    e2 <= 1e-12;
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "additions %d -> %d -> %d; matrix drift %.1e, %.1e", a0, a1,
                  a2, e1, e2);
    report(5, "both rewrites preserve the transform and save one adder each",
           ok, detail);
}

// 6. LSB property, runtime < 30 s.
void criterion_6() {
    const double t0 = now_seconds();
    const ScaledTransform v1 = build(Dct8Variant::variant_c_i);
    const ScaledTransform v2 = build(Dct8Variant::variant_c_ii);
    const FxpFormat in{8, 0};
    const FormatAssignment fa1 = assign_formats(v1.graph, in, 16, 12);
    const FormatAssignment fa2 = assign_formats(v2.graph, in, 16, 12);

    bool ok = true;
    long long checked = 0;
    std::vector<FxpValue> x(8, make_fxp(0, in));

    auto check_one = [&]() {
        const auto y1 = eval_fxp(v1.graph, x, fa1);
        const auto y2 = eval_fxp(v2.graph, x, fa2);
        for (int p = 0; p < 8; ++p) {
            const int64_t d = y2[p].raw - y1[p].raw;
            // at most one LSB on port 5 (observed: exactly +1), zero elsewhere
            if (p == 5 ? d != 1 : d != 0)
                return false;
        }
        return true;
    };

    // 10^5 seeded random vectors
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100000 && ok; ++trial) {
        for (int i = 0; i < 8; ++i)
            x[i] = make_fxp(int64_t(rng() % 256) - 128, in);
        ok = check_one();
        ++checked;
    }
    // exhaustive sweep of two coordinates (one feeding each odd rotation)
    for (int i = 0; i < 8; ++i)
        x[i] = make_fxp(0, in);
    x[0] = make_fxp(37, in);
    x[3] = make_fxp(-90, in);
    for (int64_t a = -128; a <= 127 && ok; ++a)
        for (int64_t b = -128; b <= 127 && ok; ++b) {
            x[2] = make_fxp(a, in);
            x[6] = make_fxp(b, in);
            ok = check_one();
            ++checked;
        }
    const double elapsed = now_seconds() - t0;
    ok = ok && elapsed < 30.0;
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "%lld vectors: ports != 5 equal, X5 offset exactly +1 LSB; "
                  "%.2fs",
                  checked, elapsed);
    report(6, "variant II matches variant I except one LSB on X5", ok, detail);
}

// 7. 2-D correctness.
void criterion_7() {
    const ScaledTransform ref = build(Dct8Variant::reference);
    const Matrix c = dct2_matrix_exact();
    const Matrix ct = transpose(c);
    const Matrix sg = scale_grid(ref);
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int round = 0; round < 100; ++round) {
        Matrix blk(8, 8);
        for (double& v : blk.m)
            v = double(int64_t(rng() % 65536) - 32768) / 128.0;
        const Matrix got = transform_2d_real(ref, blk);
        Matrix scaled(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                scaled.at(i, j) = got.at(i, j) * sg.at(i, j);
        worst = std::max(worst,
                         max_abs_diff(scaled, matmul(matmul(c, blk), ct)));
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "100 blocks, worst error %.3e", worst);
    report(7, "row-column transform equals C*B*C^T", worst <= 1e-12, detail);
}

// 8. Symbolic check of the headline comparison against binDCT-C constants.
void criterion_8() {
    const CostReport v2 = cost_report(build(Dct8Variant::variant_c_ii).graph);
    const CostReport lit = bindct_c_reported();
    const double path_shorter =
        1.0 - double(v2.critical_path.adds) / double(lit.critical_path.adds);
    const double more_adds =
        double(v2.additions) / double(lit.additions) - 1.0;
    // 6 vs 9 adder levels is a ~35% shorter path; 36 vs 30 additions is 20%
    const bool ok = v2.critical_path.adds == 6 && lit.critical_path.adds == 9 &&
                    v2.additions == 36 && lit.additions == 30 &&
                    path_shorter > 0.30 && path_shorter < 0.40 &&
                    std::abs(more_adds - 0.20) < 1e-12;
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "critical path 6/9 (%.1f%% shorter), additions 36/30 "
                  "(+%.0f%%)",
                  path_shorter * 100.0, more_adds * 100.0);
    report(8, "headline ratios versus binDCT-C literature constants", ok,
           detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
