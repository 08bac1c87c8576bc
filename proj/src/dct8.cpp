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

#include "cdct/dct8.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cdct {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const double kSqrt2 = std::sqrt(2.0);

} // namespace

const char* variant_name(Dct8Variant v) {
    switch (v) {
    case Dct8Variant::reference: return "reference";
    case Dct8Variant::variant_c_raw: return "raw";
    case Dct8Variant::variant_c_i: return "I";
    case Dct8Variant::variant_c_ii: return "II";
    }
    return "?";
}

Matrix dct2_matrix_exact() {
    Matrix c(8, 8);
    for (int k = 0; k < 8; ++k) {
        const double ck = k == 0 ? 1.0 / kSqrt2 : 1.0;
        for (int n = 0; n < 8; ++n)
            c.at(k, n) = 0.5 * ck * std::cos((2 * n + 1) * k * kPi / 16.0);
    }
    return c;
}

VariantCPlans variant_c_plans() {
    VariantCPlans p;
    p.alpha = {kAlpha, {{1, -1}, {4, 1}}};
    p.beta = {kBeta, {{1, -1}, {2, 1}, {4, 1}}};
    p.gamma = {kGamma, {{1, -1}, {2, -1}, {4, 1}}};
    return p;
}

namespace {

/// Emits a plane rotation R(angle) on (x, y): exact rotations expand to four
/// constant multipliers and two adders (real semantics only), CORDIC
/// rotations to the plan's shift-add iterations scaled by the plan's K.
std::pair<int, int> emit_rotation(GraphBuilder& b, const RotationSpec& rot,
                                  int x, int y) {
    if (rot.plan)
        return expand_to_graph(*rot.plan, b, x, y);
    const double c = std::cos(rot.angle), s = std::sin(rot.angle);
    const int x_out = b.sub(b.cmul(x, c), b.cmul(y, s));
    const int y_out = b.add(b.cmul(x, s), b.cmul(y, c));
    return {x_out, y_out};
}

double rotation_scale(const RotationSpec& rot) {
    return rot.plan ? scale_factor(*rot.plan) : 1.0;
}

/// The shared Loeffler skeleton. Writing cA = cos(pi/8), sA = sin(pi/8),
/// cB/sB and cG/sG likewise for pi/16 and 3*pi/16, the wiring computes
/// (before scaling):
///
///   even: t0 = (x0+x7)+(x3+x4), t1 = (x1+x6)+(x2+x5)
///         X0 = t0+t1, X4 = t0-t1
///         (u, v) = R(alpha)(s2-s1, s0-s3)      -> u = 2*X6, v = 2*X2
///   odd:  (gx, gy) = R(gamma)(x3-x4, x0-x7)    -> gx = cG*d3+sG*d0, ...
///         (bx, by) = R(beta)(x5-x2, x6-x1)     -> negated-input rotation
///         X3 = gy + bx, X5 = gx - (-by)
///         X1 = A + B, X7 = B - A  with A = gx + (-by), B = gy + (-bx)
///
/// The two stage-5 negations feed X5/stage 6; they are exactly what the
/// merge and NOT rewrites remove. Both rotations of the odd half carry the
/// same scale factor, so it extracts per output. Correct wiring is asserted
/// by the exactness gate (reference build equals the DCT-II matrix), not by
/// inspection.
ScaledTransform build_skeleton(const RotationSpec& alpha,
                               const RotationSpec& beta,
                               const RotationSpec& gamma) {
    GraphBuilder b;
    std::array<int, 8> x{};
    for (int i = 0; i < 8; ++i)
        x[i] = b.input();

    // stage 1 butterflies
    const int s0 = b.add(x[0], x[7]);
    const int s1 = b.add(x[1], x[6]);
    const int s2 = b.add(x[2], x[5]);
    const int s3 = b.add(x[3], x[4]);
    const int d0 = b.sub(x[0], x[7]);
    const int d1n = b.sub(x[6], x[1]); // -(x1-x6)
    const int d2n = b.sub(x[5], x[2]); // -(x2-x5)
    const int d3 = b.sub(x[3], x[4]);

    // even half
    const int t0 = b.add(s0, s3);
    const int t1 = b.add(s1, s2);
    const int u = b.sub(s2, s1);
    const int v = b.sub(s0, s3);
    const int out0 = b.add(t0, t1);
    const int out4 = b.sub(t0, t1);
    const auto [out6, out2] = emit_rotation(b, alpha, u, v);

    // odd half
    const auto [gx, gy] = emit_rotation(b, gamma, d3, d0);
    const auto [bx, by] = emit_rotation(b, beta, d2n, d1n);
    const int out3 = b.add(gy, bx);
    const int neg_lower = b.neg(bx); // merged into an adder by the Fig-3 step
    const int neg_upper = b.neg(by); // becomes a NOT gate in the Fig-4 step
    const int out5 = b.sub(gx, neg_upper);
    const int sum_a = b.add(gx, neg_upper);
    const int sum_b = b.add(gy, neg_lower);
    const int out1 = b.add(sum_a, sum_b);
    const int out7 = b.sub(sum_b, sum_a);

    b.output(0, out0);
    b.output(1, out1);
    b.output(2, out2);
    b.output(3, out3);
    b.output(4, out4);
    b.output(5, out5);
    b.output(6, out6);
    b.output(7, out7);

    const double ka = rotation_scale(alpha);
    const double kb = rotation_scale(beta);
    const double kg = rotation_scale(gamma);
    if (kb != kg)
        throw std::logic_error(
            "dct8: beta and gamma scale factors must be equal to extract");

    ScaledTransform t;
    t.graph = b.finish();
    t.out_scale = {
        1.0 / (2.0 * kSqrt2),          // X0
        1.0 / (2.0 * kSqrt2 * kb),     // X1
        1.0 / (2.0 * ka),              // X2
        1.0 / (2.0 * kb),              // X3
        1.0 / (2.0 * kSqrt2),          // X4
        1.0 / (2.0 * kb),              // X5
        1.0 / (2.0 * ka),              // X6
        1.0 / (2.0 * kSqrt2 * kb),     // X7
    };
    return t;
}

} // namespace

ScaledTransform build(Dct8Variant v) {
    if (v == Dct8Variant::reference)
        return build_skeleton({kAlpha, std::nullopt}, {kBeta, std::nullopt},
                              {kGamma, std::nullopt});

    const VariantCPlans p = variant_c_plans();
    ScaledTransform raw = build_skeleton({kAlpha, p.alpha}, {kBeta, p.beta},
                                         {kGamma, p.gamma});
    if (v == Dct8Variant::variant_c_raw)
        return raw;

    ScaledTransform t{rewrite_merge_neg_into_adder(raw.graph).graph,
                      raw.out_scale};
    if (v == Dct8Variant::variant_c_i)
        return t;

    t.graph = rewrite_neg_to_not_with_carry(t.graph, {5});
    return t; // variant_c_ii
}

// ---------------------------------------------------------------------------
// Rewrites

MergeResult rewrite_merge_neg_into_adder(const FlowGraph& g) {
    std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());
    int merged = 0;

    // Iterate to a fixpoint: converting Add(x, neg y) to Sub(x, y) can make
    // another negation unmergeable (a Sub consumer), never mergeable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
            if (nodes[id].kind != NodeKind::neg)
                continue;
            bool mergeable = true;
            bool used = false;
            for (int ci = 0; ci < static_cast<int>(nodes.size()); ++ci) {
                const Node& c = nodes[ci];
                const bool uses_a = c.a == id;
                const bool uses_b =
                    (c.kind == NodeKind::add || c.kind == NodeKind::sub) &&
                    c.b == id;
                if (!uses_a && !uses_b)
                    continue;
                used = true;
                // needs a plain add using the negation in exactly one slot
                if (c.kind != NodeKind::add || (uses_a && uses_b)) {
                    mergeable = false;
                    break;
                }
            }
            if (!used || !mergeable)
                continue;
            const int y = nodes[id].a;
            for (Node& c : nodes) {
                if (c.kind != NodeKind::add || (c.a != id && c.b != id))
                    continue;
                const int other = c.a == id ? c.b : c.a;
                c.kind = NodeKind::sub;
                c.a = other;
                c.b = y;
            }
            // Drop the negation by turning it into a dead passthrough; the
            // rebuild below removes unreferenced nodes.
            nodes[id].kind = NodeKind::shr;
            nodes[id].k = 0;
            ++merged;
            changed = true;
        }
    }

    if (merged == 0)
        return {g, 0};

    // Rebuild, skipping nodes nothing refers to (the neutered negations).
    std::vector<bool> live(nodes.size(), false);
    for (const Node& n : nodes)
        if (n.kind == NodeKind::output)
            live[n.a] = true;
    for (int id = static_cast<int>(nodes.size()) - 1; id >= 0; --id) {
        if (!live[id])
            continue;
        const Node& n = nodes[id];
        if (n.a >= 0)
            live[n.a] = true;
        if ((n.kind == NodeKind::add || n.kind == NodeKind::sub) && n.b >= 0)
            live[n.b] = true;
    }

    GraphBuilder b;
    std::vector<int> remap(nodes.size(), -1);
    for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
        const Node& n = nodes[id];
        if (n.kind == NodeKind::output) {
            b.output(n.port, remap[n.a]);
            continue;
        }
        if (!live[id])
            continue;
        switch (n.kind) {
        case NodeKind::input: remap[id] = b.input(); break;
        case NodeKind::add:
            remap[id] = b.add(remap[n.a], remap[n.b], n.carry);
            break;
        case NodeKind::sub: remap[id] = b.sub(remap[n.a], remap[n.b]); break;
        case NodeKind::shr: remap[id] = b.shr(remap[n.a], n.k); break;
        case NodeKind::bnot: remap[id] = b.bnot(remap[n.a]); break;
        case NodeKind::neg: remap[id] = b.neg(remap[n.a]); break;
        case NodeKind::cmul: remap[id] = b.cmul(remap[n.a], n.c); break;
        case NodeKind::output: break;
        }
    }
    return {b.finish(), merged};
}

FlowGraph rewrite_neg_to_not_with_carry(const FlowGraph& g,
                                        const std::set<int>& allow_uncompensated) {
    std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());

    // Output ports reachable downstream of a node (to check the deficit).
    auto reachable_ports = [&nodes](int start) {
        std::set<int> ports;
        std::vector<bool> seen(nodes.size(), false);
        std::vector<int> work{start};
        seen[start] = true;
        while (!work.empty()) {
            const int cur = work.back();
            work.pop_back();
            if (nodes[cur].kind == NodeKind::output) {
                ports.insert(nodes[cur].port);
                continue;
            }
            for (int ci = 0; ci < static_cast<int>(nodes.size()); ++ci) {
                const Node& c = nodes[ci];
                const bool uses =
                    c.a == cur ||
                    ((c.kind == NodeKind::add || c.kind == NodeKind::sub) &&
                     c.b == cur);
                if (uses && !seen[ci]) {
                    seen[ci] = true;
                    work.push_back(ci);
                }
            }
        }
        return ports;
    };

    bool any = false;
    for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
        if (nodes[id].kind != NodeKind::neg)
            continue;
        any = true;

        std::set<int> deficit;
        std::vector<int> carry_adds;
        for (int ci = 0; ci < static_cast<int>(nodes.size()); ++ci) {
            Node& c = nodes[ci];
            const bool uses_a = c.a == id;
            const bool uses_b =
                (c.kind == NodeKind::add || c.kind == NodeKind::sub) &&
                c.b == id;
            if (!uses_a && !uses_b)
                continue;
            switch (c.kind) {
            case NodeKind::add:
                if (!c.carry && !(uses_a && uses_b)) {
                    carry_adds.push_back(ci);
                } else {
                    // carry port already taken (or the +1 is needed twice)
                    auto r = reachable_ports(ci);
                    deficit.insert(r.begin(), r.end());
                }
                break;
            case NodeKind::sub: {
                // a subtractor's carry implements its own negation
                auto r = reachable_ports(ci);
                deficit.insert(r.begin(), r.end());
                break;
            }
            case NodeKind::output:
                if (allow_uncompensated.count(c.port)) {
                    deficit.insert(c.port);
                    break;
                }
                [[fallthrough]];
            default:
                throw std::invalid_argument(
                    "rewrite_neg_to_not: negation feeds a non-adder node; "
                    "cannot place the carry");
            }
        }
        for (int port : deficit)
            if (!allow_uncompensated.count(port))
                throw std::invalid_argument(
                    "rewrite_neg_to_not: output " + std::to_string(port) +
                    " would lose an LSB but is not allowed to");

        nodes[id].kind = NodeKind::bnot;
        for (int ci : carry_adds)
            nodes[ci].carry = true;
    }

    if (!any)
        return g;

    GraphBuilder b;
    for (const Node& n : nodes) {
        switch (n.kind) {
        case NodeKind::input: b.input(); break;
        case NodeKind::add: b.add(n.a, n.b, n.carry); break;
        case NodeKind::sub: b.sub(n.a, n.b); break;
        case NodeKind::shr: b.shr(n.a, n.k); break;
        case NodeKind::bnot: b.bnot(n.a); break;
        case NodeKind::neg: b.neg(n.a); break;
        case NodeKind::cmul: b.cmul(n.a, n.c); break;
        case NodeKind::output: b.output(n.port, n.a); break;
        }
    }
    return b.finish();
}

// ---------------------------------------------------------------------------
// Transforms

std::array<double, 8> transform_1d_real(const ScaledTransform& t,
                                        const std::array<double, 8>& x) {
    const std::vector<double> out =
        eval_real(t.graph, std::vector<double>(x.begin(), x.end()));
    std::array<double, 8> r{};
    for (int i = 0; i < 8; ++i)
        r[i] = out[i];
    return r;
}

std::vector<FxpValue> transform_1d_fxp(const ScaledTransform& t,
                                       const std::vector<FxpValue>& x,
                                       const FormatAssignment& fmts) {
    return eval_fxp(t.graph, x, fmts);
}

Matrix transform_2d_real(const ScaledTransform& t, const Matrix& block) {
    if (block.rows != 8 || block.cols != 8)
        throw std::invalid_argument("transform_2d: block must be 8x8");
    Matrix rows(8, 8), out(8, 8);
    std::array<double, 8> v{};
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c)
            v[c] = block.at(r, c);
        const auto y = transform_1d_real(t, v);
        for (int c = 0; c < 8; ++c)
            rows.at(r, c) = y[c];
    }
    for (int c = 0; c < 8; ++c) {
        for (int r = 0; r < 8; ++r)
            v[r] = rows.at(r, c);
        const auto y = transform_1d_real(t, v);
        for (int r = 0; r < 8; ++r)
            out.at(r, c) = y[r];
    }
    return out;
}

Matrix scale_grid(const ScaledTransform& t) {
    Matrix s(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            s.at(i, j) = t.out_scale[i] * t.out_scale[j];
    return s;
}

Fxp2dResult transform_2d_fxp(const ScaledTransform& t,
                             const std::array<std::array<int64_t, 8>, 8>& block,
                             FxpFormat in_fmt, int internal_width,
                             int pass1_out_width) {
    const FormatAssignment pass1 =
        assign_formats(t.graph, in_fmt, internal_width, pass1_out_width);
    FxpFormat mid_fmt = pass1.output_format;
    const FormatAssignment pass2 =
        assign_formats(t.graph, mid_fmt,
                       std::max(internal_width, mid_fmt.width + 4), 0);

    std::array<std::array<int64_t, 8>, 8> rows{};
    std::vector<FxpValue> in(8);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c)
            in[c] = make_fxp(block[r][c], in_fmt);
        const auto y = eval_fxp(t.graph, in, pass1);
        for (int c = 0; c < 8; ++c)
            rows[r][c] = y[c].raw;
    }
    Fxp2dResult res;
    res.row_pass_out = mid_fmt;
    res.out_format = pass2.output_format;
    for (int c = 0; c < 8; ++c) {
        for (int r = 0; r < 8; ++r)
            in[r] = make_fxp(rows[r][c], mid_fmt);
        const auto y = eval_fxp(t.graph, in, pass2);
        for (int r = 0; r < 8; ++r)
            res.raw[r][c] = y[r].raw;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Accuracy

AccuracyReport accuracy_report(Dct8Variant v, int trials, uint64_t seed,
                               FxpFormat in_fmt, int internal_width) {
    if (trials < 1)
        throw std::invalid_argument("accuracy_report: trials must be >= 1");

    const ScaledTransform t = build(v);
    const Matrix exact = dct2_matrix_exact();
    Matrix scaled = implied_matrix(t.graph);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            scaled.at(i, j) *= t.out_scale[i];

    AccuracyReport rep;
    rep.matrix_max_abs = max_abs_diff(scaled, exact);
    rep.matrix_frobenius = frobenius_diff(scaled, exact);
    rep.trials = trials;
    rep.seed = seed;

    // The reference has constant multipliers and no fixed-point datapath, so
    // quantization statistics are measured for the CORDIC variants only.
    if (v == Dct8Variant::reference)
        return rep;

    const ScaledTransform ref = build(Dct8Variant::reference);
    const Matrix sgrid = scale_grid(t);
    const Matrix ref_grid = scale_grid(ref);

    std::mt19937_64 rng(seed);
    const int64_t lo = in_fmt.min_raw(), hi = in_fmt.max_raw();
    const uint64_t span = static_cast<uint64_t>(hi - lo + 1);
    double max_err = 0.0, sq = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        std::array<std::array<int64_t, 8>, 8> block{};
        Matrix real_block(8, 8);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) {
                block[r][c] = lo + static_cast<int64_t>(rng() % span);
                real_block.at(r, c) = static_cast<double>(block[r][c]);
            }
        const Fxp2dResult fx =
            transform_2d_fxp(t, block, in_fmt, internal_width);
        const Matrix ref_coeffs = transform_2d_real(ref, real_block);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) {
                const double truth =
                    ref_coeffs.at(r, c) * ref_grid.at(r, c);
                const double approx =
                    static_cast<double>(fx.raw[r][c]) * sgrid.at(r, c);
                const double e = std::abs(approx - truth);
                max_err = std::max(max_err, e);
                sq += e * e;
            }
    }
    rep.fxp_max_abs = max_err;
    rep.fxp_rms = std::sqrt(sq / (trials * 64.0));
    return rep;
}

CostReport bindct_c_reported() {
    CostReport r;
    r.additions = 30;
    r.shifts = 12;
    r.bit_inversions = 0;
    r.multiplications = 0;
    r.critical_path = {9, 0};
    return r;
}

} // namespace cdct
