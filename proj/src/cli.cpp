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

#include "cdct/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "cdct/cordic.hpp"
#include "cdct/pgm.hpp"
#include "cdct/quant.hpp"

namespace cdct {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void check_format_name(const std::string& f) {
    if (f != "text" && f != "json" && f != "csv")
        throw std::invalid_argument("unknown output format '" + f +
                                    "' (expected text, json or csv)");
}

FxpFormat input_format(const RunConfig& cfg) {
    FxpFormat f;
    f.width = cfg.in_width;
    f.frac = 0;
    f.overflow = Overflow::wrap;
    check_format(f);
    return f;
}

void dump_graph_if_requested(const RunConfig& cfg, const FlowGraph& g) {
    if (cfg.dump_graph.empty())
        return;
    std::ofstream out(cfg.dump_graph);
    if (!out)
        throw std::runtime_error("cannot write " + cfg.dump_graph);
    out << graph_to_json(g);
}

json cost_to_json(const CostReport& c) {
    json j;
    j["additions"] = c.additions;
    j["shifts"] = c.shifts;
    j["bit_inversions"] = c.bit_inversions;
    j["critical_path"] = c.critical_path.to_string();
    if (c.multiplications > 0)
        j["multiplications"] = c.multiplications;
    return j;
}

QuantTable config_qtable(const RunConfig& cfg) {
    return cfg.qtable_path.empty() ? uniform_qtable(cfg.qtable_value)
                                   : load_qtable(cfg.qtable_path);
}

struct BlockGrid {
    int bw = 0, bh = 0; // blocks per row / column
    const PgmImage* img = nullptr;

    std::array<std::array<int64_t, 8>, 8> block(int bx, int by) const {
        std::array<std::array<int64_t, 8>, 8> b{};
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c)
                b[r][c] = static_cast<int64_t>(
                              img->pixels[size_t(by * 8 + r) * img->width +
                                          size_t(bx * 8 + c)]) -
                          128; // center 0..255 into the signed input range
        return b;
    }
};

BlockGrid blocks_of(const PgmImage& img) {
    if (img.width % 8 != 0 || img.height % 8 != 0)
        throw std::invalid_argument(
            "image dimensions must be multiples of 8, got " +
            std::to_string(img.width) + "x" + std::to_string(img.height));
    return BlockGrid{img.width / 8, img.height / 8, &img};
}

} // namespace

Dct8Variant parse_variant(const std::string& name) {
    if (name == "reference")
        return Dct8Variant::reference;
    if (name == "raw")
        return Dct8Variant::variant_c_raw;
    if (name == "I" || name == "i" || name == "1")
        return Dct8Variant::variant_c_i;
    if (name == "II" || name == "ii" || name == "2")
        return Dct8Variant::variant_c_ii;
    throw std::invalid_argument("unknown variant '" + name +
                                "' (expected reference, I or II)");
}

// ---------------------------------------------------------------------------
// analyze

void cmd_analyze(const RunConfig& cfg, bool all, std::ostream& out) {
    check_format_name(cfg.format);

    struct Row {
        std::string name;
        CostReport cost;
        std::string note;
    };
    std::vector<Row> rows;
    if (all) {
        rows.push_back({"I", cost_report(build(Dct8Variant::variant_c_i).graph), ""});
        rows.push_back({"II", cost_report(build(Dct8Variant::variant_c_ii).graph), ""});
        rows.push_back({"binDCT-C", bindct_c_reported(),
                        "literature value, not recomputed"});
    } else {
        const Dct8Variant v = parse_variant(cfg.variant);
        const ScaledTransform t = build(v);
        dump_graph_if_requested(cfg, t.graph);
        rows.push_back({variant_name(v), cost_report(t.graph), ""});
    }

    if (cfg.format == "json") {
        json doc = json::array();
        for (const Row& r : rows) {
            json j = cost_to_json(r.cost);
            j["variant"] = r.name;
            if (!r.note.empty())
                j["note"] = r.note;
            doc.push_back(j);
        }
        out << (all ? doc : doc[0]).dump(2) << "\n";
        return;
    }
    if (cfg.format == "csv") {
        out << "variant,additions,shifts,bit_inversions,critical_path\n";
        for (const Row& r : rows)
            out << r.name << "," << r.cost.additions << "," << r.cost.shifts
                << "," << r.cost.bit_inversions << ","
                << r.cost.critical_path.to_string() << "\n";
        return;
    }
    out << "variant     additions  shifts  bit_inversions  critical_path\n";
    for (const Row& r : rows) {
        std::ostringstream line;
        line << std::left << std::setw(12) << r.name << std::setw(11)
             << r.cost.additions << std::setw(8) << r.cost.shifts
             << std::setw(16) << r.cost.bit_inversions
             << r.cost.critical_path.to_string();
        if (r.cost.multiplications > 0)
            line << "  (+" << r.cost.multiplications << " constant mults)";
        if (!r.note.empty())
            line << "  (" << r.note << ")";
        out << line.str() << "\n";
    }
}

// ---------------------------------------------------------------------------
// accuracy

void cmd_accuracy(const RunConfig& cfg, std::ostream& out) {
    check_format_name(cfg.format);
    const Dct8Variant v = parse_variant(cfg.variant);
    const ScaledTransform t = build(v);
    dump_graph_if_requested(cfg, t.graph);
    const CostReport cost = cost_report(t.graph);
    const AccuracyReport rep = accuracy_report(
        v, cfg.trials, cfg.seed, input_format(cfg), cfg.internal_width);

    if (cfg.format == "json") {
        json acc;
        acc["matrix_max_abs_error"] = rep.matrix_max_abs;
        acc["matrix_frobenius_error"] = rep.matrix_frobenius;
        acc["fxp_max_abs_error"] = rep.fxp_max_abs;
        acc["fxp_rms_error"] = rep.fxp_rms;
        acc["trials"] = rep.trials;
        acc["seed"] = rep.seed;
        json doc;
        doc["variant"] = variant_name(v);
        doc["cost"] = cost_to_json(cost);
        doc["accuracy"] = acc;
        doc["scales"] = t.out_scale;
        out << doc.dump(2) << "\n";
        return;
    }
    if (cfg.format == "csv") {
        out << "key,value\n";
        out << "variant," << variant_name(v) << "\n";
        out << "matrix_max_abs_error," << fmt_double(rep.matrix_max_abs) << "\n";
        out << "matrix_frobenius_error," << fmt_double(rep.matrix_frobenius)
            << "\n";
        out << "fxp_max_abs_error," << fmt_double(rep.fxp_max_abs) << "\n";
        out << "fxp_rms_error," << fmt_double(rep.fxp_rms) << "\n";
        out << "trials," << rep.trials << "\n";
        out << "seed," << rep.seed << "\n";
        for (int i = 0; i < 8; ++i)
            out << "scale_" << i << "," << fmt_double(t.out_scale[i]) << "\n";
        return;
    }
    out << "variant " << variant_name(v) << "\n";
    out << "matrix_max_abs_error " << fmt_double(rep.matrix_max_abs) << "\n";
    out << "matrix_frobenius_error " << fmt_double(rep.matrix_frobenius)
        << "\n";
    if (v != Dct8Variant::reference) {
        out << "fxp_max_abs_error " << fmt_double(rep.fxp_max_abs) << " ("
            << rep.trials << " blocks, seed " << rep.seed << ")\n";
        out << "fxp_rms_error " << fmt_double(rep.fxp_rms) << "\n";
    }
    out << "scales";
    for (double s : t.out_scale)
        out << " " << fmt_double(s);
    out << "\n";
    out << "cost " << cost.additions << " additions, " << cost.shifts
        << " shifts, " << cost.bit_inversions << " bit inversions, "
        << cost.critical_path.to_string() << "\n";
}

// ---------------------------------------------------------------------------
// search-atr

void cmd_search_atr(const RunConfig& cfg, double target,
                    const std::vector<int>& indices, bool use_all,
                    int max_steps, std::ostream& out) {
    check_format_name(cfg.format);
    if (indices.empty())
        throw std::invalid_argument("search-atr requires --indices");
    if (max_steps <= 0)
        max_steps = static_cast<int>(indices.size());
    const RotationPlan plan = search_atr(target, indices, max_steps, use_all);
    const double achieved = achieved_angle(plan);
    const double err = std::abs(achieved - target);
    const double k = scale_factor(plan);

    if (cfg.format == "json") {
        json doc;
        doc["target"] = target;
        doc["achieved"] = achieved;
        doc["error"] = err;
        doc["scale_k"] = k;
        json steps = json::array();
        for (const Microrotation& s : plan.steps)
            steps.push_back({{"i", s.shift}, {"sigma", s.sign}});
        doc["steps"] = steps;
        out << doc.dump(2) << "\n";
        return;
    }
    if (cfg.format == "csv") {
        out << "i,sigma\n";
        for (const Microrotation& s : plan.steps)
            out << s.shift << "," << s.sign << "\n";
        out << "target," << fmt_double(target) << "\n";
        out << "achieved," << fmt_double(achieved) << "\n";
        out << "error," << fmt_double(err) << "\n";
        out << "scale_k," << fmt_double(k) << "\n";
        return;
    }
    out << "target " << fmt_double(target) << "\n";
    out << "steps";
    for (const Microrotation& s : plan.steps)
        out << " (i=" << s.shift << ", sigma=" << (s.sign > 0 ? "+1" : "-1")
            << ")";
    out << "\n";
    out << "achieved " << fmt_double(achieved) << "\n";
    out << "error " << fmt_double(err) << "\n";
    out << "scale_k " << fmt_double(k) << "\n";
}

// ---------------------------------------------------------------------------
// transform

void cmd_transform(const RunConfig& cfg, const std::string& image_path,
                   const std::string& out_path, std::ostream& out) {
    if (cfg.format != "json" && cfg.format != "csv")
        throw std::invalid_argument(
            "transform writes a coefficient file; use --format json or csv");
    if (cfg.mode != "real" && cfg.mode != "fxp")
        throw std::invalid_argument("unknown mode '" + cfg.mode + "'");
    const Dct8Variant v = parse_variant(cfg.variant);
    if (cfg.mode == "fxp" && v == Dct8Variant::reference)
        throw std::invalid_argument(
            "the reference transform has no fixed-point datapath");

    const ScaledTransform t = build(v);
    const PgmImage img = load_pgm(image_path);
    const BlockGrid grid = blocks_of(img);
    const Matrix sgrid = scale_grid(t);
    const FxpFormat in_fmt = input_format(cfg);

    std::ofstream file(out_path);
    if (!file)
        throw std::runtime_error("cannot write " + out_path);

    auto block_coeffs = [&](int bx, int by) {
        Matrix m(8, 8);
        const auto blk = grid.block(bx, by);
        if (cfg.mode == "real") {
            Matrix rb(8, 8);
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    rb.at(r, c) = static_cast<double>(blk[r][c]);
            m = transform_2d_real(t, rb);
        } else {
            const Fxp2dResult fx = transform_2d_fxp(
                t, blk, in_fmt, cfg.internal_width, cfg.out_width);
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    m.at(r, c) = static_cast<double>(fx.raw[r][c]);
        }
        return m;
    };

    if (cfg.format == "json") {
        json doc;
        doc["width"] = img.width;
        doc["height"] = img.height;
        doc["variant"] = variant_name(v);
        doc["mode"] = cfg.mode;
        json sg = json::array();
        for (int i = 0; i < 8; ++i) {
            json row = json::array();
            for (int j = 0; j < 8; ++j)
                row.push_back(sgrid.at(i, j));
            sg.push_back(row);
        }
        doc["scale_grid"] = sg;
        json blocks = json::array();
        for (int by = 0; by < grid.bh; ++by)
            for (int bx = 0; bx < grid.bw; ++bx) {
                const Matrix m = block_coeffs(bx, by);
                json rows = json::array();
                for (int r = 0; r < 8; ++r) {
                    json row = json::array();
                    for (int c = 0; c < 8; ++c) {
                        if (cfg.mode == "fxp")
                            row.push_back(static_cast<int64_t>(m.at(r, c)));
                        else
                            row.push_back(m.at(r, c));
                    }
                    rows.push_back(row);
                }
                blocks.push_back({{"x", bx}, {"y", by}, {"coeffs", rows}});
            }
        doc["blocks"] = blocks;
        file << doc.dump(2) << "\n";
    } else {
        file << "width," << img.width << "\n";
        file << "height," << img.height << "\n";
        file << "variant," << variant_name(v) << "\n";
        file << "mode," << cfg.mode << "\n";
        file << "scale_grid\n";
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j)
                file << (j ? "," : "") << fmt_double(sgrid.at(i, j));
            file << "\n";
        }
        for (int by = 0; by < grid.bh; ++by)
            for (int bx = 0; bx < grid.bw; ++bx) {
                const Matrix m = block_coeffs(bx, by);
                file << "block," << bx << "," << by << "\n";
                for (int r = 0; r < 8; ++r) {
                    for (int c = 0; c < 8; ++c)
                        file << (c ? "," : "") << fmt_double(m.at(r, c));
                    file << "\n";
                }
            }
    }
    out << "wrote " << grid.bw * grid.bh << " blocks to " << out_path << "\n";
}

// ---------------------------------------------------------------------------
// roundtrip

void cmd_roundtrip(const RunConfig& cfg, const std::string& image_path,
                   std::ostream& out) {
    check_format_name(cfg.format);
    if (cfg.mode != "real" && cfg.mode != "fxp")
        throw std::invalid_argument("unknown mode '" + cfg.mode + "'");
    const Dct8Variant v = parse_variant(cfg.variant);
    if (cfg.mode == "fxp" && v == Dct8Variant::reference)
        throw std::invalid_argument(
            "the reference transform has no fixed-point datapath");

    const ScaledTransform t = build(v);
    const PgmImage img = load_pgm(image_path);
    const BlockGrid grid = blocks_of(img);
    const QuantTable q = config_qtable(cfg);
    const FoldedQuantTable folded = fold_scales(q, t.out_scale);
    const Matrix dct = dct2_matrix_exact();
    const Matrix dct_t = transpose(dct);
    const FxpFormat in_fmt = input_format(cfg);

    double sq_err = 0.0;
    for (int by = 0; by < grid.bh; ++by)
        for (int bx = 0; bx < grid.bw; ++bx) {
            const auto blk = grid.block(bx, by);
            Matrix coeffs(8, 8);
            if (cfg.mode == "real") {
                Matrix rb(8, 8);
                for (int r = 0; r < 8; ++r)
                    for (int c = 0; c < 8; ++c)
                        rb.at(r, c) = static_cast<double>(blk[r][c]);
                coeffs = transform_2d_real(t, rb);
            } else {
                const Fxp2dResult fx = transform_2d_fxp(
                    t, blk, in_fmt, cfg.internal_width, cfg.out_width);
                for (int r = 0; r < 8; ++r)
                    for (int c = 0; c < 8; ++c)
                        coeffs.at(r, c) = static_cast<double>(fx.raw[r][c]);
            }
            // quantize unscaled outputs with the folded table; dequantize
            // with the source table to recover true-coefficient estimates
            const LevelGrid levels = quantize(coeffs, folded.q_folded);
            const Matrix y = dequantize(levels, q.q);
            const Matrix rec = matmul(matmul(dct_t, y), dct);
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) {
                    double p = rec.at(r, c) + 128.0;
                    p = p < 0.0 ? 0.0 : (p > 255.0 ? 255.0 : p);
                    const double orig = static_cast<double>(
                        img.pixels[size_t(by * 8 + r) * img.width +
                                   size_t(bx * 8 + c)]);
                    const double d = p - orig;
                    sq_err += d * d;
                }
        }
    const double mse =
        sq_err / (static_cast<double>(img.width) * img.height);
    const double psnr =
        mse == 0.0 ? std::numeric_limits<double>::infinity()
                   : 10.0 * std::log10(255.0 * 255.0 / mse);
    const std::string psnr_str =
        std::isinf(psnr) ? "inf" : fmt_double(psnr);

    if (cfg.format == "json") {
        json doc;
        doc["variant"] = variant_name(v);
        doc["mode"] = cfg.mode;
        doc["blocks"] = grid.bw * grid.bh;
        doc["mse"] = mse;
        if (std::isinf(psnr))
            doc["psnr_db"] = "inf";
        else
            doc["psnr_db"] = psnr;
        doc["qtable"] = cfg.qtable_path.empty()
                            ? "uniform(" + fmt_double(cfg.qtable_value) + ")"
                            : cfg.qtable_path;
        out << doc.dump(2) << "\n";
        return;
    }
    if (cfg.format == "csv") {
        out << "key,value\n";
        out << "variant," << variant_name(v) << "\n";
        out << "mode," << cfg.mode << "\n";
        out << "blocks," << grid.bw * grid.bh << "\n";
        out << "mse," << fmt_double(mse) << "\n";
        out << "psnr_db," << psnr_str << "\n";
        return;
    }
    out << "variant " << variant_name(v) << " (" << cfg.mode << ")\n";
    out << "blocks " << grid.bw * grid.bh << "\n";
    out << "mse " << fmt_double(mse) << "\n";
    out << "psnr_db " << psnr_str << "\n";
}

} // namespace cdct
