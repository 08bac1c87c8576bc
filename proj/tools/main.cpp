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

#include <iostream>

#include "CLI11.hpp"

#include "cdct/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"multiplierless 8-point DCT approximation toolkit"};
    app.require_subcommand(1);

    cdct::RunConfig cfg;
    bool all = false;
    bool use_all = false;
    double target = 0.0;
    int max_steps = 0;
    std::vector<int> indices;
    std::string image_path, out_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", cfg.format, "output format: text, json, csv");
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--trials", cfg.trials, "number of random trials")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--in-width", cfg.in_width, "input sample width (bits)");
        cmd->add_option("--out-width", cfg.out_width, "output sample width (bits)");
    };

    CLI::App* analyze =
        app.add_subcommand("analyze", "operation counts and critical path");
    analyze->add_option("--variant", cfg.variant, "reference, I or II");
    analyze->add_flag("--all", all, "variants I and II plus binDCT-C");
    analyze->add_option("--format", cfg.format, "output format");
    analyze->add_option("--dump-graph", cfg.dump_graph,
                        "write the variant's flow graph as JSON");

    CLI::App* accuracy =
        app.add_subcommand("accuracy", "approximation and fixed-point error");
    accuracy->add_option("--variant", cfg.variant, "reference, I or II");
    accuracy->add_option("--dump-graph", cfg.dump_graph,
                         "write the variant's flow graph as JSON");
    add_common(accuracy);

    CLI::App* search =
        app.add_subcommand("search-atr", "microrotation search for an angle");
    search->add_option("--target", target, "target angle in radians")
        ->required();
    search->add_option("--indices", indices, "candidate shift indices")
        ->delimiter(',')
        ->required();
    search->add_flag("--use-all", use_all, "use every given index");
    search->add_option("--max-steps", max_steps, "maximum microrotations");
    search->add_option("--format", cfg.format, "output format");

    CLI::App* transform =
        app.add_subcommand("transform", "8x8 block transform of a PGM image");
    transform->add_option("image", image_path, "input PGM (P5)")->required();
    transform->add_option("output", out_path, "coefficient file to write")
        ->required();
    transform->add_option("--variant", cfg.variant, "reference, I or II");
    transform->add_option("--mode", cfg.mode, "real or fxp");
    add_common(transform);

    CLI::App* roundtrip = app.add_subcommand(
        "roundtrip", "forward, quantize, dequantize, inverse; reports PSNR");
    roundtrip->add_option("image", image_path, "input PGM (P5)")->required();
    roundtrip->add_option("--qtable", cfg.qtable_path,
                          "8x8 quantization table file");
    roundtrip->add_option("--qvalue", cfg.qtable_value,
                          "uniform quantization step when no table is given");
    roundtrip->add_option("--variant", cfg.variant, "reference, I or II");
    roundtrip->add_option("--mode", cfg.mode, "real or fxp");
    add_common(roundtrip);

    CLI11_PARSE(app, argc, argv);

    // transform defaults to a machine-readable format
    if (transform->parsed() && cfg.format == "text" &&
        transform->get_option("--format")->count() == 0)
        cfg.format = "json";

    try {
        if (analyze->parsed())
            cdct::cmd_analyze(cfg, all, std::cout);
        else if (accuracy->parsed())
            cdct::cmd_accuracy(cfg, std::cout);
        else if (search->parsed())
            cdct::cmd_search_atr(cfg, target, indices, use_all, max_steps,
                                 std::cout);
        else if (transform->parsed())
            cdct::cmd_transform(cfg, image_path, out_path, std::cout);
        else if (roundtrip->parsed())
            cdct::cmd_roundtrip(cfg, image_path, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
