// SPDX-License-Identifier: Apache-2.0
//
// crcoex - downlink multi-beam cognitive radio coexistence simulator
// Copyright (C) 2026 crcoex contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// simulate: run a coexistence experiment sweep from a config file and emit
// one CSV row per (method, N, power-ratio) cell.

#include <cstdint>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "crcoex/experiment.hpp"
#include "crcoex/kernels.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"crcoex downlink coexistence simulator"};

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = int(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;
    std::string kernel_backend = "auto";

    app.add_option("--config", config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "output CSV path (overrides the config)");
    app.add_option("--seed", seed, "master seed (overrides the config)")
        ->each([&](const std::string &) { seed_set = true; });
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--kernels", kernel_backend, "kernel backend: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (!crcoex::kernels::select_backend(kernel_backend))
        {
            std::cerr << "error: kernel backend '" << kernel_backend
                      << "' is unavailable on this CPU\n";
            return 2;
        }

        crcoex::ExperimentConfig config = crcoex::parse_config_file(config_path);
        if (seed_set)
            config.master_seed = seed;
        if (!out_path.empty())
            config.csv_path = out_path;

        const crcoex::ResultTable table = crcoex::run_experiment(config, threads);
        const std::string summary = crcoex::emit_report(table, config.csv_path);

        std::cout << "kernels: " << crcoex::kernels::backend_name() << ", threads: " << threads
                  << "\n";
        std::cout << summary;
        std::cout << "wrote " << table.rows.size() << " rows to " << config.csv_path << "\n";
        return 0;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
