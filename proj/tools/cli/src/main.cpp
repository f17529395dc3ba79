// Copyright 2026 The TraceLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tracelab_cli/commands.hpp"

namespace {

using tracelab::cli::json;

// Writes through a temporary file and renames it, so a failed write never
// leaves a truncated report behind.
bool write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) return false;
        out << content;
        if (!out.flush()) return false;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    return !ec;
}

struct Flags {
    std::string config_path;
    std::string out_path;
    std::string csv_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<long> budget;
    std::optional<long> dim;
    std::optional<double> tol;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path, "JSON run config (default: built-in defaults)");
    sub->add_option("--seed", f.seed, "64-bit seed (default 0)");
    sub->add_option("--trials", f.trials, "random trials (certify 1000, metrics 100)");
    sub->add_option("--budget", f.budget, "objective evaluations for searches (default 100000)");
    sub->add_option("--dim", f.dim, "matrix dimension; for searches, the only dimension tried");
    sub->add_option("--tol", f.tol, "violation tolerance (default 1e-7 for certify and search)");
    sub->add_option("--out", f.out_path, "write the JSON report here instead of stdout");
    sub->add_option("--csv", f.csv_path, "write per-trial gaps as trial,gap,scale");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace functional convexity and monotonicity checks.\n"
                 "TRACELAB_THREADS caps the worker count."};
    app.require_subcommand(1);
    Flags flags;
    const char* commands[][2] = {
        {"eval", "evaluate a trace functional on matrices from the config"},
        {"certify", "randomized certification of a convexity or monotonicity suite"},
        {"search", "derivative-free counterexample search"},
        {"metrics", "superoperator and monotone-metric suites"},
        {"demo", "scripted block-matrix constructions"},
    };
    for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tracelab::cli::kExitSchema;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    json config = json::object();
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path, std::ios::binary);
        if (!in) {
            std::cerr << json({{"error", "schema"}, {"message", "cannot read " + flags.config_path}}).dump() << "\n";
            return tracelab::cli::kExitSchema;
        }
        try {
            config = json::parse(in);
        } catch (const json::exception& e) {
            std::cerr << json({{"error", "schema"}, {"message", e.what()}}).dump() << "\n";
            return tracelab::cli::kExitSchema;
        }
    }
    const tracelab::cli::Overrides overrides{flags.seed, flags.trials, flags.budget, flags.dim, flags.tol};
    const tracelab::cli::CommandResult result = tracelab::cli::run_command_checked(command, config, overrides);
    const std::string text = tracelab::cli::render(result.report);
    if (result.exit_code == tracelab::cli::kExitSchema || result.exit_code == tracelab::cli::kExitDomain) {
        std::cerr << text;
        return result.exit_code;
    }
    if (!flags.csv_path.empty() && !result.csv.empty() && !write_file(flags.csv_path, result.csv)) {
        std::cerr << json({{"error", "io"}, {"message", "cannot write " + flags.csv_path}}).dump() << "\n";
        return tracelab::cli::kExitSchema;
    }
    if (flags.out_path.empty()) {
        std::cout << text;
    } else if (!write_file(flags.out_path, text)) {
        std::cerr << json({{"error", "io"}, {"message", "cannot write " + flags.out_path}}).dump() << "\n";
        return tracelab::cli::kExitSchema;
    }
    return result.exit_code;
}
