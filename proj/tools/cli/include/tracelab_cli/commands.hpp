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

#pragma once

#include <optional>
#include <string>

#include "tracelab_cli/json_io.hpp"

namespace tracelab::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitSchema = 2,
    kExitDomain = 3,
    kExitViolated = 4,
    kExitInconclusive = 5,
};

/// Flag values that override the matching config keys.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<long> budget;
    std::optional<long> dim;
    std::optional<double> tol;
};

struct CommandResult {
    int exit_code = kExitOk;
    json report;
    /// Per-trial gaps for commands that produce them; empty otherwise.
    std::string csv;
};

/// Runs eval, certify, search, metrics or demo on a config object. The
/// report echoes the resolved config. Schema problems throw SchemaError;
/// domain problems propagate as tracelab::Error.
CommandResult run_command(const std::string& command, json config, const Overrides& overrides = {});

/// Same, but catches errors and turns them into an error report with exit
/// code 2 or 3.
CommandResult run_command_checked(const std::string& command, const json& config, const Overrides& overrides = {});

/// Serialized report: two-space indented JSON with a trailing newline.
std::string render(const json& report);

}  // namespace tracelab::cli
