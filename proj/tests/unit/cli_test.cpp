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

#include <cmath>
#include <limits>

#include "support.hpp"
#include "tracelab_cli/commands.hpp"
#include "tracelab_cli/json_io.hpp"

namespace tracelab::cli {
namespace {

TEST(JsonIo, FormatReal) {
    EXPECT_EQ(format_real(0.5), "0.5");
    EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_real(std::nan("")), "nan");
    EXPECT_EQ(parse_real(json("inf"), "x"), std::numeric_limits<double>::infinity());
    EXPECT_EQ(parse_real(json(2.5), "x"), 2.5);
    EXPECT_THROW(parse_real(json("abc"), "x"), SchemaError);
    EXPECT_THROW(parse_real(json::array(), "x"), SchemaError);
}

TEST(JsonIo, MatrixRoundTripIsBitExact) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng = make_rng(seed, 50);
        const Index rows = 1 + static_cast<Index>(seed % 4), cols = 1 + static_cast<Index>((seed / 4) % 3);
        Matrix m = ginibre(rows, cols, rng);
        m(0, 0) *= std::pow(10.0, static_cast<double>(seed % 40) - 20.0);
        const json j = json::parse(matrix_to_json(m).dump());
        const Matrix back = matrix_from_json(j, "m");
        ASSERT_EQ(back.rows(), rows);
        ASSERT_EQ(back.cols(), cols);
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c) {
                EXPECT_EQ(back(r, c).real(), m(r, c).real());
                EXPECT_EQ(back(r, c).imag(), m(r, c).imag());
            }
    }
}

TEST(JsonIo, MatrixSchemaErrors) {
    EXPECT_THROW(matrix_from_json(json{{"dim", 2}, {"entries", json::array()}}, "m"), SchemaError);
    EXPECT_THROW(matrix_from_json(json{{"entries", json::array()}}, "m"), SchemaError);
    EXPECT_THROW(matrix_from_json(json(3), "m"), SchemaError);
}

TEST(Commands, EvalPsi) {
    const json config = {{"functional", "psi_pqs"},
                         {"params", {{"p", 0.25}, {"q", 0.25}, {"s", 2}}},
                         {"inputs",
                          {{"A", matrix_to_json(testing::diag({1, 2}))},
                           {"B", matrix_to_json(testing::diag({1, 4}))},
                           {"C", matrix_to_json(testing::diag({1, 9}))}}}};
    const CommandResult r = run_command_checked("eval", config);
    ASSERT_EQ(r.exit_code, kExitOk) << render(r.report);
    EXPECT_NEAR(parse_real(r.report["result"]["value"], "value"), 5.0 / 3.0, 1e-13);
}

TEST(Commands, ExitCodes) {
    EXPECT_EQ(run_command_checked("certify", json::object()).exit_code, kExitSchema);
    EXPECT_EQ(run_command_checked("bogus", json::object()).exit_code, kExitSchema);
    const json not_psd = {{"functional", "psi_pqs"},
                          {"inputs",
                           {{"A", matrix_to_json(testing::diag({1, 2}))},
                            {"B", matrix_to_json(testing::diag({1, -4}))},
                            {"C", matrix_to_json(testing::diag({1, 9}))}}}};
    const CommandResult domain = run_command_checked("eval", not_psd);
    EXPECT_EQ(domain.exit_code, kExitDomain);
    EXPECT_EQ(domain.report["error"], "NotPsd");

    Overrides small;
    small.trials = 20;
    small.dim = 2;
    const CommandResult holds =
        run_command_checked("certify", json{{"suite", "joint_convexity"}}, small);
    EXPECT_EQ(holds.exit_code, kExitOk) << render(holds.report);
    EXPECT_FALSE(holds.csv.empty());

    Overrides tiny;
    tiny.budget = 2000;
    const CommandResult exhausted = run_command_checked(
        "search", json{{"claim", "nonconcavity"}, {"params", {{"p", 0.3}, {"s", 3}}}, {"adjoint_pair", true}}, tiny);
    EXPECT_EQ(exhausted.exit_code, kExitInconclusive) << render(exhausted.report);
}

TEST(Commands, ViolationExitCode) {
    Overrides o;
    o.trials = 50;
    o.dim = 1;
    const CommandResult r = run_command_checked(
        "certify", json{{"suite", "lambda_convexity"}, {"params", {{"alpha", -0.5}, {"beta", -0.5}, {"p", 1.5}}}}, o);
    EXPECT_EQ(r.exit_code, kExitViolated) << render(r.report);
}

TEST(Commands, RerunsAreByteIdentical) {
    Overrides o;
    o.trials = 30;
    o.seed = 17;
    const json config = {{"suite", "monotonicity"}, {"channel", "pinching"}};
    const std::string a = render(run_command_checked("certify", config, o).report);
    const std::string b = render(run_command_checked("certify", config, o).report);
    EXPECT_EQ(a, b);
}

TEST(Commands, ConfigIsEchoedWithDefaults) {
    Overrides o;
    o.trials = 5;
    const CommandResult r = run_command_checked("certify", json{{"suite", "joint_convexity"}}, o);
    EXPECT_EQ(r.report["config"]["trials"], 5);
    EXPECT_TRUE(r.report["config"].contains("seed"));
    EXPECT_EQ(r.report["command"], "certify");
}

}  // namespace
}  // namespace tracelab::cli
