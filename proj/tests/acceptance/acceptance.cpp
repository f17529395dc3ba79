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

// Acceptance driver: every criterion runs through the command layer of the
// CLI, prints one PASS/FAIL line, and the whole set is rerun at the end to
// check that the rendered reports are byte-identical.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "tracelab_cli/commands.hpp"
#include "tracelab_cli/json_io.hpp"

namespace {

using tracelab::cli::json;
using tracelab::cli::parse_real;
using tracelab::cli::render;
using tracelab::cli::run_command_checked;

struct Run {
    std::string command;
    json config;
    std::string rendered;
};

std::vector<Run> g_runs;

json run(const std::string& command, const json& config) {
    const tracelab::cli::CommandResult r = run_command_checked(command, config);
    g_runs.push_back({command, config, render(r.report)});
    return r.report;
}

double kInf() { return std::numeric_limits<double>::infinity(); }

double num(const json& v) { return parse_real(v, "report"); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("AC%-2d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

bool certify_ok(const json& r) { return r.at("exit_code") == 0 && r["result"]["verdict"] == "holds_within_tol"; }

void variational_saturation() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<json, long>> quads = {
        {{{"p", 0.25}, {"q", 0.25}, {"s", 2}}, 400},
        {{{"p", 0.5}, {"q", 0.25}, {"s", 4}}, 300},
        {{{"r0", 1}, {"r1", 3}, {"r2", 2}, {"r3", 6}}, 300},
    };
    bool pass = true;
    double worst = 0.0;
    long instances = 0;
    std::uint64_t seed = 100;
    for (int n : {2, 3, 4}) {
        for (const auto& [params, trials] : quads) {
            const json r = run("certify", {{"suite", "variational_saturation"},
                                           {"params", params},
                                           {"dim", n},
                                           {"trials", trials},
                                           {"seed", seed++}});
            pass = pass && certify_ok(r);
            worst = std::max(worst, -num(r["result"]["min_gap"]));
            instances += trials;
        }
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 60.0;
    report(1, pass, "variational saturation",
           fmt("%.0f instances per n, worst |gap| %.3g, %.1f s", static_cast<double>(instances) / 3.0, worst,
               elapsed));
}

void joint_convexity() {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    double worst = kInf();
    for (const json& params : {json{{"p", 0.25}, {"q", 0.25}, {"s", 2}}, json{{"p", 0.5}, {"q", 0.25}, {"s", 4}},
                               json{{"p", 0.3}, {"q", 0.2}, {"s", 2}}}) {
        const json r =
            run("certify", {{"suite", "joint_convexity"}, {"params", params}, {"dim", 3}, {"trials", 1000}, {"seed", 1}});
        pass = pass && certify_ok(r);
        worst = std::min(worst, num(r["result"]["min_gap"]));
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 120.0;
    report(2, pass, "joint convexity", fmt("min relative gap %.3g over 3x1000 trials, %.1f s", worst, elapsed));
}

bool witness_ok(const json& w, double floor) {
    const double margin = num(w["margin"]);
    return w["found"] == true && margin > floor && num(w["verified_margin"]) >= 0.5 * margin;
}

void threshold_optimality() {
    const json r = run("search", {{"claim", "triple_nonconvexity"},
                                  {"params", {{"p", 0.25}, {"q", 0.25}, {"s", 1.8}}},
                                  {"dims", {1, 2, 3}},
                                  {"budget", 100000},
                                  {"seed", 3}});
    const json& w = r["result"];
    report(3, witness_ok(w, 1e-6), "convexity fails below the exponent threshold",
           fmt("margin %.3g at n = %.0f after %.0f evaluations", num(w["margin"]), w["dim"].get<double>(),
               w["evaluations"].get<double>()));
}

void nonconcavity() {
    const json r = run("search", {{"claim", "nonconcavity"},
                                  {"params", {{"p", 0.3}, {"s", 3}}},
                                  {"dims", {2, 3, 4}},
                                  {"budget", 100000},
                                  {"seed", 4}});
    const json& w = r["result"];
    const json cfl = run("search", {{"claim", "cfl_nonconcavity"},
                                    {"params", {{"p", 1}, {"q2", 1}, {"r2", 1}}},
                                    {"budget", 100000},
                                    {"seed", 4}});
    const json& c = cfl["result"];
    const bool main_ok = witness_ok(w, 1e-6);
    const bool cfl_ok = witness_ok(c, 1e-6);
    report(4, main_ok && cfl_ok, "non-concavity witness",
           fmt("margin %.3g (verified %.3g); three-matrix gate margin %.3g", num(w["margin"]),
               num(w["verified_margin"]), num(c["margin"])) +
               (main_ok ? "" : " [main search failed]") + (cfl_ok ? "" : " [three-matrix gate failed]"));
}

void nonconvexity() {
    const json r = run("search", {{"claim", "nonconvexity"},
                                  {"params", {{"p", 0.6}, {"s", 1.8}}},
                                  {"dims", {2, 3, 4}},
                                  {"budget", 100000},
                                  {"seed", 5}});
    const json& w = r["result"];
    report(5, witness_ok(w, 1e-6), "non-convexity witness",
           fmt("margin %.3g (verified %.3g) at n = %.0f", num(w["margin"]), num(w["verified_margin"]),
               w["dim"].get<double>()));
}

void monotonicity() {
    bool pass = true;
    double worst = kInf(), exact = 0.0;
    for (const json& params : {json{{"p", 0.25}, {"q", 0.25}, {"s", 2}}, json{{"p", 0.2}, {"q", 0.2}, {"s", 2.5}}}) {
        const json r = run("certify", {{"suite", "monotonicity"},
                                       {"params", params},
                                       {"channel", "mixed_unitary"},
                                       {"dim", 3},
                                       {"trials", 1000},
                                       {"seed", 6}});
        pass = pass && certify_ok(r);
        worst = std::min(worst, num(r["result"]["min_gap"]));
        for (const char* family : {"identity", "unitary"}) {
            const json e = run("certify", {{"suite", "monotonicity"},
                                           {"params", params},
                                           {"channel", family},
                                           {"dim", 3},
                                           {"trials", 200},
                                           {"seed", 6}});
            exact = std::max(exact, num(e["result"]["max_rel_gap"]));
        }
    }
    pass = pass && exact < 1e-12;
    report(6, pass, "monotonicity under unital channels",
           fmt("min relative gap %.3g; identity/unitary max |gap| %.3g", worst, exact));
}

void quadratic_contraction() {
    bool pass = true;
    double worst = kInf();
    for (const json& params : {json{{"alpha", 0.5}, {"beta", 0.5}}, json{{"alpha", 0.4}, {"beta", 0.4}}}) {
        const json r = run("certify", {{"suite", "quadratic_contraction"},
                                       {"params", params},
                                       {"channel", "mixed_unitary"},
                                       {"dim", 3},
                                       {"trials", 1000},
                                       {"seed", 7}});
        pass = pass && certify_ok(r);
        worst = std::min(worst, num(r["result"]["min_gap"]));
    }
    report(7, pass, "quadratic contraction", fmt("min relative gap %.3g", worst));
}

void demonstrations() {
    bool pass = true;
    double worst = 0.0;
    for (double p : {2.0, 3.0}) {
        const json r = run("demo", {{"params", {{"alpha", -0.5}, {"beta", -0.5}, {"p", p}}}, {"dim", 2}, {"seed", 8}});
        const double err = num(r["result"]["partial_trace"]["error"]);
        worst = std::max(worst, err);
        pass = pass && err <= 1e-10;
    }
    const json w = run("search", {{"claim", "lambda_refutation"},
                                  {"params", {{"alpha", -0.5}, {"beta", -0.5}, {"p", 1.5}}},
                                  {"dim", 1},
                                  {"seed", 8}})["result"];
    const bool refuted = w["found"] == true && num(w["verified_margin"]) > 1e-7;
    report(8, pass && refuted, "partial trace scaling and block-swap refutation",
           fmt("scaling error %.3g; refutation margin %.3g", worst, num(w["margin"])) +
               (refuted ? "" : " [no witness]"));
}

void superoperators() {
    bool pass = true;
    double spectral = 0.0, hessian = 0.0, petz = kInf(), dop = kInf();
    for (const char* f : {"h", "power:0.5", "log", "xlogx"}) {
        const json r = run("metrics", {{"suite", "spectral_routes"}, {"function", f}, {"trials", 100}, {"seed", 9}});
        pass = pass && r.at("exit_code") == 0;
        spectral = std::max(spectral, -num(r["result"]["stats"]["min"]));
    }
    {
        const json r = run("metrics", {{"suite", "hessian"}, {"function", "xlogx"}, {"trials", 100}, {"seed", 9}});
        pass = pass && r.at("exit_code") == 0;
        hessian = -num(r["result"]["stats"]["min"]);
    }
    for (const char* h : {"power:0.5", "h"}) {
        const json r = run("metrics", {{"suite", "petz_monotonicity"},
                                       {"function", h},
                                       {"channel", "mixed_unitary"},
                                       {"trials", 100},
                                       {"seed", 9}});
        pass = pass && r.at("exit_code") == 0;
        petz = std::min(petz, num(r["result"]["stats"]["min"]));
    }
    {
        const json r = run("metrics", {{"suite", "double_operator"},
                                       {"measure", {{"c", 0}, {"atoms", {{0, 1}}}}},
                                       {"channel", "mixed_unitary"},
                                       {"trials", 100},
                                       {"seed", 9}});
        pass = pass && r.at("exit_code") == 0;
        dop = num(r["result"]["stats"]["min"]);
    }
    report(9, pass, "superoperator checks",
           fmt("route diff %.3g, hessian rel err %.3g, ", spectral, hessian) +
               fmt("Petz lambda_min %.3g, double-operator min gap %.3g", petz, dop));
}

void petz_form() {
    const json two = run("metrics", {{"suite", "petz_form_obstruction"}, {"params", {{"p", 2}}}})["result"];
    const json one = run("metrics", {{"suite", "petz_form_obstruction"}, {"params", {{"p", 1}}}})["result"];
    const double k1 = num(two["k1"]), k2 = num(two["k2"]), t = num(one["traceless_value"]);
    const bool pass = std::abs(k1 - 1.0) <= 1e-12 && std::abs(k2 - 1.25) <= 1e-12 && std::abs(t) <= 1e-12;
    report(10, pass, "norm-squared form obstruction", fmt("%.17g vs %.17g; p = 1 traceless value %.3g", k1, k2, t));
}

void determinism() {
    const std::vector<Run> first = g_runs;
    size_t mismatches = 0;
    for (const Run& r : first) {
        const std::string again = render(run_command_checked(r.command, r.config).report);
        if (again != r.rendered) {
            ++mismatches;
            std::fprintf(stderr, "report differs on rerun: %s %s\n", r.command.c_str(), r.config.dump().c_str());
        }
    }
    report(11, mismatches == 0 && !first.empty(), "byte-identical reruns",
           fmt("%.0f commands, %.0f mismatches", static_cast<double>(first.size()), static_cast<double>(mismatches)));
}

}  // namespace

int main() {
    variational_saturation();
    joint_convexity();
    threshold_optimality();
    nonconcavity();
    nonconvexity();
    monotonicity();
    quadratic_contraction();
    demonstrations();
    superoperators();
    petz_form();
    determinism();
    return g_failures == 0 ? 0 : 1;
}
