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

#include "tracelab_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "tracelab/suites.hpp"

namespace tracelab::cli {

namespace {

// Typed access to a config object. Missing keys with a default are written
// back, so the echoed config shows every value the run used.
class Config {
public:
    Config(json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw SchemaError(where_ + " must be an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    double real(const std::string& key) const {
        if (!has(key)) throw SchemaError(where_ + ": missing '" + key + "'");
        return parse_real(j_.at(key), where_ + "." + key);
    }
    double real(const std::string& key, double fallback) {
        if (!has(key)) j_[key] = real_json(fallback);
        return real(key);
    }

    long integer(const std::string& key, long fallback) {
        if (!has(key)) j_[key] = fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw SchemaError(where_ + "." + key + " must be an integer");
        return static_cast<long>(v.get<long long>());
    }

    std::uint64_t seed(std::uint64_t fallback) {
        if (!has("seed")) j_["seed"] = fallback;
        const json& v = j_.at("seed");
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
        throw SchemaError(where_ + ".seed must be a non-negative integer");
    }

    bool flag(const std::string& key, bool fallback) {
        if (!has(key)) j_[key] = fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean()) throw SchemaError(where_ + "." + key + " must be a boolean");
        return v.get<bool>();
    }

    std::string text(const std::string& key) const {
        if (!has(key)) throw SchemaError(where_ + ": missing '" + key + "'");
        const json& v = j_.at(key);
        if (!v.is_string()) throw SchemaError(where_ + "." + key + " must be a string");
        return v.get<std::string>();
    }
    std::string text(const std::string& key, const std::string& fallback) {
        if (!has(key)) j_[key] = fallback;
        return text(key);
    }

    Config child(const std::string& key) {
        if (!has(key)) j_[key] = json::object();
        return Config(j_.at(key), where_ + "." + key);
    }

    Matrix matrix(const std::string& key) const {
        if (!has(key)) throw SchemaError(where_ + ": missing matrix '" + key + "'");
        return matrix_from_json(j_.at(key), where_ + "." + key);
    }
    std::optional<Matrix> optional_matrix(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return matrix(key);
    }

    json& raw() { return j_; }

private:
    json& j_;
    std::string where_;
};

void apply_overrides(json& config, const Overrides& o) {
    if (o.seed) config["seed"] = *o.seed;
    if (o.trials) config["trials"] = *o.trials;
    if (o.budget) config["budget"] = *o.budget;
    if (o.dim) {
        config["dim"] = *o.dim;
        config.erase("dims");
    }
    if (o.tol) config["tol"] = *o.tol;
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::HoldsWithinTol: return kExitOk;
        case Verdict::Violated: return kExitViolated;
        case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

ChannelFamily channel(Config& c) {
    const std::string name = c.text("channel", "mixed_unitary");
    try {
        return parse_channel_family(name);
    } catch (const Error& e) {
        throw SchemaError(e.what());
    }
}

ScalarFunction scalar_fn(Config& c, const std::string& fallback) {
    const std::string id = c.text("function", fallback);
    try {
        return scalar_function(id);
    } catch (const Error& e) {
        throw SchemaError(e.what());
    }
}

Index dimension(Config& c, long fallback) {
    const long n = c.integer("dim", fallback);
    if (n < 1 || n > 8) throw SchemaError("dim must be in [1, 8]");
    return static_cast<Index>(n);
}

long trial_count(Config& c, long fallback) {
    const long t = c.integer("trials", fallback);
    if (t < 1) throw SchemaError("trials must be at least 1");
    return t;
}

std::vector<Index> dimension_list(Config& c, std::vector<Index> fallback) {
    if (c.has("dim")) return {dimension(c, 0)};
    if (!c.has("dims")) {
        c.raw()["dims"] = fallback;
        return fallback;
    }
    const json& v = c.raw().at("dims");
    if (!v.is_array() || v.empty()) throw SchemaError("dims must be a non-empty array");
    std::vector<Index> out;
    for (const json& d : v) {
        if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 8) {
            throw SchemaError("dims entries must be integers in [1, 8]");
        }
        out.push_back(static_cast<Index>(d.get<long long>()));
    }
    return out;
}

TripleParams triple_params(Config& p, double dp, double dq, double ds) {
    TripleParams t;
    t.p = p.real("p", dp);
    t.q = p.real("q", dq);
    t.s = p.real("s", ds);
    return t;
}

LambdaParams lambda_params(Config& p, double dp) {
    return {p.real("alpha", -0.5), p.real("beta", -0.5), p.real("p", dp)};
}

json stats_json(const CertReport& r) {
    double lo = kInfinity, hi = -kInfinity;
    CompensatedSum sum;
    for (size_t i = 0; i < r.gaps.size(); ++i) {
        const double rel = r.gaps[i] / r.scales[i];
        lo = std::min(lo, rel);
        hi = std::max(hi, rel);
        sum.add(rel);
    }
    return {{"min", real_json(lo)},
            {"max", real_json(hi)},
            {"mean", real_json(sum.value() / static_cast<double>(r.gaps.size()))}};
}

CommandResult from_report(const CertReport& r) {
    return {exit_for(r.verdict), report_json(r), gaps_csv(r)};
}

// ---------------------------------------------------------------------------

CommandResult cmd_eval(Config& c) {
    const std::string name = c.text("functional");
    Config inputs = c.child("inputs");
    Config p = c.child("params");
    auto psd = [&](const std::string& key) { return PsdMatrix(inputs.matrix(key)); };
    double value = 0.0;
    if (name == "psi_pqs") {
        TripleParams t = triple_params(p, 0.25, 0.25, 2.0);
        if (auto k = inputs.optional_matrix("K1")) t.k1 = *k;
        if (auto k = inputs.optional_matrix("K2")) t.k2 = *k;
        value = psi_pqs(inputs.matrix("A"), psd("B"), psd("C"), t);
    } else if (name == "lambda_abp") {
        value = lambda_abp(psd("P"), inputs.matrix("X"), lambda_params(p, 2.0));
    } else if (name == "psi_ps") {
        value = psi_ps(psd("A"), inputs.matrix("K1"), inputs.matrix("K2"), p.real("p"), p.real("s"));
    } else if (name == "phi_cfl") {
        value = phi_cfl(psd("A"), psd("B"), psd("C"), p.real("p"), p.real("q2"), p.real("r2"));
    } else if (name == "two_var") {
        value = two_var(psd("A"), psd("B"), p.real("p"), p.real("q"), p.real("s"));
    } else if (name == "abs_power_trace") {
        value = abs_power_trace(inputs.matrix("X"), p.real("s"));
    } else if (name == "schatten_norm") {
        value = schatten_norm(inputs.matrix("X"), p.real("p"));
    } else {
        throw SchemaError("unknown functional '" + name + "'");
    }
    return {kExitOk, {{"functional", name}, {"value", format_real(value)}}, {}};
}

CommandResult cmd_certify(Config& c) {
    const std::string suite = c.text("suite");
    Config p = c.child("params");
    const std::uint64_t seed = c.seed(0);
    if (suite == "joint_convexity") {
        TripleParams t = triple_params(p, 0.25, 0.25, 2.0);
        Config inputs = c.child("inputs");
        if (auto k = inputs.optional_matrix("K1")) t.k1 = *k;
        if (auto k = inputs.optional_matrix("K2")) t.k2 = *k;
        ConvexityOptions o;
        o.tol = c.real("tol", kCertTol);
        o.escalation_budget = c.integer("budget", 100000);
        return from_report(certify_joint_convexity(t, dimension(c, 3), trial_count(c, 1000), seed, o));
    }
    if (suite == "lambda_convexity") {
        const LambdaParams l = lambda_params(p, 2.0);
        return from_report(
            certify_lambda_convexity(l, dimension(c, 3), trial_count(c, 1000), seed, c.real("tol", kCertTol)));
    }
    if (suite == "cfl_convexity") {
        const double a = p.real("p", 1.0), q2 = p.real("q2", -0.5), r2 = p.real("r2", -0.5);
        return from_report(
            certify_cfl_convexity(a, q2, r2, dimension(c, 3), trial_count(c, 1000), seed, c.real("tol", kCertTol)));
    }
    if (suite == "monotonicity") {
        const TripleParams t = triple_params(p, 0.25, 0.25, 2.0);
        const ChannelFamily family = channel(c);
        return from_report(
            monotonicity_test(t, family, dimension(c, 3), trial_count(c, 1000), seed, c.real("tol", kCertTol)));
    }
    if (suite == "lambda_monotonicity") {
        const LambdaParams l = lambda_params(p, 2.0);
        const ChannelFamily family = channel(c);
        return from_report(lambda_monotonicity_test(l, family, dimension(c, 3), trial_count(c, 1000), seed,
                                                    c.real("tol", kCertTol)));
    }
    if (suite == "quadratic_contraction") {
        const double alpha = p.real("alpha", 0.5), beta = p.real("beta", 0.5);
        const ChannelFamily family = channel(c);
        return from_report(certify_quadratic_contraction(alpha, beta, family, dimension(c, 3), trial_count(c, 1000),
                                                         seed, c.real("tol", kCertTol)));
    }
    if (suite == "variational_saturation") {
        const ExponentQuad quad =
            p.has("r0") ? ExponentQuad(p.real("r0"), p.real("r1"), p.real("r2"), p.real("r3"))
                        : ExponentQuad::from_triple(p.real("p", 0.25), p.real("q", 0.25), p.real("s", 2.0));
        return from_report(saturation_sweep(quad, dimension(c, 3), trial_count(c, 1000), seed, c.real("tol", 1e-8)));
    }
    throw SchemaError("unknown certify suite '" + suite + "'");
}

CommandResult cmd_search(Config& c) {
    const std::string claim = c.text("claim");
    Config p = c.child("params");
    SearchOptions o;
    o.seed = c.seed(0);
    o.tol = c.real("tol", kCertTol);
    o.stop_margin = c.real("stop_margin", o.stop_margin);
    o.warm_start = c.flag("warm_start", true);
    SearchWitness w;
    if (claim == "nonconcavity" || claim == "nonconvexity") {
        const bool adjoint = c.flag("adjoint_pair", false);
        const double a = p.real("p", claim == "nonconcavity" ? 0.3 : 0.6);
        const double s = p.real("s", claim == "nonconcavity" ? 3.0 : 1.8);
        o.budget = c.integer("budget", 100000);
        o.dims = dimension_list(c, {2, 3, 4});
        w = claim == "nonconcavity" ? search_nonconcavity(a, s, adjoint, o) : search_nonconvexity(a, s, adjoint, o);
    } else if (claim == "cfl_nonconcavity") {
        const double a = p.real("p", 1.0), q2 = p.real("q2", 1.0), r2 = p.real("r2", 1.0);
        o.budget = c.integer("budget", 100000);
        o.dims = dimension_list(c, {2});
        w = cfl_nonconcavity_check(a, q2, r2, o);
    } else if (claim == "triple_nonconvexity") {
        const TripleParams t = triple_params(p, 0.25, 0.25, 1.8);
        o.budget = c.integer("budget", 100000);
        o.dims = dimension_list(c, {1, 2, 3});
        w = search_diagonal_triple_nonconvexity(t.p, t.q, t.s, o);
    } else if (claim == "lambda_refutation") {
        const LambdaParams l = lambda_params(p, 1.5);
        w = refute_lambda_monotonicity(l, dimension(c, 1), o.seed, c.integer("budget", 20000));
    } else {
        throw SchemaError("unknown search claim '" + claim + "'");
    }
    return {w.found ? kExitOk : kExitInconclusive, witness_json(w), {}};
}

AtomicMeasure measure(Config& c) {
    if (!c.has("measure")) c.raw()["measure"] = {{"c", 0}, {"atoms", json::array({json::array({0, 1})})}};
    Config m = c.child("measure");
    AtomicMeasure mu;
    mu.c = m.real("c");
    if (!m.has("atoms") || !m.raw().at("atoms").is_array()) throw SchemaError("measure.atoms must be an array");
    for (const json& a : m.raw().at("atoms")) {
        if (!a.is_array() || a.size() != 2) throw SchemaError("measure.atoms entries must be [t, w]");
        mu.atoms.push_back({parse_real(a[0], "measure.atoms"), parse_real(a[1], "measure.atoms")});
    }
    return mu;
}

CommandResult with_stats(CommandResult r, const CertReport& report) {
    r.report["stats"] = stats_json(report);
    json gaps = json::array();
    for (double g : report.gaps) gaps.push_back(real_json(g));
    r.report["gaps"] = std::move(gaps);
    return r;
}

CommandResult cmd_metrics(Config& c) {
    const std::string suite = c.text("suite");
    if (suite == "petz_monotonicity") {
        const ScalarFunction h = scalar_fn(c, "h");
        const ChannelFamily family = channel(c);
        const CertReport r =
            petz_monotonicity_sweep(h, family, dimension(c, 3), trial_count(c, 100), c.seed(0), c.real("tol", 1e-9));
        return with_stats(from_report(r), r);
    }
    if (suite == "double_operator") {
        const AtomicMeasure mu = measure(c);
        const ChannelFamily family = channel(c);
        const CertReport r =
            double_operator_sweep(mu, family, dimension(c, 3), trial_count(c, 100), c.seed(0), c.real("tol", 1e-9));
        return with_stats(from_report(r), r);
    }
    if (suite == "spectral_routes") {
        const ScalarFunction f = scalar_fn(c, "h");
        const CertReport r =
            spectral_route_sweep(f, dimension(c, 3), trial_count(c, 100), c.seed(0), c.real("tol", 1e-10));
        return with_stats(from_report(r), r);
    }
    if (suite == "hessian") {
        const ScalarFunction f = scalar_fn(c, "xlogx");
        const CertReport r = hessian_sweep(f, dimension(c, 3), trial_count(c, 100), c.seed(0), c.real("tol", 1e-5));
        return with_stats(from_report(r), r);
    }
    if (suite == "petz_form_obstruction") {
        Config p = c.child("params");
        const PetzFormObstruction o = petz_form_obstruction(p.real("p", 2.0));
        const bool shown = o.p == 1.0 ? o.degenerate : o.non_constant;
        auto vec_json = [](const RealVector& v) {
            json out = json::array();
            for (Index i = 0; i < v.size(); ++i) out.push_back(real_json(v(i)));
            return out;
        };
        json report = {{"p", real_json(o.p)},
                       {"d1", vec_json(o.d1)},
                       {"d2", vec_json(o.d2)},
                       {"k1", real_json(o.k1)},
                       {"k2", real_json(o.k2)},
                       {"difference", real_json(o.difference)},
                       {"non_constant", o.non_constant},
                       {"traceless", vec_json(o.traceless)},
                       {"traceless_value", real_json(o.traceless_value)},
                       {"traceless_value_numeric", real_json(o.traceless_value_numeric)},
                       {"degenerate", o.degenerate},
                       {"obstruction_shown", shown}};
        return {shown ? kExitOk : kExitInconclusive, std::move(report), {}};
    }
    if (suite == "h_quadrature") {
        std::vector<double> grid;
        if (c.has("grid")) {
            if (!c.raw().at("grid").is_array()) throw SchemaError("grid must be an array");
            for (const json& x : c.raw().at("grid")) grid.push_back(parse_real(x, "grid"));
        } else {
            const long points = c.integer("points", 61);
            if (points < 2) throw SchemaError("points must be at least 2");
            for (long i = 0; i < points; ++i) {
                grid.push_back(std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(points - 1)));
            }
        }
        const double tol = c.real("tol", 1e-12);
        const double err = h_quadrature_max_error(grid);
        return {err <= tol ? kExitOk : kExitViolated,
                {{"max_error", real_json(err)}, {"points", grid.size()}, {"tol", real_json(tol)}},
                {}};
    }
    if (suite == "q_inverse") {
        const ScalarFunction f = scalar_fn(c, "h");
        const Index n = dimension(c, 3);
        const long trials = trial_count(c, 100);
        const std::uint64_t seed = c.seed(0);
        const double tol = c.real("tol", 1e-9);
        double worst = 0.0;
        for (long t = 0; t < trials; ++t) {
            Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
            const PsdMatrix a = random_psd(n, rng);
            const PsdMatrix b = random_psd(n, rng);
            worst = std::max(worst, q_inverse_deviation(a, b, ratio_kernel(f)));
        }
        return {worst <= tol ? kExitOk : kExitViolated,
                {{"max_deviation", real_json(worst)}, {"trials", trials}, {"tol", real_json(tol)}},
                {}};
    }
    throw SchemaError("unknown metrics suite '" + suite + "'");
}

CommandResult cmd_demo(Config& c) {
    Config p = c.child("params");
    const LambdaParams l = lambda_params(p, 3.0);
    const Index n = dimension(c, 2);
    const std::uint64_t seed = c.seed(0);
    const double tol = c.real("tol", 1e-10);

    const PartialTraceScaling scaling = partial_trace_scaling(l, n, seed);
    const double swap_deviation = block_swap_midpoint_identity(l, n, seed);
    const ScalarBoundary boundary = scalar_convexity_boundary(l.p);
    const SearchWitness refutation = refute_lambda_monotonicity(l, n, seed, c.integer("budget", 20000));

    const bool scaling_ok = scaling.error < tol;
    const bool swap_ok = swap_deviation < tol;
    json report = {
        {"partial_trace",
         {{"measured", real_json(scaling.measured)},
          {"predicted", real_json(scaling.predicted)},
          {"error", real_json(scaling.error)},
          {"pass", scaling_ok}}},
        {"block_swap", {{"relative_deviation", real_json(swap_deviation)}, {"pass", swap_ok}}},
        {"scalar_boundary",
         {{"p", real_json(boundary.p)},
          {"analytic_convex", boundary.analytic},
          {"numeric_convex", boundary.numeric},
          {"agree", boundary.agree},
          {"worst_eigenvalue", real_json(boundary.worst_eigenvalue)},
          {"witness", {real_json(boundary.witness_x), real_json(boundary.witness_y)}},
          {"direction", {real_json(boundary.direction_x), real_json(boundary.direction_y)}}}},
        {"refutation", witness_json(refutation)},
    };
    return {scaling_ok && swap_ok && boundary.agree ? kExitOk : kExitViolated, std::move(report), {}};
}

}  // namespace

CommandResult run_command(const std::string& command, json config, const Overrides& overrides) {
    if (config.is_null()) config = json::object();
    if (!config.is_object()) throw SchemaError("config must be a JSON object");
    if (config.contains("command") && config.at("command") != command) {
        throw SchemaError("config is for command '" + config.at("command").dump() + "'");
    }
    config["command"] = command;
    apply_overrides(config, overrides);
    Config c(config, "config");
    static const std::map<std::string, std::function<CommandResult(Config&)>> commands = {
        {"eval", cmd_eval}, {"certify", cmd_certify}, {"search", cmd_search},
        {"metrics", cmd_metrics}, {"demo", cmd_demo},
    };
    const auto it = commands.find(command);
    if (it == commands.end()) throw SchemaError("unknown command '" + command + "'");
    CommandResult result = it->second(c);
    result.report = {{"command", command}, {"config", config}, {"result", std::move(result.report)},
                     {"exit_code", result.exit_code}};
    return result;
}

CommandResult run_command_checked(const std::string& command, const json& config, const Overrides& overrides) {
    auto failure = [&](int code, const std::string& kind, const std::string& message) {
        return CommandResult{code, {{"command", command}, {"error", kind}, {"message", message}, {"exit_code", code}},
                             {}};
    };
    try {
        return run_command(command, config, overrides);
    } catch (const SchemaError& e) {
        return failure(kExitSchema, "schema", e.what());
    } catch (const json::exception& e) {
        return failure(kExitSchema, "schema", e.what());
    } catch (const Error& e) {
        // Malformed arguments are a schema problem; everything else is a
        // domain error and the message names the inner error code.
        const int code = e.code() == ErrorCode::BadArgument ? kExitSchema : kExitDomain;
        return failure(code, std::string(error_code_name(e.code())), e.what());
    }
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace tracelab::cli
