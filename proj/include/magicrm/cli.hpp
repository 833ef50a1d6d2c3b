// Copyright 2026 The magicrm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAGICRM_CLI_HPP
#define MAGICRM_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "io.hpp"

namespace magicrm {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int usage = 2;
inline constexpr int domain = 3;
inline constexpr int size = 4;
inline constexpr int data = 5;
inline constexpr int infeasible = 6;
}  // namespace exit_code

inline constexpr const char* kHelpFooter = R"(Bit order: outcome strings list qubit 0 first (character i is qubit i);
basis index bit (n-1-i) is qubit i.

States: --state zero|ptheta|gamma|haar with --n/--t/--theta/--state-seed,
or a full label such as gamma:n=3,t=5 or ptheta:theta=0.7854.

Exit codes:
  0  success
  1  internal error
  2  usage error (unknown flag, missing or malformed option)
  3  argument outside an operation's domain
  4  size or resource guard exceeded
  5  malformed or inconsistent record / grid files
  6  infeasible noise solve (measured values admit no model parameters))";

namespace detail {

struct StateFlags {
    std::string state;
    int n = 1;
    int t = 1;
    double theta = 0;
    uint64_t seed = 0;

    void add(CLI::App* app) {
        app->add_option("--state", state, "state kind or full label")->required();
        app->add_option("--n", n, "qubit count");
        app->add_option("--t", t, "T-gate count (gamma)");
        app->add_option("--theta", theta, "phase angle in radians (ptheta)");
        app->add_option("--state-seed", seed, "seed (haar)");
    }
    StateSpec spec() const {
        if (state.find(':') != std::string::npos) return parse_state_label(state);
        StateSpec s;
        s.kind = state;
        s.n = n;
        s.t = t;
        s.theta = theta;
        s.seed = seed;
        if (s.kind != "zero" && s.kind != "ptheta" && s.kind != "gamma" && s.kind != "haar") {
            throw domain_error("unknown state kind '" + s.kind + "'");
        }
        return s;
    }
};

inline NoiseParams parse_noise(const std::string& s) {
    std::stringstream in(s);
    std::string item;
    std::vector<double> v;
    while (std::getline(in, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::logic_error&) {
            throw domain_error("bad --noise value '" + s + "'");
        }
    }
    if (v.size() != 3) throw domain_error("--noise expects p,q,eps");
    NoiseParams p{v[0], v[1], v[2]};
    p.validate();
    return p;
}

inline void emit(const Report& r, const std::string& out_path, std::ostream& out) {
    const std::string text = report_to_json(r).dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw data_error("cannot open '" + out_path + "' for writing");
    f << text;
}

}  // namespace detail

/// Runs one CLI invocation; args exclude the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    CLI::App app{"Randomized-measurement estimation of the stabilizer 2-Renyi entropy", "magicrm"};
    app.footer(kHelpFooter);
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the report here instead of stdout");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact magic measures of a named state");
    detail::StateFlags oracle_state;
    oracle_state.add(oracle);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "simulate a protocol run and estimate");
    detail::StateFlags sim_state;
    sim_state.add(simulate);
    size_t sim_nu = 0;
    uint64_t sim_nm = 0, sim_seed = 0;
    std::string sim_noise, sim_records_out, sim_method = "plugin";
    bool sim_verbose = false;
    simulate->add_option("--nu", sim_nu, "number of random Clifford words")->required();
    simulate->add_option("--nm", sim_nm, "shots per word")->required();
    simulate->add_option("--seed", sim_seed, "master seed")->required();
    simulate->add_option("--noise", sim_noise, "p,q,eps");
    simulate->add_option("--records-out", sim_records_out, "also write the shot records (NDJSON)");
    simulate->add_option("--method", sim_method, "plugin|ustat");
    simulate->add_flag("--verbose", sim_verbose, "include per-record statistics");

    // estimate
    auto* est = app.add_subcommand("estimate", "estimate from a record file");
    std::string est_records, est_method = "plugin";
    bool est_verbose = false;
    est->add_option("--records", est_records, "record file (NDJSON)")->required();
    est->add_option("--method", est_method, "plugin|ustat");
    est->add_flag("--verbose", est_verbose, "include per-record statistics");

    // fit-noise
    auto* fit = app.add_subcommand("fit-noise", "fit p, q, eps from |0>^n and target-state records");
    std::string fit_zero, fit_target, fit_method = "ustat", fit_state_override;
    fit->add_option("--records-zero", fit_zero, "records of |0>^n")->required();
    fit->add_option("--records", fit_target, "records of the target state")->required();
    fit->add_option("--method", fit_method, "plugin|ustat");
    fit->add_option("--target-state", fit_state_override, "target label (default: from the record header)");

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "grid search for the cheapest passing (N_U, N_M)");
    detail::StateFlags cal_state;
    cal_state.add(cal);
    std::string cal_grid = "default", cal_method = "plugin", cal_reference = "mean", cal_noise;
    size_t cal_trials = 100;
    uint64_t cal_seed = 0;
    double cal_delta = 0.12, cal_purity = 0.12;
    cal->add_option("--grid", cal_grid, "default or a JSON file {\"N_U\": [...], \"N_M\": [...]}");
    cal->add_option("--trials", cal_trials, "trials per cell");
    cal->add_option("--seed", cal_seed, "master seed")->required();
    cal->add_option("--method", cal_method, "plugin|ustat");
    cal->add_option("--reference", cal_reference, "mean|oracle reference for delta");
    cal->add_option("--delta-threshold", cal_delta, "delta threshold");
    cal->add_option("--purity-threshold", cal_purity, "|P - 1| threshold");
    cal->add_option("--noise", cal_noise, "p,q,eps");

    // predict
    auto* pred = app.add_subcommand("predict", "noise-model predictions for a state");
    detail::StateFlags pred_state;
    pred_state.add(pred);
    std::optional<double> pred_p, pred_p_exp, pred_w_exp;
    double pred_eps = 0;
    pred->add_option("--p", pred_p, "preparation survival probability");
    pred->add_option("--p-from-purity", pred_p_exp, "solve p from a measured purity");
    pred->add_option("--eps", pred_eps, "phase displacement (radians)");
    pred->add_option("--w-exp", pred_w_exp, "measured stabilizer purity to correct");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        Report r;
        if (oracle->parsed()) {
            const auto spec = oracle_state.spec();
            r.command = "oracle";
            r.state_label = state_label(spec);
            r.oracle = oracle_values(make_state(spec));
        } else if (simulate->parsed()) {
            const auto spec = sim_state.spec();
            const Method m = parse_method(sim_method);
            std::optional<NoiseParams> noise;
            if (!sim_noise.empty()) noise = detail::parse_noise(sim_noise);
            auto data = simulate_experiment(make_state(spec), sim_seed, sim_nu, sim_nm, noise);
            data.state_label = state_label(spec);
            if (!sim_records_out.empty()) save_records(data, sim_records_out);
            r.command = "simulate";
            r.seed = sim_seed;
            r.state_label = data.state_label;
            r.estimate = estimate(data, m);
            if (sim_verbose) r.per_record = all_record_stats(data, m);
        } else if (est->parsed()) {
            const Method m = parse_method(est_method);
            const auto data = load_records(est_records);
            r.command = "estimate";
            r.seed = data.seed;
            r.state_label = data.state_label;
            r.estimate = estimate(data, m);
            if (est_verbose) r.per_record = all_record_stats(data, m);
        } else if (fit->parsed()) {
            const Method m = parse_method(fit_method);
            const auto zero = load_records(fit_zero);
            const auto target = load_records(fit_target);
            const std::string label = fit_state_override.empty() ? target.state_label : fit_state_override;
            const auto f = fit_noise(zero, target, make_state(parse_state_label(label)), m);
            r.command = "fit-noise";
            r.seed = target.seed;
            r.state_label = label;
            r.estimate = f.target;
            r.zero_estimate = f.zero;
            r.noise_fit = NoiseFitSummary{f.p, f.q, f.epsilon, f.dp, f.dq, f.depsilon};
        } else if (cal->parsed()) {
            const auto spec = cal_state.spec();
            const auto psi = make_state(spec);
            const Grid g = cal_grid == "default" ? default_grid() : load_grid(cal_grid);
            GridOptions opt;
            opt.method = parse_method(cal_method);
            if (cal_reference == "oracle") {
                opt.reference = DeltaReference::oracle;
                opt.oracle_w = stab_purity_exact(psi);
            } else if (cal_reference != "mean") {
                throw domain_error("--reference must be mean or oracle");
            }
            if (!cal_noise.empty()) opt.noise = detail::parse_noise(cal_noise);
            r.command = "calibrate";
            r.seed = cal_seed;
            r.state_label = state_label(spec);
            r.calibration = grid_search(psi, g.n_u, g.n_m, cal_trials, cal_seed, opt);
            if (auto best = select_optimal(*r.calibration, cal_delta, cal_purity)) r.optimum = *best;
        } else if (pred->parsed()) {
            const auto spec = pred_state.spec();
            const auto psi = make_state(spec);
            if (pred_p.has_value() == pred_p_exp.has_value()) {
                throw domain_error("predict needs exactly one of --p and --p-from-purity");
            }
            const double p = pred_p ? *pred_p : solve_p(*pred_p_exp, psi);
            PredictionSummary s;
            s.p = p;
            s.epsilon = pred_eps;
            s.values = predict_noisy_observables(psi, p, pred_eps);
            if (pred_w_exp) {
                s.w_exp = *pred_w_exp;
                s.w_corrected = (*pred_w_exp - s.values.omega) / s.values.g;
            }
            r.command = "predict";
            r.state_label = state_label(spec);
            r.prediction = s;
        }
        detail::emit(r, out_path, out);
        return exit_code::ok;
    } catch (const infeasible_error& e) {
        err << "magicrm: infeasible: " << e.what() << '\n';
        return exit_code::infeasible;
    } catch (const data_error& e) {
        err << "magicrm: data error: " << e.what() << '\n';
        return exit_code::data;
    } catch (const size_error& e) {
        err << "magicrm: size error: " << e.what() << '\n';
        return exit_code::size;
    } catch (const domain_error& e) {
        err << "magicrm: " << e.what() << '\n';
        return exit_code::domain;
    } catch (const std::exception& e) {
        err << "magicrm: internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

}  // namespace magicrm

#endif
