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

#ifndef MAGICRM_IO_HPP
#define MAGICRM_IO_HPP

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "calibration.hpp"
#include "estimator.hpp"
#include "noise.hpp"
#include "noise_fit.hpp"
#include "pauli.hpp"

namespace magicrm {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kRecordFormatVersion = 1;
inline constexpr const char* kBitOrder = "character i of an outcome string is qubit i";

using json = nlohmann::json;

// ---------------------------------------------------------------- states

/// Named states: "zero:n=3", "ptheta:theta=0.785", "gamma:n=3,t=5",
/// "haar:n=3,seed=7".
struct StateSpec {
    std::string kind;
    int n = 1;
    int t = 1;
    double theta = 0;
    uint64_t seed = 0;
};

inline std::string state_label(const StateSpec& s) {
    std::ostringstream o;
    o.precision(17);
    if (s.kind == "zero") o << "zero:n=" << s.n;
    else if (s.kind == "ptheta") o << "ptheta:theta=" << s.theta;
    else if (s.kind == "gamma") o << "gamma:n=" << s.n << ",t=" << s.t;
    else if (s.kind == "haar") o << "haar:n=" << s.n << ",seed=" << s.seed;
    else throw domain_error("unknown state kind '" + s.kind + "'");
    return o.str();
}

inline StateSpec parse_state_label(const std::string& label) {
    StateSpec s;
    const auto colon = label.find(':');
    s.kind = label.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(label.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw domain_error("bad state parameter '" + item + "'");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw domain_error("state '" + label + "' is missing '" + key + "'");
        return it->second;
    };
    try {
        if (s.kind == "zero") {
            s.n = std::stoi(get("n"));
        } else if (s.kind == "ptheta") {
            s.theta = std::stod(get("theta"));
        } else if (s.kind == "gamma") {
            s.n = std::stoi(get("n"));
            s.t = std::stoi(get("t"));
        } else if (s.kind == "haar") {
            s.n = std::stoi(get("n"));
            s.seed = std::stoull(get("seed"));
        } else {
            throw domain_error("unknown state kind '" + s.kind + "'");
        }
    } catch (const std::logic_error&) {
        throw domain_error("bad number in state label '" + label + "'");
    }
    return s;
}

inline StateVector make_state(const StateSpec& s) {
    if (s.kind == "zero") return zero_state(s.n);
    if (s.kind == "ptheta") return ptheta_state(s.theta);
    if (s.kind == "gamma") return gamma_state(s.n, s.t);
    if (s.kind == "haar") return haar_random_state(s.n, s.seed);
    throw domain_error("unknown state kind '" + s.kind + "'");
}

// ---------------------------------------------------------------- records

inline json noise_to_json(const NoiseParams& p) { return {{"p", p.p}, {"q", p.q}, {"epsilon", p.epsilon}}; }

inline NoiseParams noise_from_json(const json& j) {
    return {j.at("p").get<double>(), j.at("q").get<double>(), j.at("epsilon").get<double>()};
}

/// Newline-delimited JSON: one header object, then one object per record.
inline void write_records(const ExperimentData& data, std::ostream& out) {
    json header = {{"format_version", kRecordFormatVersion},
                   {"n", data.n},
                   {"state_label", data.state_label},
                   {"bit_order", kBitOrder},
                   {"seed", data.seed}};
    if (data.noise) header["noise"] = noise_to_json(*data.noise);
    out << header.dump() << '\n';
    for (const auto& rec : data.records) {
        if (rec.is_exact()) throw data_error("records with exact probabilities cannot be written");
        json counts = json::object();
        for (const auto& [k, c] : rec.counts) counts[to_bitstring(k, data.n)] = c;
        out << json{{"clifford_ids", rec.word}, {"counts", counts}}.dump() << '\n';
    }
}

inline void save_records(const ExperimentData& data, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw data_error("cannot open '" + path + "' for writing");
    write_records(data, f);
}

inline ExperimentData read_records(std::istream& in, const std::string& source = "<stream>") {
    ExperimentData data;
    std::string line;
    size_t lineno = 0;
    bool have_header = false;
    auto fail = [&](const std::string& what) -> data_error {
        return data_error(source + ":" + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        std::vector<std::set<std::string>> keys;
        std::string repeated;
        auto watch = [&](int, json::parse_event_t ev, json& parsed) {
            if (ev == json::parse_event_t::object_start) keys.emplace_back();
            else if (ev == json::parse_event_t::object_end) keys.pop_back();
            else if (ev == json::parse_event_t::key && !keys.back().insert(parsed.get<std::string>()).second) {
                repeated = parsed.get<std::string>();
            }
            return true;
        };
        try {
            j = json::parse(line, watch);
        } catch (const json::parse_error& e) {
            throw fail(std::string("invalid JSON: ") + e.what());
        }
        if (!repeated.empty()) throw fail("duplicate key '" + repeated + "'");
        if (!j.is_object()) throw fail("line is not a JSON object");
        try {
            if (!have_header) {
                const int version = j.at("format_version").get<int>();
                if (version != kRecordFormatVersion) throw fail("unsupported format_version " + std::to_string(version));
                data.n = j.at("n").get<int>();
                check_qubits(data.n);
                data.state_label = j.at("state_label").get<std::string>();
                if (j.contains("seed")) data.seed = j.at("seed").get<uint64_t>();
                if (j.contains("noise")) data.noise = noise_from_json(j.at("noise"));
                have_header = true;
                continue;
            }
            ShotRecord rec;
            rec.word = j.at("clifford_ids").get<CliffordWord>();
            check_word(rec.word, data.n);
            for (const auto& [key, value] : j.at("counts").items()) {
                const auto c = value.get<int64_t>();
                if (c <= 0) throw fail("counts must be positive integers");
                const uint64_t idx = parse_bitstring(key, data.n);
                rec.counts[idx] = static_cast<uint64_t>(c);
            }
            if (rec.counts.empty()) throw fail("record has no counts");
            data.records.push_back(std::move(rec));
        } catch (const json::exception& e) {
            throw fail(e.what());
        } catch (const data_error&) {
            throw;
        } catch (const error& e) {
            throw fail(e.what());
        }
    }
    if (!have_header) throw data_error(source + ": missing header line");
    if (data.records.empty()) throw data_error(source + ": no records");
    return data;
}

inline ExperimentData load_records(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open '" + path + "'");
    return read_records(f, path);
}

// ---------------------------------------------------------------- reports

struct OracleValues {
    int n = 0;
    double w = 0, purity = 0;
    double m2 = 0, m1 = 0, m_half = 0, m_inf = 0;
    double max_offidentity = 0;
};

inline OracleValues oracle_values(const StateVector& s) {
    const auto t = pauli_table(s);
    OracleValues o;
    o.n = s.n;
    o.w = stab_purity_exact(t);
    o.purity = purity_from_table(t);
    o.m2 = stabilizer_renyi(t, 2);
    o.m1 = stabilizer_renyi(t, 1);
    o.m_half = stabilizer_renyi(t, 0.5);
    o.m_inf = stabilizer_renyi(t, kInfiniteOrder);
    o.max_offidentity = max_offidentity_pauli(s);
    return o;
}

struct NoiseFitSummary {
    double p = 1, q = 1, epsilon = 0, dp = 0, dq = 0, depsilon = 0;
};

struct PredictionSummary {
    double p = 1, epsilon = 0;
    NoisyPrediction values;
    std::optional<double> w_exp, w_corrected;
};

struct Report {
    std::string command;
    std::string version = kVersion;
    std::optional<uint64_t> seed;
    std::string state_label;
    std::optional<EstimateReport> estimate;
    std::optional<EstimateReport> zero_estimate;
    std::optional<NoiseFitSummary> noise_fit;
    std::optional<OracleValues> oracle;
    std::optional<PredictionSummary> prediction;
    std::optional<std::vector<GridCell>> calibration;
    std::optional<GridCell> optimum;
    std::vector<RecordStats> per_record;  // written only when non-empty
};

namespace detail {

inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline double num_of(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline json estimate_to_json(const EstimateReport& e) {
    return {{"W", num(e.W)},          {"dW", num(e.dW)},   {"P", num(e.P)},
            {"dP", num(e.dP)},        {"M2", num(e.M2)},   {"dM2", num(e.dM2)},
            {"m2_defined", e.m2_defined}, {"warning", e.warning}, {"method", method_name(e.method)},
            {"N_U", e.n_u},           {"N_M", e.n_m}};
}

inline EstimateReport estimate_from_json(const json& j) {
    EstimateReport e;
    e.W = num_of(j.at("W"));
    e.dW = num_of(j.at("dW"));
    e.P = num_of(j.at("P"));
    e.dP = num_of(j.at("dP"));
    e.M2 = num_of(j.at("M2"));
    e.dM2 = num_of(j.at("dM2"));
    e.m2_defined = j.at("m2_defined").get<bool>();
    e.warning = j.at("warning").get<bool>();
    e.method = parse_method(j.at("method").get<std::string>());
    e.n_u = j.at("N_U").get<size_t>();
    e.n_m = j.at("N_M").get<uint64_t>();
    return e;
}

inline json cell_to_json(const GridCell& c) {
    return {{"N_U", c.n_u}, {"N_M", c.n_m}, {"mean_W", num(c.mean_w)}, {"mean_P", num(c.mean_p)},
            {"delta", num(c.delta)}, {"trials", c.trials}};
}

inline GridCell cell_from_json(const json& j) {
    GridCell c;
    c.n_u = j.at("N_U").get<size_t>();
    c.n_m = j.at("N_M").get<uint64_t>();
    c.mean_w = num_of(j.at("mean_W"));
    c.mean_p = num_of(j.at("mean_P"));
    c.delta = num_of(j.at("delta"));
    c.trials = j.at("trials").get<size_t>();
    return c;
}

}  // namespace detail

inline json report_to_json(const Report& r) {
    using detail::num;
    json j = {{"tool", "magicrm"}, {"version", r.version}, {"command", r.command}};
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    if (!r.state_label.empty()) j["state_label"] = r.state_label;
    if (r.estimate) {
        j["estimates"] = detail::estimate_to_json(*r.estimate);
        j["method"] = method_name(r.estimate->method);
        j["resources"] = {{"N_U", r.estimate->n_u}, {"N_M", r.estimate->n_m}};
    }
    if (r.zero_estimate) j["zero_state_estimates"] = detail::estimate_to_json(*r.zero_estimate);
    if (r.noise_fit) {
        const auto& f = *r.noise_fit;
        j["noise_fit"] = {{"p", num(f.p)}, {"q", num(f.q)}, {"epsilon", num(f.epsilon)},
                          {"dp", num(f.dp)}, {"dq", num(f.dq)}, {"depsilon", num(f.depsilon)}};
    }
    if (r.oracle) {
        const auto& o = *r.oracle;
        j["oracle"] = {{"n", o.n},           {"W", num(o.w)},           {"purity", num(o.purity)},
                       {"M2", num(o.m2)},    {"M1", num(o.m1)},         {"M_half", num(o.m_half)},
                       {"M_inf", num(o.m_inf)}, {"max_offidentity_pauli", num(o.max_offidentity)}};
    }
    if (r.prediction) {
        const auto& p = *r.prediction;
        j["prediction"] = {{"p", num(p.p)},
                           {"epsilon", num(p.epsilon)},
                           {"W", num(p.values.w)},
                           {"purity", num(p.values.purity)},
                           {"ratio", num(p.values.ratio)},
                           {"W_eps", num(p.values.w_eps)},
                           {"g", num(p.values.g)},
                           {"omega", num(p.values.omega)}};
        if (p.w_exp) j["prediction"]["W_exp"] = num(*p.w_exp);
        if (p.w_corrected) j["prediction"]["W_corrected"] = num(*p.w_corrected);
    }
    if (r.calibration) {
        json cells = json::array();
        for (const auto& c : *r.calibration) cells.push_back(detail::cell_to_json(c));
        j["calibration"] = cells;
    }
    if (r.optimum) j["optimum"] = detail::cell_to_json(*r.optimum);
    if (!r.per_record.empty()) {
        json rows = json::array();
        for (const auto& s : r.per_record) rows.push_back({{"W", num(s.w)}, {"P", num(s.p)}});
        j["per_record"] = rows;
    }
    return j;
}

inline Report report_from_json(const json& j) {
    using detail::num_of;
    Report r;
    r.command = j.at("command").get<std::string>();
    r.version = j.at("version").get<std::string>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<uint64_t>();
    if (j.contains("state_label")) r.state_label = j.at("state_label").get<std::string>();
    if (j.contains("estimates")) r.estimate = detail::estimate_from_json(j.at("estimates"));
    if (j.contains("zero_state_estimates")) r.zero_estimate = detail::estimate_from_json(j.at("zero_state_estimates"));
    if (j.contains("noise_fit")) {
        const auto& f = j.at("noise_fit");
        r.noise_fit = NoiseFitSummary{num_of(f.at("p")),  num_of(f.at("q")),  num_of(f.at("epsilon")),
                                      num_of(f.at("dp")), num_of(f.at("dq")), num_of(f.at("depsilon"))};
    }
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        r.oracle = OracleValues{o.at("n").get<int>(),      num_of(o.at("W")),     num_of(o.at("purity")),
                                num_of(o.at("M2")),        num_of(o.at("M1")),    num_of(o.at("M_half")),
                                num_of(o.at("M_inf")),     num_of(o.at("max_offidentity_pauli"))};
    }
    if (j.contains("prediction")) {
        const auto& p = j.at("prediction");
        PredictionSummary s;
        s.p = num_of(p.at("p"));
        s.epsilon = num_of(p.at("epsilon"));
        s.values = {num_of(p.at("W")), num_of(p.at("purity")), num_of(p.at("ratio")),
                    num_of(p.at("W_eps")), num_of(p.at("g")), num_of(p.at("omega"))};
        if (p.contains("W_exp")) s.w_exp = num_of(p.at("W_exp"));
        if (p.contains("W_corrected")) s.w_corrected = num_of(p.at("W_corrected"));
        r.prediction = s;
    }
    if (j.contains("calibration")) {
        std::vector<GridCell> cells;
        for (const auto& c : j.at("calibration")) cells.push_back(detail::cell_from_json(c));
        r.calibration = cells;
    }
    if (j.contains("optimum")) r.optimum = detail::cell_from_json(j.at("optimum"));
    if (j.contains("per_record")) {
        for (const auto& row : j.at("per_record")) r.per_record.push_back({num_of(row.at("W")), num_of(row.at("P"))});
    }
    return r;
}

/// Grid file for `calibrate --grid FILE`: {"N_U": [...], "N_M": [...]}.
inline Grid load_grid(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open grid file '" + path + "'");
    try {
        const json j = json::parse(f);
        Grid g;
        g.n_u = j.at("N_U").get<std::vector<size_t>>();
        g.n_m = j.at("N_M").get<std::vector<uint64_t>>();
        if (g.n_u.empty() || g.n_m.empty()) throw data_error(path + ": empty grid");
        return g;
    } catch (const json::exception& e) {
        throw data_error(path + ": " + e.what());
    }
}

}  // namespace magicrm

#endif
