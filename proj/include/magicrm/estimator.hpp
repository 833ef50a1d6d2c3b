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

#ifndef MAGICRM_ESTIMATOR_HPP
#define MAGICRM_ESTIMATOR_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "channels.hpp"
#include "parallel.hpp"
#include "sampling.hpp"
#include "weights.hpp"

namespace magicrm {

struct ShotRecord {
    CliffordWord word;
    Counts counts;
    /// If non-empty, the record carries exact outcome probabilities instead of counts.
    std::vector<double> exact_probs;

    bool is_exact() const { return !exact_probs.empty(); }
    uint64_t n_shots() const {
        uint64_t s = 0;
        for (const auto& [k, c] : counts) s += c;
        return s;
    }
};

struct ExperimentData {
    int n = 0;
    std::vector<ShotRecord> records;
    std::string state_label;
    uint64_t seed = 0;
    std::optional<NoiseParams> noise;

    void validate() const {
        check_qubits(n);
        if (records.empty()) throw data_error("no records");
        const uint64_t d = uint64_t{1} << n;
        for (size_t r = 0; r < records.size(); ++r) {
            const auto& rec = records[r];
            try {
                check_word(rec.word, n);
            } catch (const error& e) {
                throw data_error("record " + std::to_string(r) + ": " + e.what());
            }
            if (rec.is_exact()) {
                if (rec.exact_probs.size() != d) throw data_error("record " + std::to_string(r) + ": bad probability length");
                check_distribution(rec.exact_probs);
                continue;
            }
            if (rec.counts.empty()) throw data_error("record " + std::to_string(r) + " is empty");
            for (const auto& [k, c] : rec.counts) {
                if (k >= d) throw data_error("record " + std::to_string(r) + ": outcome out of range");
                if (c == 0) throw data_error("record " + std::to_string(r) + ": zero count stored");
            }
        }
    }
};

enum class Method { plug_in, u_statistic };

inline const char* method_name(Method m) { return m == Method::plug_in ? "plugin" : "ustat"; }

inline Method parse_method(const std::string& s) {
    if (s == "plugin" || s == "plug-in") return Method::plug_in;
    if (s == "ustat" || s == "u-statistic") return Method::u_statistic;
    throw domain_error("unknown method '" + s + "'");
}

struct RecordStats {
    double w = 0;  // per-record stabilizer purity
    double p = 0;  // per-record purity
};

struct EstimateReport {
    double W = 0, dW = 0;
    double P = 0, dP = 0;
    double M2 = std::numeric_limits<double>::quiet_NaN();
    double dM2 = std::numeric_limits<double>::quiet_NaN();
    bool m2_defined = false;
    bool warning = false;  // W or P came out non-positive
    Method method = Method::plug_in;
    size_t n_u = 0;
    uint64_t n_m = 0;  // smallest per-record shot count (0 for exact records)
};

/// Per-record estimates. Both use the Walsh transform m_A of the outcome
/// distribution: plug-in W = 4^-n sum_A 3^|A| m_A^4, P = 2^-n sum_A 3^|A| m_A^2.
/// The U-statistic replaces m_A^4 and m_A^2 by averages over distinct shot
/// tuples, which for +-1 variables follow from the power sum S = sum_s c(s)(-1)^{A.s}.
inline RecordStats record_stats(const ShotRecord& rec, int n, Method method) {
    const size_t d = size_t{1} << n;
    std::vector<double> pow3(static_cast<size_t>(n) + 1, 1.0);
    for (int k = 1; k <= n; ++k) pow3[static_cast<size_t>(k)] = 3 * pow3[static_cast<size_t>(k) - 1];
    const double scale4 = std::ldexp(1.0, -2 * n), scale2 = std::ldexp(1.0, -n);

    RecordStats out;
    if (rec.is_exact() || method == Method::plug_in) {
        std::vector<double> m(d, 0.0);
        if (rec.is_exact()) {
            m = rec.exact_probs;
        } else {
            const double total = static_cast<double>(rec.n_shots());
            for (const auto& [k, c] : rec.counts) m[k] = static_cast<double>(c) / total;
        }
        walsh_hadamard(m);
        for (size_t a = 0; a < d; ++a) {
            const double c = pow3[static_cast<size_t>(popcount(a))];
            const double m2 = m[a] * m[a];
            out.w += c * m2 * m2;
            out.p += c * m2;
        }
        out.w *= scale4;
        out.p *= scale2;
        return out;
    }

    const long double N = static_cast<long double>(rec.n_shots());
    if (N < 4) throw data_error("u-statistic needs at least 4 shots per record");
    std::vector<long double> s(d, 0.0L);
    for (const auto& [k, c] : rec.counts) s[k] = static_cast<long double>(c);
    walsh_hadamard(s);
    const long double fall4 = N * (N - 1) * (N - 2) * (N - 3);
    const long double fall2 = N * (N - 1);
    long double w = 0, p = 0;
    for (size_t a = 0; a < d; ++a) {
        const long double p1 = s[a];
        const long double p1sq = p1 * p1;
        const long double e4 = p1sq * p1sq - 6 * p1sq * N + 3 * N * N + 8 * p1sq - 6 * N;
        const long double e2 = p1sq - N;
        const long double c = pow3[static_cast<size_t>(popcount(a))];
        w += c * e4;
        p += c * e2;
    }
    out.w = static_cast<double>(w / fall4) * scale4;
    out.p = static_cast<double>(p / fall2) * scale2;
    return out;
}

inline std::vector<RecordStats> all_record_stats(const ExperimentData& data, Method method) {
    std::vector<RecordStats> stats(data.records.size());
    parallel_for(stats.size(), [&](size_t i) { stats[i] = record_stats(data.records[i], data.n, method); });
    return stats;
}

/// Mean, standard error of the mean, M2 with first-order error propagation.
inline EstimateReport summarize(const std::vector<RecordStats>& stats, int n, Method method) {
    const size_t nu = stats.size();
    if (nu < 2) throw data_error("at least 2 records are needed for a standard error");
    EstimateReport r;
    r.method = method;
    r.n_u = nu;
    for (const auto& s : stats) {
        r.W += s.w;
        r.P += s.p;
    }
    r.W /= static_cast<double>(nu);
    r.P /= static_cast<double>(nu);
    double vw = 0, vp = 0;
    for (const auto& s : stats) {
        vw += (s.w - r.W) * (s.w - r.W);
        vp += (s.p - r.P) * (s.p - r.P);
    }
    const double denom = static_cast<double>(nu) * static_cast<double>(nu - 1);
    r.dW = std::sqrt(vw / denom);
    r.dP = std::sqrt(vp / denom);
    if (r.W > 0 && r.P > 0) {
        r.m2_defined = true;
        r.M2 = -std::log2(std::ldexp(r.W, n) / r.P);
        r.dM2 = std::hypot(r.dW / r.W, r.dP / r.P) / std::numbers::ln2;
    } else {
        r.warning = true;
    }
    return r;
}

inline EstimateReport estimate(const ExperimentData& data, Method method = Method::plug_in) {
    data.validate();
    auto r = summarize(all_record_stats(data, method), data.n, method);
    uint64_t nm = std::numeric_limits<uint64_t>::max();
    for (const auto& rec : data.records) nm = std::min(nm, rec.is_exact() ? 0 : rec.n_shots());
    r.n_m = nm;
    return r;
}

/// Upper bound on the variance of a single-record estimate.
inline double variance_bound(Quantity quantity, int n, double n_m, double oracle_value) {
    if (!(n_m >= 1)) throw domain_error("N_M must be >= 1");
    const double d = std::ldexp(1.0, n);
    if (quantity == Quantity::purity) {
        return std::ldexp(1.0, n + 1) + 4.0 / (n_m * n_m) * std::pow(3.0, n) - oracle_value * oracle_value;
    }
    const double sd = std::sqrt(d);
    const double n2 = n_m * n_m, n3 = n2 * n_m, n4 = n2 * n2;
    return 8 / sd + 192 / (std::cbrt(d) * n4) + 6792 / (sd * n4) + 5056 / n3 + 8179 / (sd * n2) + 128 / n_m -
           oracle_value * oracle_value;
}

/// Bernstein-type failure probability for a mean of N_U records.
inline double bernstein_tail(double n_u, double epsilon, double variance) {
    if (!(n_u > 0) || !(epsilon > 0) || !(variance >= 0)) throw domain_error("bernstein_tail needs positive inputs");
    return std::exp2(-n_u * epsilon * epsilon / (variance + 2 * epsilon / 3));
}

}  // namespace magicrm

#endif
