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

#ifndef MAGICRM_SIMULATE_HPP
#define MAGICRM_SIMULATE_HPP

#include <optional>
#include <random>

#include "channels.hpp"
#include "estimator.hpp"
#include "parallel.hpp"
#include "sampling.hpp"

namespace magicrm {

inline MixedState apply_prep_noise(const MixedState& source, double p) {
    if (p == 1.0) return source;
    std::vector<std::pair<double, StateVector>> terms;
    for (const auto& [w, s] : source.terms) {
        for (auto& [w2, s2] : prep_channel(s, p).terms) terms.emplace_back(w * w2, std::move(s2));
    }
    return {source.n, std::move(terms)};
}

/// N_U records of N_M shots each. Record k draws its word (then, if eps != 0,
/// a hidden aux word) and its shots from stream k of the master seed.
inline ExperimentData simulate_experiment(const MixedState& source, uint64_t seed, size_t n_u, uint64_t n_m,
                                          const std::optional<NoiseParams>& noise = std::nullopt) {
    source.validate();
    if (n_u < 1 || n_m < 1) throw domain_error("N_U and N_M must be >= 1");
    const NoiseParams np = noise.value_or(NoiseParams{});
    np.validate();
    const MixedState rho = apply_prep_noise(source, np.p);
    const int n = source.n;

    ExperimentData data;
    data.n = n;
    data.seed = seed;
    data.noise = noise;
    data.records.resize(n_u);
    parallel_for(n_u, [&](size_t k) {
        std::mt19937_64 rng(stream_seed(seed, k));
        std::uniform_int_distribution<int> pick(0, kCliffordCount - 1);
        CliffordWord word(static_cast<size_t>(n));
        for (auto& id : word) id = pick(rng);
        std::vector<double> probs;
        if (np.epsilon != 0.0) {
            CliffordWord aux(static_cast<size_t>(n));
            for (auto& id : aux) id = pick(rng);
            probs = measured_distribution(rho, word, &aux, np.epsilon, np.q);
        } else {
            probs = measured_distribution(rho, word, nullptr, 0.0, np.q);
        }
        // Clean rounding so the distribution check never trips.
        double total = 0;
        for (double& p : probs) {
            p = std::max(p, 0.0);
            total += p;
        }
        for (double& p : probs) p /= total;
        data.records[k].word = std::move(word);
        data.records[k].counts = sample_counts(probs, n_m, rng);
    });
    return data;
}

/// Record with the exact outcome distribution of word applied to rho.
inline ShotRecord exact_record(const MixedState& rho, const CliffordWord& word) {
    ShotRecord r;
    r.word = word;
    r.exact_probs = measured_distribution(rho, word);
    return r;
}

}  // namespace magicrm

#endif
