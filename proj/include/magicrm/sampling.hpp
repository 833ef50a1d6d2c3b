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

#ifndef MAGICRM_SAMPLING_HPP
#define MAGICRM_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "errors.hpp"

namespace magicrm {

/// Outcome index -> number of shots. Zero counts are never stored.
using Counts = std::map<uint64_t, uint64_t>;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of the k-th independent stream under a master seed.
inline uint64_t stream_seed(uint64_t master, uint64_t k) {
    return splitmix64(master ^ splitmix64(k + 0x632BE59BD9B4E019ull));
}

inline void check_distribution(const std::vector<double>& probs) {
    double total = 0;
    for (double p : probs) {
        if (!(p >= -1e-12)) throw domain_error("negative or NaN probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw domain_error("probabilities sum to " + std::to_string(total));
}

/// Multinomial draw by sequential conditional binomials.
inline Counts sample_counts(const std::vector<double>& probs, uint64_t n_shots, std::mt19937_64& rng) {
    check_distribution(probs);
    if (n_shots < 1) throw domain_error("n_shots must be >= 1");
    Counts out;
    uint64_t left = n_shots;
    double mass = 1.0;
    for (size_t i = 0; i < probs.size() && left > 0; ++i) {
        double p = std::max(probs[i], 0.0);
        if (p <= 0) continue;
        uint64_t k;
        if (i + 1 == probs.size() || p >= mass) {
            k = left;
        } else {
            std::binomial_distribution<uint64_t> bin(left, std::min(1.0, p / mass));
            k = bin(rng);
        }
        if (k > 0) out[i] = k;
        left -= k;
        mass -= p;
    }
    if (left > 0) {
        // Rounding left mass on trailing zero entries; give it to the last nonzero outcome.
        for (size_t i = probs.size(); i-- > 0;) {
            if (probs[i] > 0) {
                out[i] += left;
                break;
            }
        }
    }
    return out;
}

inline Counts sample_counts(const std::vector<double>& probs, uint64_t n_shots, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_counts(probs, n_shots, rng);
}

}  // namespace magicrm

#endif
