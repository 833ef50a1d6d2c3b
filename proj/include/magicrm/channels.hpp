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

#ifndef MAGICRM_CHANNELS_HPP
#define MAGICRM_CHANNELS_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "statevector.hpp"

namespace magicrm {

/// p: preparation survival, q: per-qubit readout fidelity, epsilon: phase
/// displacement inside each random Clifford.
struct NoiseParams {
    double p = 1.0;
    double q = 1.0;
    double epsilon = 0.0;

    void validate() const {
        if (!(p >= 0 && p <= 1)) throw domain_error("p outside [0, 1]");
        if (!(q >= 0 && q <= 1)) throw domain_error("q outside [0, 1]");
        if (!std::isfinite(epsilon)) throw domain_error("epsilon not finite");
    }
    bool is_identity() const { return p == 1.0 && q == 1.0 && epsilon == 0.0; }
};

/// p psi + (1-p)/n sum_i Z_i psi Z_i. Zero-weight terms are dropped.
inline MixedState prep_channel(const StateVector& psi, double p) {
    if (!(p >= 0 && p <= 1)) throw domain_error("p outside [0, 1]");
    std::vector<std::pair<double, StateVector>> terms;
    if (p > 0) terms.emplace_back(p, psi);
    if (p < 1) {
        const double w = (1 - p) / psi.n;
        for (int i = 0; i < psi.n; ++i) {
            StateVector z = psi;
            apply(z, gate::Phase{i, std::numbers::pi});
            terms.emplace_back(w, std::move(z));
        }
    }
    return {psi.n, std::move(terms)};
}

/// Flips every bit independently with probability 1-q.
inline std::vector<double> readout_channel(std::vector<double> probs, int n, double q) {
    if (!(q >= 0 && q <= 1)) throw domain_error("q outside [0, 1]");
    if (probs.size() != (size_t{1} << n)) throw size_error("distribution length does not match 2^n");
    if (q == 1.0) return probs;
    std::vector<double> next(probs.size());
    for (int i = 0; i < n; ++i) {
        const uint64_t m = qubit_mask(n, i);
        for (uint64_t b = 0; b < probs.size(); ++b) next[b] = q * probs[b] + (1 - q) * probs[b ^ m];
        probs.swap(next);
    }
    return probs;
}

/// c_id * P_eps * c_aux, the Clifford actually applied when the record
/// reports id and the hardware displaces the phase by eps.
inline Mat2 imperfect_clifford(int id, int aux, double eps) {
    Mat2 pe = Mat2::Identity();
    pe(1, 1) = std::polar(1.0, eps);
    return clifford_element(id) * pe * clifford_element(aux);
}

/// Outcome distribution after the local rotation word (with optional hidden
/// aux word and phase eps) and readout flips.
inline std::vector<double> measured_distribution(const MixedState& rho, const CliffordWord& word,
                                                 const CliffordWord* aux = nullptr, double eps = 0.0,
                                                 double q = 1.0) {
    check_word(word, rho.n);
    if (aux) check_word(*aux, rho.n);
    std::vector<Mat2> u(static_cast<size_t>(rho.n));
    for (int i = 0; i < rho.n; ++i) {
        const size_t k = static_cast<size_t>(i);
        u[k] = aux ? imperfect_clifford(word[k], (*aux)[k], eps) : clifford_element(word[k]);
    }
    std::vector<double> probs(rho.dim(), 0.0);
    for (const auto& [w, s] : rho.terms) {
        StateVector r = s;
        for (int i = 0; i < rho.n; ++i) apply_1q(r, i, u[static_cast<size_t>(i)]);
        for (size_t b = 0; b < probs.size(); ++b) probs[b] += w * std::norm(r.amp[b]);
    }
    return readout_channel(std::move(probs), rho.n, q);
}

}  // namespace magicrm

#endif
