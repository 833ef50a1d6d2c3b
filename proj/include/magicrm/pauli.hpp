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

#ifndef MAGICRM_PAULI_HPP
#define MAGICRM_PAULI_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "channels.hpp"
#include "parallel.hpp"
#include "statevector.hpp"
#include "weights.hpp"

namespace magicrm {

// Pauli strings are indexed base 4 with qubit 0 as the most significant
// digit; digits 0=I, 1=X, 2=Y, 3=Z.

inline size_t pauli_count(int n) { return size_t{1} << (2 * n); }

inline int pauli_digit(size_t index, int n, int qubit) {
    return static_cast<int>((index >> (2 * (n - 1 - qubit))) & 3u);
}

inline size_t pauli_index(std::string_view label) {
    size_t idx = 0;
    for (char c : label) {
        int d;
        switch (c) {
            case 'I': d = 0; break;
            case 'X': d = 1; break;
            case 'Y': d = 2; break;
            case 'Z': d = 3; break;
            default: throw domain_error("bad Pauli letter '" + std::string(1, c) + "'");
        }
        idx = idx * 4 + static_cast<size_t>(d);
    }
    return idx;
}

inline std::string pauli_label(size_t index, int n) {
    std::string s(static_cast<size_t>(n), 'I');
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = "IXYZ"[pauli_digit(index, n, i)];
    return s;
}

/// Number of non-identity factors.
inline int pauli_weight(size_t index, int n) {
    int w = 0;
    for (int i = 0; i < n; ++i) w += pauli_digit(index, n, i) != 0;
    return w;
}

/// Number of X or Y factors.
inline int pauli_flip_count(size_t index, int n) {
    int w = 0;
    for (int i = 0; i < n; ++i) {
        int d = pauli_digit(index, n, i);
        w += d == 1 || d == 2;
    }
    return w;
}

/// Whether two Pauli strings commute.
inline bool paulis_commute(size_t a, size_t b, int n) {
    int anti = 0;
    for (int i = 0; i < n; ++i) {
        int x = pauli_digit(a, n, i), y = pauli_digit(b, n, i);
        anti += (x != 0 && y != 0 && x != y);
    }
    return anti % 2 == 0;
}

struct PauliTable {
    int n = 0;
    std::vector<double> values;  // tr(P rho)

    double operator[](size_t i) const { return values[i]; }
    double at(std::string_view label) const {
        if (static_cast<int>(label.size()) != n) throw size_error("Pauli label length differs from n");
        return values[pauli_index(label)];
    }
    size_t dim() const { return size_t{1} << n; }
};

namespace detail {

inline size_t pauli_index_from_masks(uint64_t x, uint64_t z, int n) {
    static constexpr int digit[2][2] = {{0, 3}, {1, 2}};  // [x][z]
    size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const uint64_t m = qubit_mask(n, i);
        idx = idx * 4 + static_cast<size_t>(digit[(x & m) != 0][(z & m) != 0]);
    }
    return idx;
}

inline void accumulate_pauli_table(const StateVector& s, double weight, std::vector<double>& out) {
    const size_t d = s.dim();
    std::vector<cplx> f(d);
    static const cplx ipow[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
    for (uint64_t x = 0; x < d; ++x) {
        for (uint64_t b = 0; b < d; ++b) f[b] = std::conj(s.amp[b ^ x]) * s.amp[b];
        walsh_hadamard(f);
        for (uint64_t z = 0; z < d; ++z) {
            const double v = (ipow[popcount(x & z) & 3] * f[z]).real();
            out[pauli_index_from_masks(x, z, s.n)] += weight * v;
        }
    }
}

}  // namespace detail

inline PauliTable pauli_table(const MixedState& rho) {
    rho.validate();
    PauliTable t{rho.n, std::vector<double>(pauli_count(rho.n), 0.0)};
    for (const auto& [w, s] : rho.terms) {
        if (w > 0) detail::accumulate_pauli_table(s, w, t.values);
    }
    return t;
}

inline PauliTable pauli_table(const StateVector& s) { return pauli_table(MixedState(s)); }

inline double purity_exact(const MixedState& rho) {
    double pur = 0;
    for (const auto& [wi, si] : rho.terms) {
        for (const auto& [wj, sj] : rho.terms) pur += wi * wj * inner_abs2(si, sj);
    }
    return pur;
}

inline double purity_exact(const StateVector& s) {
    const double n2 = s.norm2();
    return n2 * n2;
}

/// Purity read off a Pauli table: d^-1 sum_P tr^2(P rho).
inline double purity_from_table(const PauliTable& t) {
    double s = 0;
    for (double v : t.values) s += v * v;
    return s / static_cast<double>(t.dim());
}

/// d^-2 sum_P tr^4(P rho).
inline double stab_purity_exact(const PauliTable& t) {
    double s = 0;
    for (double v : t.values) s += v * v * v * v;
    const double d = static_cast<double>(t.dim());
    return s / (d * d);
}

inline double stab_purity_exact(const MixedState& rho) { return stab_purity_exact(pauli_table(rho)); }
inline double stab_purity_exact(const StateVector& s) { return stab_purity_exact(pauli_table(s)); }

/// tr^2(P rho) / (d Pur): a probability distribution over Pauli strings.
inline std::vector<double> xi_distribution(const PauliTable& t) {
    double total = 0;
    for (double v : t.values) total += v * v;
    std::vector<double> xi(t.values.size());
    for (size_t i = 0; i < xi.size(); ++i) xi[i] = t.values[i] * t.values[i] / total;
    return xi;
}

inline std::vector<double> xi_distribution(const StateVector& s) { return xi_distribution(pauli_table(s)); }

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

/// Stabilizer Renyi entropy of order alpha (log base 2). alpha = 1 is the
/// Shannon limit, alpha = infinity the min-entropy, alpha = 0 the log support.
inline double stabilizer_renyi(const PauliTable& t, double alpha) {
    if (!(alpha >= 0)) throw domain_error("alpha must be >= 0");
    const auto xi = xi_distribution(t);
    double entropy;
    if (alpha == 0) {
        size_t support = 0;
        for (double x : xi) support += x > 1e-14;
        entropy = std::log2(static_cast<double>(support));
    } else if (alpha == 1) {
        entropy = 0;
        for (double x : xi) {
            if (x > 0) entropy -= x * std::log2(x);
        }
    } else if (std::isinf(alpha)) {
        entropy = -std::log2(*std::max_element(xi.begin(), xi.end()));
    } else {
        double s = 0;
        for (double x : xi) {
            if (x > 0) s += std::pow(x, alpha);
        }
        entropy = std::log2(s) / (1 - alpha);
    }
    return entropy - std::log2(purity_from_table(t)) - t.n;
}

inline double stabilizer_renyi(const MixedState& rho, double alpha) { return stabilizer_renyi(pauli_table(rho), alpha); }
inline double stabilizer_renyi(const StateVector& s, double alpha) { return stabilizer_renyi(pauli_table(s), alpha); }

/// max over P != I of |tr(P psi)|.
inline double max_offidentity_pauli(const StateVector& s) {
    const auto t = pauli_table(s);
    double m = 0;
    for (size_t i = 1; i < t.values.size(); ++i) m = std::max(m, std::abs(t.values[i]));
    return m;
}

inline StateVector haar_random_state(int n, uint64_t seed) {
    check_qubits(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> a(size_t{1} << n);
    double norm = 0;
    for (auto& z : a) {
        z = cplx(g(rng), g(rng));
        norm += std::norm(z);
    }
    for (auto& z : a) z /= std::sqrt(norm);
    return {n, std::move(a)};
}

/// Exact protocol average over all 24^n local Clifford words using exact
/// outcome probabilities and the direct pair/quadruple weight sums. Optional
/// noise: preparation p, readout q, and phase eps (then the hidden second
/// Clifford is enumerated too).
inline double exact_protocol_value(const MixedState& input, Quantity quantity, const NoiseParams& noise = {}) {
    noise.validate();
    const int n = input.n;
    const bool with_eps = noise.epsilon != 0.0;
    if (n > 3 || (with_eps && n > 2)) {
        throw size_error("exact protocol enumeration limited to n <= 3 (n <= 2 with eps)");
    }
    MixedState rho = input;
    if (noise.p < 1.0) {
        std::vector<std::pair<double, StateVector>> terms;
        for (const auto& [w, s] : input.terms) {
            for (auto& [w2, s2] : prep_channel(s, noise.p).terms) terms.emplace_back(w * w2, std::move(s2));
        }
        rho = MixedState(n, std::move(terms));
    }

    const size_t d = rho.dim();
    std::vector<double> w4(static_cast<size_t>(n) + 1), w2(static_cast<size_t>(n) + 1);
    for (int h = 0; h <= n; ++h) {
        const uint64_t four[4] = {0, 0, 0, (uint64_t{1} << h) - 1};
        const uint64_t two[2] = {0, (uint64_t{1} << h) - 1};
        w4[static_cast<size_t>(h)] = correlation_weight(4, four, n);
        w2[static_cast<size_t>(h)] = correlation_weight(2, two, n);
    }
    auto record_value = [&](const std::vector<double>& p) {
        double v = 0;
        if (quantity == Quantity::purity) {
            for (uint64_t a = 0; a < d; ++a)
                for (uint64_t b = 0; b < d; ++b) v += w2[static_cast<size_t>(popcount(a ^ b))] * p[a] * p[b];
        } else {
            for (uint64_t a = 0; a < d; ++a)
                for (uint64_t b = 0; b < d; ++b)
                    for (uint64_t c = 0; c < d; ++c) {
                        const double pabc = p[a] * p[b] * p[c];
                        for (uint64_t e = 0; e < d; ++e)
                            v += w4[static_cast<size_t>(popcount(a ^ b ^ c ^ e))] * pabc * p[e];
                    }
        }
        return v;
    };

    size_t words = 1;
    for (int i = 0; i < n; ++i) words *= kCliffordCount;
    const size_t aux_words = with_eps ? words : 1;
    const size_t total = words * aux_words;
    auto decode = [n](size_t k) {
        CliffordWord w(static_cast<size_t>(n));
        for (int i = n - 1; i >= 0; --i) {
            w[static_cast<size_t>(i)] = static_cast<int>(k % kCliffordCount);
            k /= kCliffordCount;
        }
        return w;
    };
    std::vector<double> values(total);
    parallel_for(total, [&](size_t k) {
        const CliffordWord word = decode(k / aux_words);
        std::vector<double> p;
        if (with_eps) {
            const CliffordWord aux = decode(k % aux_words);
            p = measured_distribution(rho, word, &aux, noise.epsilon, noise.q);
        } else {
            p = measured_distribution(rho, word, nullptr, 0.0, noise.q);
        }
        values[k] = record_value(p);
    });
    double sum = 0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(total);
}

inline double exact_protocol_value(const StateVector& s, Quantity quantity, const NoiseParams& noise = {}) {
    return exact_protocol_value(MixedState(s), quantity, noise);
}

}  // namespace magicrm

#endif
