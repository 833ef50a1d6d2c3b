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

#ifndef MAGICRM_STATEVECTOR_HPP
#define MAGICRM_STATEVECTOR_HPP

#include <cmath>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "clifford.hpp"

namespace magicrm {

struct StateVector {
    int n = 0;
    std::vector<cplx> amp;

    StateVector() = default;
    StateVector(int n_qubits, std::vector<cplx> amplitudes) : n(n_qubits), amp(std::move(amplitudes)) {
        check_qubits(n);
        if (amp.size() != dim()) throw size_error("amplitude count does not match 2^n");
    }

    size_t dim() const { return size_t{1} << n; }

    double norm2() const {
        double s = 0;
        for (const auto& a : amp) s += std::norm(a);
        return s;
    }
};

inline StateVector zero_state(int n) {
    check_qubits(n);
    std::vector<cplx> a(size_t{1} << n);
    a[0] = 1;
    return {n, std::move(a)};
}

/// (|0> + e^{i theta}|1>)/sqrt(2)
inline StateVector ptheta_state(double theta) {
    const double r = 1.0 / std::sqrt(2.0);
    return {1, {cplx(r, 0), r * std::polar(1.0, theta)}};
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<cplx> out(a.dim() * b.dim());
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a.amp[i] * b.amp[j];
    }
    return {a.n + b.n, std::move(out)};
}

inline double inner_abs2(const StateVector& a, const StateVector& b) {
    cplx s = 0;
    for (size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return std::norm(s);
}

/// Convex mixture of pure states.
struct MixedState {
    int n = 0;
    std::vector<std::pair<double, StateVector>> terms;

    MixedState() = default;
    MixedState(const StateVector& s) : n(s.n), terms{{1.0, s}} {}  // NOLINT: implicit by design
    MixedState(int n_qubits, std::vector<std::pair<double, StateVector>> t) : n(n_qubits), terms(std::move(t)) {
        validate();
    }

    void validate() const {
        check_qubits(n);
        double total = 0;
        for (const auto& [w, s] : terms) {
            if (w < 0) throw domain_error("negative mixture weight");
            if (s.n != n) throw size_error("mixture term qubit count differs");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-10) throw domain_error("mixture weights do not sum to 1");
    }

    size_t dim() const { return size_t{1} << n; }
};

namespace gate {
struct H {
    int q;
};
/// diag(1, e^{i angle}); angle pi/4 is T.
struct Phase {
    int q;
    double angle;
};
struct CX {
    int control;
    int target;
};
struct Clifford {
    int q;
    int id;
};
}  // namespace gate

using Gate = std::variant<gate::H, gate::Phase, gate::CX, gate::Clifford>;

struct Circuit {
    int n = 0;
    std::vector<Gate> gates;

    void validate() const {
        check_qubits(n);
        auto in_range = [&](int q) {
            if (q < 0 || q >= n) throw domain_error("gate qubit index out of range");
        };
        for (const auto& g : gates) {
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, gate::CX>) {
                        in_range(x.control);
                        in_range(x.target);
                        if (x.control == x.target) throw domain_error("CX control equals target");
                    } else if constexpr (std::is_same_v<T, gate::Clifford>) {
                        in_range(x.q);
                        check_clifford_id(x.id);
                    } else {
                        in_range(x.q);
                    }
                },
                g);
        }
    }
};

inline void apply_1q(StateVector& s, int q, const Mat2& u) {
    const uint64_t m = qubit_mask(s.n, q);
    for (uint64_t b = 0; b < s.dim(); ++b) {
        if (b & m) continue;
        cplx a0 = s.amp[b];
        cplx a1 = s.amp[b | m];
        s.amp[b] = u(0, 0) * a0 + u(0, 1) * a1;
        s.amp[b | m] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

inline void apply(StateVector& s, const Gate& g) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, gate::H>) {
                const double r = 1.0 / std::sqrt(2.0);
                Mat2 h;
                h << r, r, r, -r;
                apply_1q(s, x.q, h);
            } else if constexpr (std::is_same_v<T, gate::Phase>) {
                const uint64_t m = qubit_mask(s.n, x.q);
                const cplx ph = std::polar(1.0, x.angle);
                for (uint64_t b = 0; b < s.dim(); ++b) {
                    if (b & m) s.amp[b] *= ph;
                }
            } else if constexpr (std::is_same_v<T, gate::CX>) {
                const uint64_t c = qubit_mask(s.n, x.control);
                const uint64_t t = qubit_mask(s.n, x.target);
                for (uint64_t b = 0; b < s.dim(); ++b) {
                    if ((b & c) && !(b & t)) std::swap(s.amp[b], s.amp[b | t]);
                }
            } else {
                apply_1q(s, x.q, clifford_element(x.id));
            }
        },
        g);
}

inline StateVector run(const Circuit& c, StateVector s) {
    c.validate();
    if (s.n != c.n) throw size_error("circuit and state qubit counts differ");
    for (const auto& g : c.gates) apply(s, g);
    return s;
}

/// T-gate split (first layer, second layer) for t magic seeds on n qubits.
inline std::pair<int, int> gamma_split(int n, int t) {
    if (n < 2) throw size_error("gamma states need n >= 2");
    if (t < 1 || t > 2 * n - 1) {
        throw domain_error("t=" + std::to_string(t) + " outside [1, " + std::to_string(2 * n - 1) + "]");
    }
    if (t == 1) return {0, 1};
    if (t <= n + 1) return {t - 1, 1};
    return {n, t - n};
}

/// H layer, T on the first n1 qubits, CX ladder down, T on the last n2
/// qubits, CX ladder back up.
inline Circuit gamma_circuit(int n, int t) {
    auto [n1, n2] = gamma_split(n, t);
    const double tq = std::numbers::pi / 4;
    Circuit c{n, {}};
    for (int q = 0; q < n; ++q) c.gates.push_back(gate::H{q});
    for (int q = 0; q < n1; ++q) c.gates.push_back(gate::Phase{q, tq});
    for (int q = 0; q + 1 < n; ++q) c.gates.push_back(gate::CX{q, q + 1});
    for (int q = n - n2; q < n; ++q) c.gates.push_back(gate::Phase{q, tq});
    for (int q = n - 2; q >= 0; --q) c.gates.push_back(gate::CX{q, q + 1});
    return c;
}

inline StateVector gamma_state(int n, int t) { return run(gamma_circuit(n, t), zero_state(n)); }

inline StateVector apply_local_cliffords(StateVector s, const CliffordWord& word) {
    check_word(word, s.n);
    for (int q = 0; q < s.n; ++q) {
        if (word[static_cast<size_t>(q)] != 0) apply_1q(s, q, clifford_element(word[static_cast<size_t>(q)]));
    }
    return s;
}

inline std::vector<double> outcome_distribution(const StateVector& s) {
    std::vector<double> p(s.dim());
    for (size_t b = 0; b < s.dim(); ++b) p[b] = std::norm(s.amp[b]);
    return p;
}

}  // namespace magicrm

#endif
