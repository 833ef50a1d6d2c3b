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

#ifndef MAGICRM_NOISE_HPP
#define MAGICRM_NOISE_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "channels.hpp"
#include "pauli.hpp"

namespace magicrm {

/// Dense operator on k copies of one qubit (2^k x 2^k), copy 0 most significant.
using SmallOperator = Eigen::MatrixXcd;

inline Mat2 pauli_matrix(int digit) {
    Mat2 m;
    switch (digit) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw domain_error("Pauli digit outside 0..3");
    }
    return m;
}

inline SmallOperator kron(const SmallOperator& a, const SmallOperator& b) {
    SmallOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// P_{d0} (x) P_{d1} (x) ... on one qubit's copies.
inline SmallOperator copies_pauli(const std::vector<int>& digits) {
    SmallOperator out = SmallOperator::Identity(1, 1);
    for (int d : digits) out = kron(out, pauli_matrix(d));
    return out;
}

/// Permutation of k copies: the bit of copy j moves to copy perm[j].
inline SmallOperator permutation_operator(const std::vector<int>& perm) {
    const int k = static_cast<int>(perm.size());
    const Eigen::Index dim = Eigen::Index{1} << k;
    SmallOperator out = SmallOperator::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Eigen::Index target = 0;
        for (int j = 0; j < k; ++j) {
            const bool bit = (b >> (k - 1 - j)) & 1;
            if (bit) target |= Eigen::Index{1} << (k - 1 - perm[static_cast<size_t>(j)]);
        }
        out(target, b) = 1;
    }
    return out;
}

/// 1/4 sum_P P^{(x)4}: the one-qubit stabilizer projector factor.
inline SmallOperator q1_operator() {
    SmallOperator q = SmallOperator::Zero(16, 16);
    for (int d = 0; d < 4; ++d) q += copies_pauli({d, d, d, d});
    return q / 4.0;
}

/// Swap of two copies.
inline SmallOperator swap_operator() { return permutation_operator({1, 0}); }

/// Diagonal pair operator 1/2 + 3/2 Z(x)Z.
inline SmallOperator o2_operator() {
    return 0.5 * SmallOperator::Identity(4, 4) + 1.5 * copies_pauli({3, 3});
}

/// Diagonal quadruple operator 1/4 + 3/4 Z^{(x)4}.
inline SmallOperator o4_operator() {
    return 0.25 * SmallOperator::Identity(16, 16) + 0.75 * copies_pauli({3, 3, 3, 3});
}

/// Sum over the permutations of 4 copies with the given cycle type:
/// "2" transpositions, "4" four-cycles, "22" double transpositions.
inline SmallOperator class_sum(const std::string& cycle_type) {
    SmallOperator out = SmallOperator::Zero(16, 16);
    std::vector<int> perm{0, 1, 2, 3};
    do {
        int fixed = 0;
        std::vector<bool> seen(4, false);
        std::vector<int> lengths;
        for (int i = 0; i < 4; ++i) {
            if (seen[static_cast<size_t>(i)]) continue;
            int len = 0;
            for (int j = i; !seen[static_cast<size_t>(j)]; j = perm[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = true;
                ++len;
            }
            if (len == 1) ++fixed;
            else lengths.push_back(len);
        }
        std::string type;
        for (int l : lengths) type += std::to_string(l);
        if (type == cycle_type) out += permutation_operator(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Phase-displaced twirled projector:
/// (5+cos4e)/6 Q1 - sin^2(2e)/24 Q1 (T2 + T4) + sin^2(2e)/12 (1 + T22).
inline SmallOperator q1_epsilon(double eps) {
    static const SmallOperator q1 = q1_operator();
    static const SmallOperator t2 = class_sum("2");
    static const SmallOperator t4 = class_sum("4");
    static const SmallOperator t22 = class_sum("22");
    const double s2 = std::pow(std::sin(2 * eps), 2);
    return (5 + std::cos(4 * eps)) / 6 * q1 - s2 / 24 * q1 * (t2 + t4) +
           s2 / 12 * (SmallOperator::Identity(16, 16) + t22);
}

/// Per-qubit four-copy operator seen by the protocol with readout fidelity q.
inline SmallOperator q1_measured(double eps, double q) {
    const double lambda = std::pow(2 * q - 1, 4);
    return lambda * q1_epsilon(eps) + (1 - lambda) / 4 * SmallOperator::Identity(16, 16);
}

inline constexpr int kMaxContractionQubits = 5;

/// tr(O^{(x)n} rho^{(x)4}) for a 16x16 one-qubit four-copy operator O.
/// O is expanded in the four-copy Pauli basis and contracted with the Pauli
/// table of rho qubit by qubit.
inline double four_copy_expectation(const PauliTable& t, const SmallOperator& op) {
    if (op.rows() != 16 || op.cols() != 16) throw size_error("four-copy operator must be 16x16");
    if (t.n > kMaxContractionQubits) throw size_error("four-copy contraction limited to n <= 5");
    struct Term {
        std::array<size_t, 4> d;
        double c;
    };
    std::vector<Term> terms;
    for (int k = 0; k < 256; ++k) {
        std::vector<int> digits{k >> 6, (k >> 4) & 3, (k >> 2) & 3, k & 3};
        const cplx c = (op * copies_pauli(digits)).trace() / 16.0;
        if (std::abs(c) > 1e-13) {
            terms.push_back({{static_cast<size_t>(digits[0]), static_cast<size_t>(digits[1]),
                              static_cast<size_t>(digits[2]), static_cast<size_t>(digits[3])},
                             c.real()});
        }
    }
    const int n = t.n;
    double total = 0;
    auto recurse = [&](auto&& self, int qubit, std::array<size_t, 4> idx, double coef) -> void {
        if (qubit == n) {
            total += coef * t.values[idx[0]] * t.values[idx[1]] * t.values[idx[2]] * t.values[idx[3]];
            return;
        }
        for (const auto& term : terms) {
            std::array<size_t, 4> next;
            for (int a = 0; a < 4; ++a) next[static_cast<size_t>(a)] = idx[static_cast<size_t>(a)] * 4 + term.d[static_cast<size_t>(a)];
            self(self, qubit + 1, next, coef * term.c);
        }
    };
    recurse(recurse, 0, {0, 0, 0, 0}, 1.0);
    return total;
}

/// Stabilizer purity seen through phase-displaced Cliffords (and readout q).
inline double w_epsilon(const MixedState& rho, double eps, double q = 1.0) {
    if (rho.n > kMaxContractionQubits) throw size_error("w_epsilon limited to n <= 5");
    return four_copy_expectation(pauli_table(rho), q1_measured(eps, q));
}

inline double w_epsilon(const StateVector& s, double eps, double q = 1.0) { return w_epsilon(MixedState(s), eps, q); }

/// One-qubit |0> value: (11 + cos 4e)/24.
inline double w_epsilon_zero(double eps) { return (11 + std::cos(4 * eps)) / 24; }

/// Purity seen by the protocol with readout q: 2^-n sum_P (2q-1)^{2|P|} tr^2(P rho).
inline double measured_purity(const PauliTable& t, double q) {
    const double f = (2 * q - 1) * (2 * q - 1);
    double s = 0;
    for (size_t i = 0; i < t.values.size(); ++i) s += std::pow(f, pauli_weight(i, t.n)) * t.values[i] * t.values[i];
    return s / static_cast<double>(t.dim());
}

/// Purity of the prep channel output from the two-term expansion
/// p^2 + (1-p)^2/n + 2p(1-p)Z/n, Z = sum_i <Z_i>^2. Exact only when the
/// <Z_i Z_j> (i != j) vanish, or for n = 1.
inline double prep_purity_closed_form(const StateVector& psi, double p) {
    const auto t = pauli_table(psi);
    const int n = psi.n;
    double z = 0;
    for (int i = 0; i < n; ++i) {
        std::string label(static_cast<size_t>(n), 'I');
        label[static_cast<size_t>(i)] = 'Z';
        z += t.at(label) * t.at(label);
    }
    return p * p + (1 - p) * (1 - p) / n + 2 * p * (1 - p) * z / n;
}

/// Prep-channel purity including the cross terms:
/// p^2 + 2p(1-p)Z/n + (1-p)^2/n^2 sum_{i,j} <Z_i Z_j>^2.
inline double prep_purity_exact_form(const StateVector& psi, double p) {
    const auto t = pauli_table(psi);
    const int n = psi.n;
    double z = 0, zz = 0;
    for (int i = 0; i < n; ++i) {
        std::string li(static_cast<size_t>(n), 'I');
        li[static_cast<size_t>(i)] = 'Z';
        z += t.at(li) * t.at(li);
        for (int j = 0; j < n; ++j) {
            std::string lij(static_cast<size_t>(n), 'I');
            lij[static_cast<size_t>(i)] = 'Z';
            lij[static_cast<size_t>(j)] = i == j ? 'I' : 'Z';
            zz += t.at(lij) * t.at(lij);
        }
    }
    return p * p + 2 * p * (1 - p) * z / n + (1 - p) * (1 - p) * zz / (n * n);
}

struct Quadratic {
    double a = 0, b = 0, c = 0;
    double operator()(double x) const { return (a * x + b) * x + c; }
};

/// Measured purity of prep_channel(psi, p) as a quadratic in p. Each Pauli
/// expectation scales by 1 - 2k(1-p)/n, k = number of X/Y factors.
inline Quadratic prep_purity_quadratic(const StateVector& psi, double q = 1.0) {
    const auto t = pauli_table(psi);
    const int n = psi.n;
    const double f2 = (2 * q - 1) * (2 * q - 1);
    Quadratic out;
    for (size_t i = 0; i < t.values.size(); ++i) {
        const double c = std::pow(f2, pauli_weight(i, n)) * t.values[i] * t.values[i];
        const double f = 2.0 * pauli_flip_count(i, n) / n;
        out.a += c * f * f;
        out.b += c * 2 * f * (1 - f);
        out.c += c * (1 - f) * (1 - f);
    }
    const double d = static_cast<double>(t.dim());
    out.a /= d;
    out.b /= d;
    out.c /= d;
    return out;
}

/// Preparation survival p reproducing the measured purity (larger root).
inline double solve_p(double p_exp, const StateVector& psi, double q = 1.0) {
    if (!(p_exp > 0 && p_exp <= 1 + 1e-12)) throw infeasible_error("measured purity outside (0, 1]");
    const Quadratic f = prep_purity_quadratic(psi, q);
    const double c = f.c - p_exp;
    double p;
    if (std::abs(f.a) < 1e-12) {
        if (std::abs(f.b) < 1e-12) throw infeasible_error("purity does not depend on p for this state");
        p = -c / f.b;
    } else {
        double disc = f.b * f.b - 4 * f.a * c;
        if (disc < -1e-12) throw infeasible_error("measured purity below the model's minimum");
        p = (-f.b + std::sqrt(std::max(disc, 0.0))) / (2 * f.a);
    }
    if (p < -1e-9 || p > 1 + 1e-9) throw infeasible_error("no p in [0, 1] reproduces the measured purity");
    return std::clamp(p, 0.0, 1.0);
}

/// p = (1 - Z + sqrt(n) sqrt(P(1-2Z+n) + Z^2/n - 1)) / (1 - 2Z + n), the
/// positive root of the two-term purity expansion.
inline double solve_p_closed_form(double p_exp, const StateVector& psi) {
    const auto t = pauli_table(psi);
    const int n = psi.n;
    double z = 0;
    for (int i = 0; i < n; ++i) {
        std::string label(static_cast<size_t>(n), 'I');
        label[static_cast<size_t>(i)] = 'Z';
        z += t.at(label) * t.at(label);
    }
    const double den = 1 - 2 * z + n;
    const double rad = p_exp * den + z * z / n - 1;
    if (rad < -1e-12) throw infeasible_error("measured purity below the model's minimum");
    if (std::abs(den) < 1e-12) throw infeasible_error("purity does not depend on p for this state");
    return (1 - z + std::sqrt(double(n)) * std::sqrt(std::max(rad, 0.0))) / den;
}

/// Readout fidelity from the measured purity of |0>^n.
inline double solve_q(double p_exp_zero, int n) {
    check_qubits(n);
    if (!(p_exp_zero > 0)) throw infeasible_error("measured purity must be positive");
    const double x = std::pow(p_exp_zero, 1.0 / n);
    const double r = 2 * x - 1;
    if (r < -1e-12) throw infeasible_error("purity of |0> below the readout model's minimum");
    if (x > 1 + 1e-12) throw infeasible_error("purity of |0> above 1");
    return 0.5 * (1 + std::sqrt(std::clamp(r, 0.0, 1.0)));
}

/// Phase displacement from the measured stabilizer purity of |0>^n, in [0, pi/4].
inline double solve_epsilon(double w_exp_zero, double q, int n) {
    check_qubits(n);
    if (!(w_exp_zero > 0)) throw infeasible_error("measured stabilizer purity must be positive");
    const double lambda = std::pow(2 * q - 1, 4);
    if (lambda < 1e-14) throw infeasible_error("q = 1/2 carries no information on eps");
    const double x = std::pow(w_exp_zero, 1.0 / n);
    const double arg = (-80 * std::pow(q, 4) + 160 * std::pow(q, 3) - 120 * q * q + 40 * q + 24 * x - 11) / lambda;
    if (arg > 1 + 1e-9 || arg < -1 - 1e-9) throw infeasible_error("stabilizer purity of |0> outside the model's range");
    return std::acos(std::clamp(arg, -1.0, 1.0)) / 4;
}

/// Forward model of the |0>^n stabilizer purity.
inline double zero_state_stab_purity(double q, double eps, int n) {
    const double per = std::pow(1 - 2 * q, 4) * w_epsilon_zero(eps) + 2 * (q * q * q * (1 - q) + std::pow(1 - q, 3) * q);
    return std::pow(per, n);
}

inline double g_factor(double eps, int n) { return std::pow((5 + std::cos(4 * eps)) / 6, n); }

struct NoisyPrediction {
    double w = 0;        // W(psi_p)
    double purity = 0;   // P(psi_p)
    double ratio = 0;    // W(psi_p) / P(psi_p)
    double w_eps = 0;    // W_eps(psi_p)
    double g = 1;
    double omega = 0;    // W_eps(psi_p) - g W(psi_p)
};

inline NoisyPrediction predict_noisy_observables(const StateVector& psi, double p, double eps) {
    if (psi.n > kMaxContractionQubits) throw size_error("prediction limited to n <= 5");
    const MixedState rho = prep_channel(psi, p);
    const auto t = pauli_table(rho);
    NoisyPrediction r;
    r.w = stab_purity_exact(t);
    r.purity = purity_from_table(t);
    r.ratio = r.w / r.purity;
    r.w_eps = four_copy_expectation(t, q1_epsilon(eps));
    r.g = g_factor(eps, psi.n);
    r.omega = r.w_eps - r.g * r.w;
    return r;
}

/// (W_exp - Omega) / g.
inline double corrected_w(double w_exp, const StateVector& psi, double p, double eps) {
    const auto pred = predict_noisy_observables(psi, p, eps);
    return (w_exp - pred.omega) / pred.g;
}

struct HaarChannelStats {
    double mean_purity = 0;     // <Pur(E(psi))>
    double mean_four_copy = 0;  // <tr(Q E(psi)^{(x)4})>
    double mean_w_pure = 0;     // <W(psi)> = 4/(d(d+3))
    double x = 0;
    double delta_m = 0;
    double s2 = 0;  // Renyi-2 entropy (bits) of the channel distribution
};

/// Haar averages for a Pauli channel sum_i q_i P_i . P_i given as
/// (Pauli label, probability) pairs. Repeated labels are merged.
inline HaarChannelStats haar_channel_stats(const std::vector<std::pair<std::string, double>>& channel, int n) {
    check_qubits(n);
    if (n > 4) throw size_error("haar_channel_stats limited to n <= 4");
    std::map<size_t, double> merged;
    double total = 0;
    for (const auto& [label, q] : channel) {
        if (static_cast<int>(label.size()) != n) throw domain_error("Pauli label length differs from n");
        if (!(q >= 0)) throw domain_error("negative channel probability");
        merged[pauli_index(label)] += q;
        total += q;
    }
    if (merged.empty() || std::abs(total - 1) > 1e-10) throw domain_error("channel probabilities must sum to 1");
    const double d = std::ldexp(1.0, n);
    HaarChannelStats r;
    double sq = 0;
    for (const auto& [k, q] : merged) sq += q * q;
    r.mean_purity = (d * sq + 1) / (d + 1);
    r.s2 = -std::log2(sq);
    for (size_t p = 0; p < pauli_count(n); ++p) {
        double s = 0;
        for (const auto& [k, q] : merged) s += paulis_commute(k, p, n) ? q : -q;
        r.x += s * s * s * s;
    }
    r.mean_four_copy = (d * d + 6 * d + 8 + 3 * r.x + 6 * r.x / d) / (d * (d + 1) * (d + 2) * (d + 3));
    r.mean_w_pure = 4 / (d * (d + 3));
    r.delta_m = -std::log2(r.mean_w_pure * r.mean_purity / r.mean_four_copy);
    return r;
}

}  // namespace magicrm

#endif
