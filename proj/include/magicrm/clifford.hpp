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

#ifndef MAGICRM_CLIFFORD_HPP
#define MAGICRM_CLIFFORD_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <deque>
#include <vector>

#include "errors.hpp"

namespace magicrm {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

inline constexpr int kCliffordCount = 24;

/// One id in [0, 24) per qubit.
using CliffordWord = std::vector<int>;

namespace detail {

// Remove the global phase: first entry with nonzero modulus made real positive.
inline Mat2 canonical_phase(const Mat2& u) {
    for (int k = 0; k < 4; ++k) {
        cplx z = u(k / 2, k % 2);
        if (std::abs(z) > 1e-9) return u * (std::abs(z) / z);
    }
    return u;
}

inline std::array<long long, 8> grid_key(const Mat2& u) {
    std::array<long long, 8> key{};
    for (int k = 0; k < 4; ++k) {
        cplx z = u(k / 2, k % 2);
        key[2 * k] = std::llround(z.real() * 1e9);
        key[2 * k + 1] = std::llround(z.imag() * 1e9);
    }
    return key;
}

inline std::array<Mat2, kCliffordCount> build_clifford_table() {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 h;
    h << r, r, r, -r;
    Mat2 s;
    s << 1, 0, 0, cplx(0, 1);

    std::vector<Mat2> found{Mat2::Identity()};
    std::vector<std::array<long long, 8>> keys{grid_key(Mat2::Identity())};
    std::deque<Mat2> frontier{Mat2::Identity()};
    while (!frontier.empty()) {
        Mat2 u = frontier.front();
        frontier.pop_front();
        for (const Mat2& g : {h, s}) {
            Mat2 v = canonical_phase(g * u);
            auto k = grid_key(v);
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                keys.push_back(k);
                found.push_back(v);
                frontier.push_back(v);
            }
        }
    }
    if (found.size() != kCliffordCount) throw error("clifford closure did not produce 24 elements");

    std::vector<size_t> order(found.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return keys[a] > keys[b]; });
    std::array<Mat2, kCliffordCount> table;
    for (size_t i = 0; i < order.size(); ++i) table[i] = found[order[i]];
    return table;
}

}  // namespace detail

/// The single-qubit Clifford group modulo phase, ids sorted by entries
/// (descending), which puts the identity at id 0.
inline const std::array<Mat2, kCliffordCount>& clifford_table() {
    static const std::array<Mat2, kCliffordCount> table = detail::build_clifford_table();
    return table;
}

inline void check_clifford_id(int id) {
    if (id < 0 || id >= kCliffordCount) {
        throw size_error("clifford id " + std::to_string(id) + " outside [0, 24)");
    }
}

inline const Mat2& clifford_element(int id) {
    check_clifford_id(id);
    return clifford_table()[static_cast<size_t>(id)];
}

/// Id of a single-qubit unitary, equal to a table entry up to global phase.
inline int clifford_id_of(const Mat2& u) {
    const auto key = detail::grid_key(detail::canonical_phase(u));
    const auto& table = clifford_table();
    for (int i = 0; i < kCliffordCount; ++i) {
        if (detail::grid_key(table[static_cast<size_t>(i)]) == key) return i;
    }
    throw domain_error("matrix is not a single-qubit Clifford");
}

/// Id of clifford_element(a) * clifford_element(b).
inline int clifford_product(int a, int b) { return clifford_id_of(clifford_element(a) * clifford_element(b)); }

inline int hadamard_id() {
    static const int id = [] {
        const double r = 1.0 / std::sqrt(2.0);
        Mat2 h;
        h << r, r, r, -r;
        return clifford_id_of(h);
    }();
    return id;
}

inline int phase_s_id() {
    static const int id = [] {
        Mat2 s;
        s << 1, 0, 0, cplx(0, 1);
        return clifford_id_of(s);
    }();
    return id;
}

inline void check_word(const CliffordWord& word, int n) {
    if (static_cast<int>(word.size()) != n) {
        throw size_error("clifford word has " + std::to_string(word.size()) + " ids for " + std::to_string(n) +
                         " qubits");
    }
    for (int id : word) check_clifford_id(id);
}

}  // namespace magicrm

#endif
