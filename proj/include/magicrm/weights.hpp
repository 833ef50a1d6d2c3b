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

#ifndef MAGICRM_WEIGHTS_HPP
#define MAGICRM_WEIGHTS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bits.hpp"

namespace magicrm {

enum class Quantity { purity, stab_purity };

/// Weight of an outcome pair (order 2) or quadruple (order 4) given as basis
/// indices over n qubits.
///   order 4: (-2)^{-h}, h = weight of s1^s2^s3^s4
///   order 2: 2^n (-2)^{-D}, D = Hamming distance
/// The 2^n factor makes the pair weight the diagonal of the per-qubit
/// operator 1/2 + 3/2 Z(x)Z; without it the purity of |0> comes out 1/2.
inline double correlation_weight(int order, std::span<const uint64_t> strings, int n) {
    check_qubits(n);
    if (order == 4) {
        if (strings.size() != 4) throw domain_error("order 4 needs four outcomes");
        const int h = popcount(strings[0] ^ strings[1] ^ strings[2] ^ strings[3]);
        return std::pow(-0.5, h);
    }
    if (order == 2) {
        if (strings.size() != 2) throw domain_error("order 2 needs two outcomes");
        const int dist = popcount(strings[0] ^ strings[1]);
        return std::ldexp(1.0, n) * std::pow(-0.5, dist);
    }
    throw domain_error("correlation order must be 2 or 4");
}

inline double correlation_weight(int order, const std::vector<std::string>& strings) {
    if (strings.empty()) throw domain_error("no outcomes");
    const int n = static_cast<int>(strings.front().size());
    std::vector<uint64_t> idx;
    for (const auto& s : strings) {
        if (static_cast<int>(s.size()) != n) throw domain_error("outcome strings differ in length");
        idx.push_back(parse_bitstring(s, n));
    }
    return correlation_weight(order, idx, n);
}

}  // namespace magicrm

#endif
