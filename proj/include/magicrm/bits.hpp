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

#ifndef MAGICRM_BITS_HPP
#define MAGICRM_BITS_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace magicrm {

// Bit order used everywhere: qubit i is bit (n-1-i) of a basis index, so the
// index read as an n-character string is qubit 0 first.

inline constexpr int kMaxQubits = 12;

inline constexpr uint64_t qubit_mask(int n, int qubit) { return uint64_t{1} << (n - 1 - qubit); }

inline int popcount(uint64_t x) { return std::popcount(x); }

inline void check_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw size_error("qubit count " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxQubits) + "]");
    }
}

inline std::string to_bitstring(uint64_t index, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if (index & qubit_mask(n, i)) s[static_cast<size_t>(i)] = '1';
    }
    return s;
}

inline uint64_t parse_bitstring(std::string_view s, int n) {
    if (static_cast<int>(s.size()) != n) {
        throw data_error("bitstring '" + std::string(s) + "' has length " + std::to_string(s.size()) +
                         ", expected " + std::to_string(n));
    }
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
        char c = s[static_cast<size_t>(i)];
        if (c == '1') {
            v |= qubit_mask(n, i);
        } else if (c != '0') {
            throw data_error("bitstring '" + std::string(s) + "' contains a character other than 0/1");
        }
    }
    return v;
}

/// In-place Walsh-Hadamard transform (unnormalized) of a length 2^k array.
template <class Vec>
void walsh_hadamard(Vec& v) {
    const size_t len = v.size();
    for (size_t h = 1; h < len; h <<= 1) {
        for (size_t i = 0; i < len; i += 2 * h) {
            for (size_t j = i; j < i + h; ++j) {
                auto a = v[j];
                auto b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace magicrm

#endif
