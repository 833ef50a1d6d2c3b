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

#ifndef MAGICRM_ERRORS_HPP
#define MAGICRM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magicrm {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Qubit counts, ids or resource guards out of range.
struct size_error : error {
    using error::error;
};

/// Arguments outside an operation's domain.
struct domain_error : error {
    using error::error;
};

/// Measured inputs admit no real solution of a noise-model inversion.
struct infeasible_error : error {
    using error::error;
};

/// Malformed or inconsistent shot data.
struct data_error : error {
    using error::error;
};

}  // namespace magicrm

#endif
