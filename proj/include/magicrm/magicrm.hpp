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

#ifndef MAGICRM_MAGICRM_HPP
#define MAGICRM_MAGICRM_HPP

#include "bits.hpp"
#include "calibration.hpp"
#include "channels.hpp"
#include "clifford.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "noise.hpp"
#include "noise_fit.hpp"
#include "pauli.hpp"
#include "sampling.hpp"
#include "simulate.hpp"
#include "statevector.hpp"
#include "weights.hpp"

#endif
