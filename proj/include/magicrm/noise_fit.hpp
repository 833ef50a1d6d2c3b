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

#ifndef MAGICRM_NOISE_FIT_HPP
#define MAGICRM_NOISE_FIT_HPP

#include <cmath>
#include <functional>
#include <numbers>

#include "estimator.hpp"
#include "noise.hpp"

namespace magicrm {

struct NoiseFit {
    double p = 1, q = 1, epsilon = 0;
    double dp = 0, dq = 0, depsilon = 0;
    EstimateReport zero;    // estimate on the |0>^n records
    EstimateReport target;  // estimate on the target-state records
};

namespace detail {

// |f'(x)| * dx by central differences, falling back to one side near a
// feasibility edge.
inline double propagate(const std::function<double(double)>& f, double x, double dx) {
    if (!(dx > 0)) return 0;
    const double h = std::max(1e-7, 1e-4 * std::abs(x));
    double hi, lo, span;
    try {
        hi = f(x + h);
        span = h;
    } catch (const infeasible_error&) {
        hi = f(x);
        span = 0;
    }
    try {
        lo = f(x - h);
        span += h;
    } catch (const infeasible_error&) {
        lo = f(x);
    }
    if (span == 0) return 0;
    return std::abs((hi - lo) / span) * dx;
}

// Estimates past a physical edge by at most 3 standard errors sit on the edge.
inline double clamp_to_edge(double x, double dx, double lo, double hi) {
    const double slack = 3 * dx;
    if (x > hi && x <= hi + slack) return hi;
    if (x < lo && x >= lo - slack) return lo;
    return x;
}

}  // namespace detail

/// q from the |0>^n purity, eps from the |0>^n stabilizer purity, then p from
/// the target-state purity (readout-aware).
inline NoiseFit fit_noise(const ExperimentData& zero_records, const ExperimentData& target_records,
                          const StateVector& target_state, Method method = Method::u_statistic) {
    if (target_state.n != target_records.n) throw data_error("target records and target state differ in n");
    const int n0 = zero_records.n;
    NoiseFit fit;
    fit.zero = estimate(zero_records, method);
    fit.target = estimate(target_records, method);

    const double p0 = detail::clamp_to_edge(fit.zero.P, fit.zero.dP, std::ldexp(1.0, -n0), 1.0);
    fit.q = solve_q(p0, n0);
    fit.dq = detail::propagate([&](double x) { return solve_q(x, n0); }, p0, fit.zero.dP);

    const double w0 = detail::clamp_to_edge(fit.zero.W, fit.zero.dW, zero_state_stab_purity(fit.q, std::numbers::pi / 4, n0),
                                            zero_state_stab_purity(fit.q, 0.0, n0));
    fit.epsilon = solve_epsilon(w0, fit.q, n0);
    const double de_w = detail::propagate([&](double x) { return solve_epsilon(x, fit.q, n0); }, w0, fit.zero.dW);
    const double de_q = detail::propagate([&](double x) { return solve_epsilon(w0, x, n0); }, fit.q, fit.dq);
    fit.depsilon = std::hypot(de_w, de_q);

    const double pt = detail::clamp_to_edge(fit.target.P, fit.target.dP, 0.0, prep_purity_quadratic(target_state, fit.q)(1.0));
    fit.p = solve_p(pt, target_state, fit.q);
    const double dp_p = detail::propagate([&](double x) { return solve_p(x, target_state, fit.q); }, pt, fit.target.dP);
    const double dp_q = detail::propagate([&](double x) { return solve_p(pt, target_state, x); }, fit.q,
                                          fit.dq);
    fit.dp = std::hypot(dp_p, dp_q);
    return fit;
}

}  // namespace magicrm

#endif
