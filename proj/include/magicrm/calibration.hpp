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

#ifndef MAGICRM_CALIBRATION_HPP
#define MAGICRM_CALIBRATION_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "estimator.hpp"
#include "parallel.hpp"
#include "simulate.hpp"

namespace magicrm {

struct GridCell {
    size_t n_u = 0;
    uint64_t n_m = 0;
    double mean_w = 0;
    double mean_p = 0;
    double delta = 0;  // mean |W - ref| / ref over trials
    size_t trials = 0;
};

enum class DeltaReference { ensemble_mean, oracle };

struct GridOptions {
    Method method = Method::plug_in;
    DeltaReference reference = DeltaReference::ensemble_mean;
    double oracle_w = 0;  // used with DeltaReference::oracle
    std::optional<NoiseParams> noise;
};

/// `trials` independent simulated experiments at one (N_U, N_M).
inline GridCell run_cell(const MixedState& state, size_t n_u, uint64_t n_m, size_t trials, uint64_t seed,
                         const GridOptions& opt = {}) {
    if (trials < 2) throw domain_error("trials must be >= 2");
    std::vector<EstimateReport> reports(trials);
    parallel_for(trials, [&](size_t k) {
        const auto data = simulate_experiment(state, stream_seed(seed, k), n_u, n_m, opt.noise);
        reports[k] = summarize(all_record_stats(data, opt.method), data.n, opt.method);
    });
    GridCell c;
    c.n_u = n_u;
    c.n_m = n_m;
    c.trials = trials;
    for (const auto& r : reports) {
        c.mean_w += r.W;
        c.mean_p += r.P;
    }
    c.mean_w /= static_cast<double>(trials);
    c.mean_p /= static_cast<double>(trials);
    const double ref = opt.reference == DeltaReference::oracle ? opt.oracle_w : c.mean_w;
    for (const auto& r : reports) c.delta += std::abs(r.W - ref);
    c.delta /= static_cast<double>(trials) * std::abs(ref);
    return c;
}

/// Cells in row-major order (N_U outer). Cell k uses stream k of the seed.
inline std::vector<GridCell> grid_search(const MixedState& state, const std::vector<size_t>& n_u_values,
                                         const std::vector<uint64_t>& n_m_values, size_t trials, uint64_t seed,
                                         const GridOptions& opt = {}) {
    if (trials < 2) throw domain_error("trials must be >= 2");
    std::vector<GridCell> cells(n_u_values.size() * n_m_values.size());
    for (size_t i = 0; i < n_u_values.size(); ++i) {
        for (size_t j = 0; j < n_m_values.size(); ++j) {
            const size_t k = i * n_m_values.size() + j;
            cells[k] = run_cell(state, n_u_values[i], n_m_values[j], trials, stream_seed(seed, k), opt);
        }
    }
    return cells;
}

/// Cheapest passing cell (delta < delta_threshold, |P - 1| < purity_threshold);
/// ties go to smaller N_U, then smaller N_M.
inline std::optional<GridCell> select_optimal(const std::vector<GridCell>& cells, double delta_threshold,
                                              double purity_threshold) {
    if (!(delta_threshold > 0 && delta_threshold < 1) || !(purity_threshold > 0 && purity_threshold < 1)) {
        throw domain_error("thresholds must lie in (0, 1)");
    }
    std::optional<GridCell> best;
    for (const auto& c : cells) {
        if (!(c.delta < delta_threshold) || !(std::abs(c.mean_p - 1) < purity_threshold)) continue;
        if (!best) {
            best = c;
            continue;
        }
        const auto key = [](const GridCell& x) {
            return std::make_tuple(static_cast<double>(x.n_u) * static_cast<double>(x.n_m), x.n_u, x.n_m);
        };
        if (key(c) < key(*best)) best = c;
    }
    return best;
}

/// `count` integers log-spaced from lo to hi inclusive.
inline std::vector<uint64_t> log_grid(uint64_t lo, uint64_t hi, size_t count) {
    std::vector<uint64_t> v;
    for (size_t k = 0; k < count; ++k) {
        const double f = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        v.push_back(static_cast<uint64_t>(std::llround(static_cast<double>(lo) * std::pow(double(hi) / double(lo), f))));
    }
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// `count` integers evenly spaced from lo to hi inclusive, for a refined
/// second pass between two first-pass optima.
inline std::vector<uint64_t> linear_grid(uint64_t lo, uint64_t hi, size_t count) {
    std::vector<uint64_t> v;
    for (size_t k = 0; k < count; ++k) {
        const double f = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        v.push_back(static_cast<uint64_t>(std::llround(double(lo) + (double(hi) - double(lo)) * f)));
    }
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

struct Grid {
    std::vector<size_t> n_u;
    std::vector<uint64_t> n_m;
};

/// 10 x 10, N_U in 8..1024 and N_M in 32..1024, both log-spaced.
inline Grid default_grid() {
    Grid g;
    for (auto v : log_grid(8, 1024, 10)) g.n_u.push_back(static_cast<size_t>(v));
    g.n_m = log_grid(32, 1024, 10);
    return g;
}

enum class FitMethod { nonlinear, log_linear };

struct FitResult {
    double a = 0, b = 0;
    double r2 = 0;
    double da = 0, db = 0;  // standard errors
    FitMethod method = FitMethod::nonlinear;
};

namespace detail {

struct ExpFitFunctor {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    Eigen::VectorXd x, y;
    int inputs() const { return 2; }
    int values() const { return static_cast<int>(x.size()); }
    int operator()(const Eigen::VectorXd& ab, Eigen::VectorXd& f) const {
        for (Eigen::Index i = 0; i < x.size(); ++i) f(i) = std::exp2(ab(0) + ab(1) * x(i)) - y(i);
        return 0;
    }
    int df(const Eigen::VectorXd& ab, Eigen::MatrixXd& j) const {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double v = std::exp2(ab(0) + ab(1) * x(i)) * std::numbers::ln2;
            j(i, 0) = v;
            j(i, 1) = v * x(i);
        }
        return 0;
    }
};

inline double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fit) {
    const double mean = y.mean();
    const double ss_res = (y - fit).squaredNorm();
    const double ss_tot = (y.array() - mean).square().sum();
    return ss_tot > 0 ? 1 - ss_res / ss_tot : 1.0;
}

}  // namespace detail

/// Fit N_TOT = 2^{a + b((2n-1) - t)}. Nonlinear least squares on N_TOT by
/// default (R^2 in N_TOT), or ordinary least squares on log2 N_TOT (R^2 in log2).
inline FitResult fit_resource_scaling(const std::vector<double>& t_values, const std::vector<double>& n_tot,
                                      int n, FitMethod method = FitMethod::nonlinear) {
    if (t_values.size() != n_tot.size()) throw domain_error("t and N_TOT lengths differ");
    const Eigen::Index m = static_cast<Eigen::Index>(t_values.size());
    if (m < 3) throw domain_error("need at least 3 points");
    Eigen::VectorXd x(m), y(m), ly(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(n_tot[static_cast<size_t>(i)] > 0)) throw domain_error("N_TOT must be positive");
        x(i) = (2.0 * n - 1) - t_values[static_cast<size_t>(i)];
        y(i) = n_tot[static_cast<size_t>(i)];
        ly(i) = std::log2(y(i));
    }
    const double sxx = (x.array() - x.mean()).square().sum();
    if (sxx < 1e-12) throw domain_error("degenerate abscissae");

    FitResult r;
    r.method = method;
    // Log-space OLS; also the starting point of the nonlinear fit.
    r.b = ((x.array() - x.mean()) * (ly.array() - ly.mean())).sum() / sxx;
    r.a = ly.mean() - r.b * x.mean();
    if (method == FitMethod::log_linear) {
        Eigen::VectorXd fit = (r.a + r.b * x.array()).matrix();
        r.r2 = detail::r_squared(ly, fit);
        const double s2 = m > 2 ? (ly - fit).squaredNorm() / double(m - 2) : 0.0;
        r.db = std::sqrt(s2 / sxx);
        r.da = std::sqrt(s2 * (1.0 / double(m) + x.mean() * x.mean() / sxx));
        return r;
    }

    detail::ExpFitFunctor f{x, y};
    Eigen::VectorXd ab(2);
    ab << r.a, r.b;
    Eigen::LevenbergMarquardt<detail::ExpFitFunctor> lm(f);
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.minimize(ab);
    r.a = ab(0);
    r.b = ab(1);
    Eigen::VectorXd fit(m);
    for (Eigen::Index i = 0; i < m; ++i) fit(i) = std::exp2(r.a + r.b * x(i));
    r.r2 = detail::r_squared(y, fit);
    Eigen::MatrixXd j(m, 2);
    f.df(ab, j);
    const double s2 = m > 2 ? (y - fit).squaredNorm() / double(m - 2) : 0.0;
    const Eigen::Matrix2d cov = s2 * (j.transpose() * j).inverse();
    r.da = std::sqrt(cov(0, 0));
    r.db = std::sqrt(cov(1, 1));
    return r;
}

}  // namespace magicrm

#endif
