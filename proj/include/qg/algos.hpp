#pragma once

#include <optional>

#include "qg/core.hpp"
#include "qg/growth.hpp"
#include "qg/schedules.hpp"

namespace qg {

// Inputs of a runner. Only the fields the chosen runner needs must be set;
// missing requirements are reported, never guessed. In particular the
// adaptive runners take f_star as an explicit input and refuse to estimate it.
struct RunConfig {
    const FirstOrderOracle* oracle = nullptr;
    Vec x0;
    int steps = 0;
    const StepSchedule* schedule = nullptr;  // subgradient_run
    std::optional<GrowthFn> growth;          // heavyball_rg_run / heavyball_restart_run
    std::optional<double> f_star;            // same runners
    double kappa = 1.0;                      // heavyball_restart_run
    double L = 0.0;                          // heavyball_run; 0 = take from oracle tag
    SubgradSelection selection;              // policy for official subgradient queries
};

enum class HeavyBallForm { Averaged, Momentum };

// Plain subgradient recursion x_k = x_{k-1} - gamma_{k-1} g_{k-1}.
// With the DecreasingU schedule this is the decreasing-step variant.
IterateTrace subgradient_run(const RunConfig& config);

// Subgradient method where every step length is chosen by exact line-search
// along the negative subgradient.
IterateTrace subgradient_ls_run(const RunConfig& config);

// Heavy-ball with step 1/(L(k+1)) and momentum (k-1)/(k+1), either in the
// anchored-average form or the equivalent momentum form; both produce the
// same iterates up to roundoff.
IterateTrace heavyball_run(const RunConfig& config, HeavyBallForm form = HeavyBallForm::Momentum);

// Parameter-free heavy-ball: maintains the anchor y_k = (k x_{k-1} + x_0)/(k+1),
// accumulates v_k as the sum of subgradients picked orthogonal to v_{k-1},
// and line-searches along v_k. Uses no class constant.
IterateTrace heavyball_ls_run(const RunConfig& config);

// Heavy-ball for relative-growth classes: momentum form with
// gamma_{k-1} = 1/(2(k+1)) * 1/(h' o h^{-1})(f(x_{k-1}) - f_star).
// Linear growth reduces to heavyball_run; sqrt growth reduces to the
// known-optimal-value step gap/(M^2 (k+1)).
IterateTrace heavyball_rg_run(const RunConfig& config);

// heavyball_rg_run restarted every floor(kappa*e) - 1 steps: the inner
// counter l = ((k-1) mod (floor(kappa*e)-1)) + 1 replaces k in both the
// step-size and the momentum coefficient, so each cycle opens momentum-free.
IterateTrace heavyball_restart_run(const RunConfig& config);

// V_0..V_{n+1} with V_k = k (f(x_{k-1}) - f_star) + L/2 ||x_0 - p_0 - sum_{i<k} g_i / L||^2,
// p_0 the projection of x_0 onto the optimal set. Along runs whose
// subgradient sequence satisfies the optimality inner-product condition the
// sequence is nonincreasing. L = 0 takes the oracle's tag.
std::vector<double> lyapunov_trace(const IterateTrace& trace, const FirstOrderOracle& oracle,
                                   double L = 0.0);

// The inner product <g_k, x_k - [(k x_{k-1} + x_0)/(k+1) - sum_{i<k} g_i / (L(k+1))]>.
// Nonpositive values certify the step; requires 1 <= k and the trace to hold
// g_0..g_k.
double optimality_condition_residual(const IterateTrace& trace, double L, int k);

}  // namespace qg
