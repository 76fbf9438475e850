#include "qg/algos.hpp"

#include <cmath>

#include "qg/linesearch.hpp"

namespace qg {

namespace {

void check_common(const RunConfig& config) {
    if (config.oracle == nullptr) throw Error("runner: missing oracle");
    if (config.steps < 1) throw Error("runner: steps must be >= 1");
    if (static_cast<int>(config.x0.size()) != config.oracle->dimension())
        throw Error("runner: starting point dimension mismatch");
    require_finite(config.x0, "runner x0");
}

double resolve_L(const RunConfig& config) {
    if (config.L > 0.0) return config.L;
    if (auto L = config.oracle->qg_constant()) return *L;
    throw Error("runner: class constant L is neither configured nor tagged on the oracle");
}

IterateTrace start_trace(const RunConfig& config, const char* name) {
    IterateTrace t;
    t.algorithm = name;
    t.params.emplace_back("n", config.steps);
    t.points.push_back(config.x0);
    t.values.push_back(config.oracle->value(config.x0));
    return t;
}

void record_step(IterateTrace& t, const FirstOrderOracle& oracle, Vec g, double gamma, Vec x) {
    require_finite(x, "runner iterate");
    t.subgrads.push_back(std::move(g));
    t.gammas.push_back(gamma);
    t.values.push_back(oracle.value(x));
    t.points.push_back(std::move(x));
}

double checked_gap(double value, double f_star) {
    const double gap = value - f_star;
    if (gap < -tol::feasibility)
        throw Error("runner: f(x_k) fell below the provided optimal value (inconsistent f_star)");
    return std::max(gap, 0.0);
}

double required_f_star(const RunConfig& config, const char* who) {
    if (!config.f_star) throw Error(std::string(who) + ": f_star is a required input");
    return *config.f_star;
}

}  // namespace

IterateTrace subgradient_run(const RunConfig& config) {
    check_common(config);
    if (config.schedule == nullptr) throw Error("subgradient_run: missing step-size schedule");
    const auto& oracle = *config.oracle;

    IterateTrace trace = start_trace(config, "subgrad");
    Vec x = config.x0;
    for (int k = 1; k <= config.steps; ++k) {
        const Vec g = oracle.subgradient(x, config.selection);
        const double gamma = config.schedule->gamma(k - 1);
        Vec next = add_scaled(x, -gamma, g);
        record_step(trace, oracle, g, gamma, next);
        x = std::move(next);
    }
    trace.subgrads.push_back(oracle.subgradient(x, config.selection));
    return trace;
}

IterateTrace subgradient_ls_run(const RunConfig& config) {
    check_common(config);
    const auto& oracle = *config.oracle;

    IterateTrace trace = start_trace(config, "subgrad-els");
    Vec x = config.x0;
    for (int k = 1; k <= config.steps; ++k) {
        const Vec g = oracle.subgradient(x, config.selection);
        double alpha = 0.0;
        Vec next = x;
        if (!is_zero(g)) {
            LineProblem line{&oracle, x, scaled(g, -1.0)};
            auto ls = exact_line_search(line);
            alpha = ls.alpha;
            next = std::move(ls.point);
        }
        record_step(trace, oracle, g, alpha, next);
        x = std::move(next);
    }
    trace.subgrads.push_back(oracle.subgradient(x, config.selection));
    return trace;
}

IterateTrace heavyball_run(const RunConfig& config, HeavyBallForm form) {
    check_common(config);
    const double L = resolve_L(config);
    const auto& oracle = *config.oracle;

    IterateTrace trace =
        start_trace(config, form == HeavyBallForm::Averaged ? "hb-averaged" : "hb");
    trace.params.emplace_back("L", L);

    Vec x = config.x0;
    Vec x_prev = config.x0;
    Vec gsum = zeros(x.size());
    for (int k = 1; k <= config.steps; ++k) {
        const Vec g = oracle.subgradient(x, config.selection);
        const double gamma = 1.0 / (L * (k + 1));
        Vec next;
        if (form == HeavyBallForm::Averaged) {
            // x_k = k/(k+1) x_{k-1} + 1/(k+1) x_0 - 1/(k+1) sum_i g_i / L
            axpy(1.0, g, gsum);
            next = scaled(x, static_cast<double>(k) / (k + 1));
            axpy(1.0 / (k + 1), config.x0, next);
            axpy(-1.0 / (L * (k + 1)), gsum, next);
        } else {
            // x_k = x_{k-1} - g_{k-1}/(L(k+1)) + (k-1)/(k+1) (x_{k-1} - x_{k-2})
            const double beta = static_cast<double>(k - 1) / (k + 1);
            next = add_scaled(x, -gamma, g);
            axpy(beta, x, next);
            axpy(-beta, x_prev, next);
        }
        record_step(trace, oracle, g, gamma, next);
        x_prev = std::move(x);
        x = std::move(next);
    }
    trace.subgrads.push_back(oracle.subgradient(x, config.selection));
    return trace;
}

IterateTrace heavyball_ls_run(const RunConfig& config) {
    check_common(config);
    const auto& oracle = *config.oracle;

    IterateTrace trace = start_trace(config, "hb-ls");
    Vec x = config.x0;
    Vec v = zeros(x.size());
    for (int k = 1; k <= config.steps; ++k) {
        // First iteration: v_0 = 0, the orthogonality constraint is vacuous.
        const Vec g = (k == 1) ? oracle.subgradient(x, config.selection)
                               : orthogonal_subgradient(oracle, x, v);
        axpy(1.0, g, v);
        Vec y = scaled(x, static_cast<double>(k) / (k + 1));
        axpy(1.0 / (k + 1), config.x0, y);
        double alpha = 0.0;
        Vec next = y;
        if (!is_zero(v)) {
            LineProblem line{&oracle, y, v};
            auto ls = exact_line_search(line);
            alpha = ls.alpha;
            next = std::move(ls.point);
        }
        record_step(trace, oracle, g, alpha, next);
        x = std::move(next);
    }
    trace.subgrads.push_back(orthogonal_subgradient(oracle, x, v));
    return trace;
}

IterateTrace heavyball_rg_run(const RunConfig& config) {
    check_common(config);
    if (!config.growth) throw Error("heavyball_rg_run: growth function is a required input");
    const double f_star = required_f_star(config, "heavyball_rg_run");
    const auto& oracle = *config.oracle;
    const GrowthFn& h = *config.growth;

    IterateTrace trace = start_trace(config, "hb-rg");
    Vec x = config.x0;
    Vec x_prev = config.x0;
    for (int k = 1; k <= config.steps; ++k) {
        const double gap = checked_gap(trace.values.back(), f_star);
        const Vec g = oracle.subgradient(x, config.selection);
        const double gamma = 0.5 / (k + 1) * h.inv_deriv_at(gap);
        const double beta = static_cast<double>(k - 1) / (k + 1);
        Vec next = add_scaled(x, -gamma, g);
        axpy(beta, x, next);
        axpy(-beta, x_prev, next);
        record_step(trace, oracle, g, gamma, next);
        x_prev = std::move(x);
        x = std::move(next);
    }
    checked_gap(trace.values.back(), f_star);
    trace.subgrads.push_back(oracle.subgradient(x, config.selection));
    return trace;
}

IterateTrace heavyball_restart_run(const RunConfig& config) {
    check_common(config);
    if (!config.growth) throw Error("heavyball_restart_run: growth function is a required input");
    if (config.kappa < 1.0) throw Error("heavyball_restart_run: kappa must be >= 1");
    const double f_star = required_f_star(config, "heavyball_restart_run");
    const int cycle = static_cast<int>(std::floor(config.kappa * std::exp(1.0))) - 1;
    if (cycle < 1) throw Error("heavyball_restart_run: cycle length floor(kappa*e) - 1 is below 1");
    const auto& oracle = *config.oracle;
    const GrowthFn& h = *config.growth;

    IterateTrace trace = start_trace(config, "hb-restart");
    trace.params.emplace_back("kappa", config.kappa);
    trace.params.emplace_back("cycle", cycle);

    Vec x = config.x0;
    Vec x_prev = config.x0;
    for (int k = 1; k <= config.steps; ++k) {
        // Inner counter in [1, cycle]; momentum vanishes when a cycle opens.
        const int l = (k - 1) % cycle + 1;
        const double gap = checked_gap(trace.values.back(), f_star);
        const Vec g = oracle.subgradient(x, config.selection);
        const double gamma = 0.5 / (l + 1) * h.inv_deriv_at(gap);
        const double beta = static_cast<double>(l - 1) / (l + 1);
        Vec next = add_scaled(x, -gamma, g);
        axpy(beta, x, next);
        axpy(-beta, x_prev, next);
        record_step(trace, oracle, g, gamma, next);
        x_prev = std::move(x);
        x = std::move(next);
    }
    checked_gap(trace.values.back(), f_star);
    trace.subgrads.push_back(oracle.subgradient(x, config.selection));
    return trace;
}

std::vector<double> lyapunov_trace(const IterateTrace& trace, const FirstOrderOracle& oracle,
                                   double L) {
    trace.check_consistent();
    if (!oracle.has_optset_projection())
        throw Error("lyapunov_trace: oracle has no optimal-set projection");
    if (L <= 0.0) {
        const auto tagged = oracle.qg_constant();
        if (!tagged) throw Error("lyapunov_trace: class constant L unavailable");
        L = *tagged;
    }

    const Vec& x0 = trace.points.front();
    Vec w = sub(x0, oracle.optset_projection(x0));
    const double f_star = oracle.f_star();

    const int count = static_cast<int>(std::min(trace.subgrads.size(), trace.values.size()));
    std::vector<double> V;
    V.reserve(static_cast<std::size_t>(count) + 1);
    V.push_back(0.5 * L * norm2_sq(w));
    for (int k = 1; k <= count; ++k) {
        axpy(-1.0 / L, trace.subgrads[static_cast<std::size_t>(k) - 1], w);
        V.push_back(k * (trace.values[static_cast<std::size_t>(k) - 1] - f_star) +
                    0.5 * L * norm2_sq(w));
    }
    return V;
}

double optimality_condition_residual(const IterateTrace& trace, double L, int k) {
    trace.check_consistent();
    if (L <= 0.0) throw Error("optimality_condition_residual: L must be positive");
    if (k < 1 || k >= static_cast<int>(trace.points.size()) ||
        k >= static_cast<int>(trace.subgrads.size()))
        throw Error("optimality_condition_residual: index out of range");

    const Vec& x0 = trace.points.front();
    Vec anchor = scaled(trace.points[static_cast<std::size_t>(k) - 1],
                        static_cast<double>(k) / (k + 1));
    axpy(1.0 / (k + 1), x0, anchor);
    for (int i = 0; i < k; ++i)
        axpy(-1.0 / (L * (k + 1)), trace.subgrads[static_cast<std::size_t>(i)], anchor);
    return dot(trace.subgrads[static_cast<std::size_t>(k)],
               sub(trace.points[static_cast<std::size_t>(k)], anchor));
}

}  // namespace qg
