#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qg/bounds.hpp"
#include "qg/config.hpp"
#include "qg/interp.hpp"

namespace qg {

// ---------------------------------------------------------------------------
// Batteries of randomly generated instances.
// ---------------------------------------------------------------------------
struct BatteryOptions {
    int count = 100;
    std::vector<int> dims = {2, 3, 5};
    int min_points = 3;
    int max_points = 8;
    double L = 1.0;
    std::uint64_t base_seed = 1;
    double min_R = 0.5;  // starting points are rescaled into [min_R, max_R]
    double max_R = 3.0;
};

struct BatteryInstance {
    RandomInstance instance;
    Vec x0;
    std::uint64_t seed = 0;
};

std::vector<BatteryInstance> make_interp_battery(const BatteryOptions& options);

// Deterministic parallel map: results land in input order regardless of jobs.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

// ---------------------------------------------------------------------------
// Trace output. Columns: k, x0..x{d-1}, f_gap, gamma, lyapunov, eq4_residual.
// Floating-point cells use 17 significant digits; cells that do not apply
// (gamma at the last row, certificates without a projection) stay empty.
// ---------------------------------------------------------------------------
void write_trace_csv(const std::string& path, const IterateTrace& trace,
                     const FirstOrderOracle& oracle, double L_hint = 0.0);

std::string format_double(double v);  // %.17g

// ---------------------------------------------------------------------------
// Named experiments.
// ---------------------------------------------------------------------------
struct ExperimentResult {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> outputs;  // files written
};

// Single run described by a config file: builds the instance and algorithm,
// writes the trace CSV and, when a [verify] section is present, a JSON
// summary {observed, bound, slack, ok}.
ExperimentResult run_experiment(const Config& config, const std::string& out_dir,
                                std::uint64_t seed_override = 0, int jobs = 1,
                                double tol_override = -1.0);

// Worst-case table reproduction: one row per studied (method, schedule,
// iterate) combination with the observed quantity and the matching bound.
struct TableRow {
    std::string method;
    std::string step_sizes;
    std::string iterate;
    std::string side;  // "upper", "lower", "upper-conjectured"
    double observed = 0.0;
    double bound = 0.0;
    bool ok = false;
};

struct TableReport {
    std::vector<TableRow> rows;
    bool all_ok() const;
};

TableReport table1_experiment(std::uint64_t base_seed = 1, int jobs = 1);
void write_table_csv(const std::string& path, const TableReport& report);

// ---------------------------------------------------------------------------
// Decreasing-step conjecture probe: runs the decreasing-u subgradient method
// over the matched Huber start and a random battery, per horizon n. A bound
// violation is reported as a finding (the bound is conjectured, not proven).
// ---------------------------------------------------------------------------
struct ConjectureRow {
    int n = 0;
    double observed_worst = 0.0;     // max over battery of gap/R^2
    double conjectured_bound = 0.0;  // L/(2 u_n)
    double asymptote = 0.0;          // L/(4 sqrt(n))
    double huber_ratio = 0.0;        // huber-branch gap/R^2 divided by the bound
    int violations = 0;
};

struct ConjectureOptions {
    std::vector<int> ns = {5, 10, 20, 50};
    int battery_count = 100;
    double L = 1.0;
    std::uint64_t base_seed = 1;
    int jobs = 1;
};

struct ConjectureReport {
    std::vector<ConjectureRow> rows;
    int total_violations = 0;
    double worst_huber_rel_err = 0.0;  // |huber_ratio - 1| over all n
};

ConjectureReport conjecture_probe(const ConjectureOptions& options);

// CSV with header exactly "n,observed_worst,conjectured_bound,asymptote".
void emit_plot_data(const ConjectureReport& report, const std::string& path);

}  // namespace qg
