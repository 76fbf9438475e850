#include "qg/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qg/linesearch.hpp"
#include "qg/zoo.hpp"

namespace qg {

namespace {

Vec rescale_start(const Vec& raw, const FirstOrderOracle& oracle, double min_R, double max_R,
                  Rng& rng) {
    // Pull the raw draw onto a ray from its projection so the starting
    // distance lands in [min_R, max_R].
    const Vec proj = oracle.optset_projection(raw);
    Vec dir = sub(raw, proj);
    double r = norm2(dir);
    if (r < 1e-9) {
        dir = zeros(raw.size());
        dir[0] = 1.0;
        r = 1.0;
    }
    const double target = rng.uniform(min_R, max_R);
    return add_scaled(proj, target / r, dir);
}

}  // namespace

std::vector<BatteryInstance> make_interp_battery(const BatteryOptions& options) {
    std::vector<BatteryInstance> out(static_cast<std::size_t>(options.count));
    for (int i = 0; i < options.count; ++i) {
        const std::uint64_t seed = options.base_seed + static_cast<std::uint64_t>(i);
        const int d = options.dims[static_cast<std::size_t>(i) % options.dims.size()];
        const int pts = options.min_points + i % (options.max_points - options.min_points + 1);
        BatteryInstance inst;
        inst.seed = seed;
        inst.instance = random_valid_instance(seed, d, pts, options.L);
        Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
        const Vec raw = rng.uniform_vec(d, -2.0, 2.0);
        inst.x0 = rescale_start(raw, *inst.instance.oracle, options.min_R, options.max_R, rng);
        out[static_cast<std::size_t>(i)] = std::move(inst);
    }
    return out;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = std::min(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace_csv(const std::string& path, const IterateTrace& trace,
                     const FirstOrderOracle& oracle, double L_hint) {
    trace.check_consistent();
    std::ofstream out(path);
    if (!out) throw Error("write_trace_csv: cannot open '" + path + "'");

    const int d = static_cast<int>(trace.points.front().size());
    double L = L_hint;
    if (L <= 0.0) L = oracle.qg_constant().value_or(0.0);

    std::vector<double> lyapunov;
    if (L > 0.0 && oracle.has_optset_projection()) lyapunov = lyapunov_trace(trace, oracle, L);

    out << "k";
    for (int i = 0; i < d; ++i) out << ",x" << i;
    out << ",f_gap,gamma,lyapunov,eq4_residual\n";

    const double f_star = oracle.f_star();
    const int n = trace.steps();
    for (int k = 0; k <= n; ++k) {
        out << k;
        for (int i = 0; i < d; ++i)
            out << "," << format_double(trace.points[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
        out << "," << format_double(trace.values[static_cast<std::size_t>(k)] - f_star);
        out << ",";
        if (k < n) out << format_double(trace.gammas[static_cast<std::size_t>(k)]);
        out << ",";
        if (k < static_cast<int>(lyapunov.size())) out << format_double(lyapunov[static_cast<std::size_t>(k)]);
        out << ",";
        if (k >= 1 && L > 0.0 && k < static_cast<int>(trace.subgrads.size()))
            out << format_double(optimality_condition_residual(trace, L, k));
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// Config-driven experiments
// ---------------------------------------------------------------------------
namespace {

SubgradPolicy policy_from_string(const std::string& s) {
    if (s == "default") return SubgradPolicy::Default;
    if (s == "first-active") return SubgradPolicy::FirstActive;
    if (s == "lowest-index") return SubgradPolicy::LowestIndex;
    if (s == "adversarial") return SubgradPolicy::Adversarial;
    if (s == "alternating") return SubgradPolicy::Alternating;
    throw Error("config: unknown subgradient policy '" + s + "'");
}

std::optional<GrowthFn> growth_from_config(const Config& cfg, const std::string& section) {
    const std::string kind = cfg.get_string(section, "growth", "");
    if (kind.empty()) return std::nullopt;
    if (kind == "linear") return GrowthFn::linear(cfg.get_double(section, "growth_L"));
    if (kind == "sqrt") return GrowthFn::sqrt(cfg.get_double(section, "growth_M"));
    if (kind == "mixed")
        return GrowthFn::mixed(cfg.get_double(section, "growth_M"), cfg.get_double(section, "growth_L"));
    throw Error("config: unknown growth kind '" + kind + "'");
}

StepSchedule schedule_from_config(const Config& cfg, const std::string& section, int n) {
    const std::string kind = cfg.get_string(section, "schedule", "constant");
    if (kind == "constant") return StepSchedule::constant(cfg.get_double(section, "gamma", 1.0));
    if (kind == "harmonic") return StepSchedule::harmonic(cfg.get_double(section, "c", 1.0));
    if (kind == "decreasing-u")
        return StepSchedule::decreasing_u(cfg.get_double(section, "schedule_L", 1.0), n);
    if (kind == "custom") return StepSchedule::custom(cfg.get_double_list(section, "custom_gammas"));
    throw Error("config: unknown schedule kind '" + kind + "'");
}

struct BuiltRun {
    IterateTrace trace;
    std::shared_ptr<FirstOrderOracle> oracle;
};

IterateTrace dispatch_run(const std::string& algo, const RunConfig& rc, const std::string& form) {
    if (algo == "subgrad") return subgradient_run(rc);
    if (algo == "subgrad-els") return subgradient_ls_run(rc);
    if (algo == "hb")
        return heavyball_run(rc, form == "averaged" ? HeavyBallForm::Averaged : HeavyBallForm::Momentum);
    if (algo == "hb-ls") return heavyball_ls_run(rc);
    if (algo == "hb-rg") return heavyball_rg_run(rc);
    if (algo == "hb-restart") return heavyball_restart_run(rc);
    throw Error("config: unknown algorithm id '" + algo + "'");
}

BuiltRun run_from_config(const Config& cfg, std::uint64_t seed) {
    const std::string inst_id = cfg.get_string("instance", "id");
    std::shared_ptr<FirstOrderOracle> oracle;
    Vec default_x0;
    if (inst_id == "interp-random") {
        const auto rnd = random_valid_instance(
            cfg.has_key("instance", "seed") ? static_cast<std::uint64_t>(cfg.get_int("instance", "seed"))
                                            : seed,
            cfg.get_int("instance", "d", 3), cfg.get_int("instance", "num_points", 5),
            cfg.get_double("instance", "L", 1.0));
        oracle = rnd.oracle;
        default_x0 = Vec(static_cast<std::size_t>(oracle->dimension()), 1.0);
    } else {
        auto params = cfg.section_map("instance");
        params.erase("id");
        auto named = make_instance(inst_id, params);
        oracle = named.oracle;
        default_x0 = named.default_x0;
    }

    RunConfig rc;
    rc.oracle = oracle.get();
    rc.steps = cfg.get_int("algorithm", "n");
    if (cfg.has_key("algorithm", "x0")) {
        rc.x0 = cfg.get_double_list("algorithm", "x0");
    } else {
        rc.x0 = default_x0;
    }
    rc.L = cfg.get_double("algorithm", "L", 0.0);
    rc.kappa = cfg.get_double("algorithm", "kappa", 1.0);
    if (cfg.has_key("algorithm", "f_star")) rc.f_star = cfg.get_double("algorithm", "f_star");
    rc.growth = growth_from_config(cfg, "algorithm");
    rc.selection.policy = policy_from_string(cfg.get_string("algorithm", "policy", "default"));

    const std::string algo = cfg.get_string("algorithm", "id");
    StepSchedule schedule = StepSchedule::constant(1.0);
    if (algo == "subgrad") {
        schedule = schedule_from_config(cfg, "algorithm", rc.steps);
        rc.schedule = &schedule;
    }
    BuiltRun out;
    out.trace = dispatch_run(algo, rc, cfg.get_string("algorithm", "form", "momentum"));
    out.oracle = oracle;
    return out;
}

nlohmann::json verify_from_config(const Config& cfg, const IterateTrace& trace,
                                  const FirstOrderOracle& oracle, double tol_override) {
    BoundSpec spec;
    spec.id = bound_id_from_string(cfg.get_string("verify", "bound"));
    spec.n = cfg.get_int("verify", "n", trace.steps());
    spec.L = cfg.get_double("verify", "L", oracle.qg_constant().value_or(0.0));
    spec.M = cfg.get_double("verify", "M", oracle.lipschitz_constant().value_or(0.0));
    spec.kappa = cfg.get_double("verify", "kappa", 0.0);
    spec.growth = growth_from_config(cfg, "verify");
    if (cfg.has_key("verify", "R")) {
        spec.R = cfg.get_double("verify", "R");
    } else {
        spec.R = distance_to_optset(oracle, trace.points.front());
    }
    StepSchedule schedule = StepSchedule::constant(1.0);
    const bool needs_schedule = spec.id == BoundId::LastLbQg || spec.id == BoundId::LastLbSmooth ||
                                spec.id == BoundId::LastLbCombined;
    if (needs_schedule) {
        schedule = schedule_from_config(cfg, "verify", spec.n);
        spec.schedule = &schedule;
    }

    const std::string side_str = cfg.get_string("verify", "side", "upper");
    const BoundSide side = side_str == "lower" ? BoundSide::Lower : BoundSide::Upper;
    const double tol_abs = tol_override >= 0.0
                               ? tol_override
                               : cfg.get_double("verify", "tol_abs", tol::bound_slack);
    const double tol_rel = cfg.get_double("verify", "tol_rel", 0.0);

    const auto report = verify_trace_against_bound(trace, oracle, spec, side, tol_abs, tol_rel);
    nlohmann::json j;
    j["bound_id"] = bound_id_to_string(spec.id);
    j["side"] = side_str;
    j["observable"] = report.observable;
    j["observed"] = report.observed;
    j["bound"] = report.bound;
    j["slack"] = report.slack;
    j["ok"] = report.ok;
    return j;
}

}  // namespace

ExperimentResult run_experiment(const Config& cfg, const std::string& out_dir,
                                std::uint64_t seed_override, int jobs, double tol_override) {
    std::filesystem::create_directories(out_dir);
    ExperimentResult result;

    const std::string kind = cfg.get_string("experiment", "kind", "run");
    std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("experiment", "seed", 1));
    if (seed_override != 0) seed = seed_override;
    // out_dir may also be configured; the caller's path wins.
    (void)cfg.get_string("experiment", "out_dir", "");

    nlohmann::json summary;
    summary["kind"] = kind;
    summary["seed"] = seed;

    if (kind == "run") {
        auto built = run_from_config(cfg, seed);
        const std::string trace_path = out_dir + "/trace.csv";
        write_trace_csv(trace_path, built.trace, *built.oracle);
        result.outputs.push_back(trace_path);
        summary["algorithm"] = built.trace.algorithm;
        summary["steps"] = built.trace.steps();
        summary["final_gap"] = built.trace.values.back() - built.oracle->f_star();
        if (cfg.has_section("verify")) {
            const auto v = verify_from_config(cfg, built.trace, *built.oracle, tol_override);
            summary["verify"] = v;
            if (!v["ok"].get<bool>()) {
                result.ok = false;
                result.failures.push_back("bound check failed: " + v.dump());
            }
        }
    } else if (kind == "battery") {
        BatteryOptions opts;
        opts.count = cfg.get_int("battery", "count", 100);
        if (cfg.has_key("battery", "dims")) opts.dims = cfg.get_int_list("battery", "dims");
        opts.min_points = cfg.get_int("battery", "min_points", 3);
        opts.max_points = cfg.get_int("battery", "max_points", 8);
        opts.L = cfg.get_double("battery", "L", 1.0);
        opts.base_seed = seed;
        const int n = cfg.get_int("algorithm", "n", 20);
        const std::string algo = cfg.get_string("algorithm", "id", "hb");
        const std::string form = cfg.get_string("algorithm", "form", "momentum");
        const std::string bound_id = cfg.get_string("verify", "bound", "hb-optimal");
        const double tol_abs = tol_override >= 0.0
                                   ? tol_override
                                   : cfg.get_double("verify", "tol_abs", tol::bound_slack);
        const std::string side_str = cfg.get_string("verify", "side", "upper");

        const auto battery = make_interp_battery(opts);
        std::vector<nlohmann::json> rows(battery.size());
        std::vector<std::string> errors(battery.size());
        parallel_for(static_cast<int>(battery.size()), jobs, [&](int i) {
            const auto& inst = battery[static_cast<std::size_t>(i)];
            try {
                RunConfig rc;
                rc.oracle = inst.instance.oracle.get();
                rc.x0 = inst.x0;
                rc.steps = n;
                StepSchedule sched = StepSchedule::constant(1.0 / opts.L);
                if (algo == "subgrad") rc.schedule = &sched;
                if (algo == "hb-rg" || algo == "hb-restart") {
                    rc.growth = GrowthFn::linear(opts.L);
                    rc.f_star = inst.instance.oracle->f_star();
                }
                const auto trace = dispatch_run(algo, rc, form);
                BoundSpec spec;
                spec.id = bound_id_from_string(bound_id);
                spec.n = n;
                spec.L = opts.L;
                spec.R = distance_to_optset(*rc.oracle, rc.x0);
                const auto rep = verify_trace_against_bound(
                    trace, *rc.oracle, spec,
                    side_str == "lower" ? BoundSide::Lower : BoundSide::Upper, tol_abs, 0.0);
                nlohmann::json row;
                row["seed"] = inst.seed;
                row["observed"] = rep.observed;
                row["bound"] = rep.bound;
                row["slack"] = rep.slack;
                row["ok"] = rep.ok;
                rows[static_cast<std::size_t>(i)] = std::move(row);
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(i)] = e.what();
            }
        });
        summary["runs"] = nlohmann::json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!errors[i].empty()) {
                result.ok = false;
                result.failures.push_back("battery run " + std::to_string(i) + ": " + errors[i]);
                continue;
            }
            if (!rows[i]["ok"].get<bool>()) {
                result.ok = false;
                result.failures.push_back("battery run " + std::to_string(i) + " failed its bound");
            }
            summary["runs"].push_back(rows[i]);
        }
    } else {
        throw Error("config: unknown experiment kind '" + kind + "'");
    }

    cfg.check_fully_consumed();
    summary["ok"] = result.ok;
    const std::string summary_path = out_dir + "/summary.json";
    std::ofstream out(summary_path);
    if (!out) throw Error("run_experiment: cannot open '" + summary_path + "'");
    out << summary.dump(2) << "\n";
    result.outputs.push_back(summary_path);
    return result;
}

// ---------------------------------------------------------------------------
// Worst-case table
// ---------------------------------------------------------------------------
bool TableReport::all_ok() const {
    for (const auto& row : rows)
        if (!row.ok) return false;
    return true;
}

TableReport table1_experiment(std::uint64_t base_seed, int jobs) {
    TableReport report;
    const double L = 1.0;

    // Averaged subgradient value with the tight 1-D start.
    {
        auto oracle = huber_oracle(L, 1.0);
        const int n = 10;
        StepSchedule sched = StepSchedule::constant(1.0 / L);
        RunConfig rc;
        rc.oracle = oracle.get();
        rc.x0 = Vec{static_cast<double>(n + 1)};
        rc.steps = n;
        rc.schedule = &sched;
        const auto trace = subgradient_run(rc);
        BoundSpec spec;
        spec.id = BoundId::AvgQg;
        spec.L = L;
        spec.R = distance_to_optset(*oracle, rc.x0);
        spec.n = n;
        const auto rep = verify_trace_against_bound(trace, *oracle, spec, BoundSide::Upper);
        report.rows.push_back({"subgradient", "1/L", "average", "upper", rep.observed, rep.bound, rep.ok});
    }

    // Last-iterate floor for prescribed constant steps.
    {
        const int n = 5;
        auto inst = lb3d_instance(L, n, std::vector<double>(n, 1.0 / L), 1e-4);
        StepSchedule sched = StepSchedule::constant(1.0 / L);
        RunConfig rc;
        rc.oracle = inst.oracle.get();
        rc.x0 = inst.x0;
        rc.steps = n;
        rc.schedule = &sched;
        const auto trace = subgradient_run(rc);
        BoundSpec spec;
        spec.id = BoundId::LastLbQg;
        spec.L = L;
        spec.n = n;
        spec.R = distance_to_optset(*inst.oracle, rc.x0);
        spec.schedule = &sched;
        const auto rep =
            verify_trace_against_bound(trace, *inst.oracle, spec, BoundSide::Lower, 0.0, 0.05);
        report.rows.push_back(
            {"subgradient", "gamma_t", "last", "lower", rep.observed, rep.bound, rep.ok});
    }

    // Decreasing steps: the matched Huber start attains the conjectured value.
    {
        const int n = 20;
        auto oracle = huber_oracle(L, 1.0);
        StepSchedule sched = StepSchedule::decreasing_u(L, n);
        double x0 = 1.0;
        for (int k = 0; k < n; ++k) x0 += 2.0 * L * sched.gamma(k);
        RunConfig rc;
        rc.oracle = oracle.get();
        rc.x0 = Vec{x0};
        rc.steps = n;
        rc.schedule = &sched;
        const auto trace = subgradient_run(rc);
        BoundSpec spec;
        spec.id = BoundId::ConjectureU;
        spec.L = L;
        spec.R = distance_to_optset(*oracle, rc.x0);
        spec.n = n;
        const auto lower =
            verify_trace_against_bound(trace, *oracle, spec, BoundSide::Lower, 0.0, 1e-6);
        report.rows.push_back(
            {"subgradient", "~1/(2L sqrt(t))", "last", "lower", lower.observed, lower.bound, lower.ok});

        ConjectureOptions copts;
        copts.ns = {n};
        copts.battery_count = 20;
        copts.base_seed = base_seed;
        copts.jobs = jobs;
        const auto probe = conjecture_probe(copts);
        const auto& row = probe.rows.front();
        report.rows.push_back({"subgradient", "~1/(2L sqrt(t))", "last", "upper-conjectured",
                               row.observed_worst, row.conjectured_bound,
                               row.violations == 0});
    }

    // Heavy-ball upper bounds over the battery, both variants.
    {
        BatteryOptions opts;
        opts.count = 40;
        opts.base_seed = base_seed;
        opts.L = L;
        const int n = 20;
        const auto battery = make_interp_battery(opts);
        double worst_hb = 0.0, worst_ls = 0.0;
        std::vector<double> hb_ratios(battery.size()), ls_ratios(battery.size());
        parallel_for(static_cast<int>(battery.size()), jobs, [&](int i) {
            const auto& inst = battery[static_cast<std::size_t>(i)];
            RunConfig rc;
            rc.oracle = inst.instance.oracle.get();
            rc.x0 = inst.x0;
            rc.steps = n;
            const double R = distance_to_optset(*rc.oracle, rc.x0);
            const auto hb = heavyball_run(rc);
            hb_ratios[static_cast<std::size_t>(i)] =
                (hb.values.back() - rc.oracle->f_star()) / (R * R);
            const auto ls = heavyball_ls_run(rc);
            ls_ratios[static_cast<std::size_t>(i)] =
                (ls.values.back() - rc.oracle->f_star()) / (R * R);
        });
        for (double r : hb_ratios) worst_hb = std::max(worst_hb, r);
        for (double r : ls_ratios) worst_ls = std::max(worst_ls, r);
        const double bound = 0.5 * L / (n + 1);
        report.rows.push_back({"heavy-ball", "1/L 1/(t+2)", "last", "upper", worst_hb, bound,
                               worst_hb <= bound + tol::bound_slack});
        report.rows.push_back({"heavy-ball", "line-search", "last", "upper", worst_ls, bound,
                               worst_ls <= bound + tol::bound_slack});

        // Matching lower bound: the adversarial sup-norm instance.
        const int nlb = 6;
        for (const std::string method : {"hb", "hb-ls"}) {
            auto adv = supnormsq_oracle(L, nlb + 1, SubgradPolicy::Adversarial);
            RunConfig rc;
            rc.oracle = adv.get();
            rc.x0 = Vec(static_cast<std::size_t>(nlb) + 1, 1.0);
            rc.steps = nlb;
            const auto trace = method == "hb" ? heavyball_run(rc) : heavyball_ls_run(rc);
            const double R = distance_to_optset(*adv, rc.x0);
            const double observed = (trace.values.back() - adv->f_star()) / (R * R);
            const double bound_lb = 0.5 * L / (nlb + 1);
            report.rows.push_back({"heavy-ball",
                                   method == "hb" ? "1/L 1/(t+2)" : "line-search", "last", "lower",
                                   observed, bound_lb, observed >= bound_lb - tol::bound_slack});
        }
    }

    // Universal first-order floor via the vertex game.
    {
        const int n = 6;
        auto game = std::make_shared<ResistingOracle>(L, n, ResistingOracle::Mode::VertexGame);
        ResistingOracleAdapter adapter(game);
        StepSchedule sched = StepSchedule::constant(1.0 / L);
        RunConfig rc;
        rc.oracle = &adapter;
        rc.x0 = zeros(static_cast<std::size_t>(n) + 1);
        rc.steps = n;
        rc.schedule = &sched;
        const auto trace = subgradient_run(rc);
        const double R2 = static_cast<double>(n + 1);  // every candidate vertex is this far
        const double observed = (trace.values.back() - adapter.f_star()) / R2;
        const double bound = 0.5 * L / (n + 1);
        report.rows.push_back({"first-order", "any", "any", "lower", observed, bound,
                               observed >= bound - tol::bound_slack});
    }

    return report;
}

void write_table_csv(const std::string& path, const TableReport& report) {
    std::ofstream out(path);
    if (!out) throw Error("write_table_csv: cannot open '" + path + "'");
    out << "method,step_sizes,iterate,side,observed,bound,ok\n";
    for (const auto& row : report.rows) {
        out << row.method << "," << row.step_sizes << "," << row.iterate << "," << row.side << ","
            << format_double(row.observed) << "," << format_double(row.bound) << ","
            << (row.ok ? "1" : "0") << "\n";
    }
}

// ---------------------------------------------------------------------------
// Conjecture probe
// ---------------------------------------------------------------------------
ConjectureReport conjecture_probe(const ConjectureOptions& options) {
    ConjectureReport report;
    const double L = options.L;

    BatteryOptions bopts;
    bopts.count = options.battery_count;
    bopts.base_seed = options.base_seed;
    bopts.L = L;
    const auto battery = make_interp_battery(bopts);

    for (int n : options.ns) {
        ConjectureRow row;
        row.n = n;
        const auto u = u_sequence(n);
        row.conjectured_bound = 0.5 * L / u.back();
        row.asymptote = 0.25 * L / std::sqrt(static_cast<double>(n));

        // Matched Huber start: the decreasing-step run lands exactly on the
        // conjectured value.
        {
            auto oracle = huber_oracle(L, 1.0);
            StepSchedule sched = StepSchedule::decreasing_u(L, n);
            double x0 = 1.0;
            for (int k = 0; k < n; ++k) x0 += 2.0 * L * sched.gamma(k);
            RunConfig rc;
            rc.oracle = oracle.get();
            rc.x0 = Vec{x0};
            rc.steps = n;
            rc.schedule = &sched;
            const auto trace = subgradient_run(rc);
            const double R = distance_to_optset(*oracle, rc.x0);
            row.huber_ratio = (trace.values.back() / (R * R)) / row.conjectured_bound;
        }

        std::vector<double> ratios(battery.size(), 0.0);
        parallel_for(static_cast<int>(battery.size()), options.jobs, [&](int i) {
            const auto& inst = battery[static_cast<std::size_t>(i)];
            StepSchedule sched = StepSchedule::decreasing_u(L, n);
            RunConfig rc;
            rc.oracle = inst.instance.oracle.get();
            rc.x0 = inst.x0;
            rc.steps = n;
            rc.schedule = &sched;
            const auto trace = subgradient_run(rc);
            const double R = distance_to_optset(*rc.oracle, rc.x0);
            ratios[static_cast<std::size_t>(i)] =
                (trace.values.back() - rc.oracle->f_star()) / (R * R);
        });
        for (double r : ratios) {
            row.observed_worst = std::max(row.observed_worst, r);
            if (r > row.conjectured_bound * (1.0 + 1e-9) + tol::feasibility) ++row.violations;
        }
        row.observed_worst = std::max(row.observed_worst, row.huber_ratio * row.conjectured_bound);

        report.total_violations += row.violations;
        report.worst_huber_rel_err =
            std::max(report.worst_huber_rel_err, std::fabs(row.huber_ratio - 1.0));
        report.rows.push_back(row);
    }
    return report;
}

void emit_plot_data(const ConjectureReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("emit_plot_data: cannot open '" + path + "'");
    out << "n,observed_worst,conjectured_bound,asymptote\n";
    for (const auto& row : report.rows) {
        out << row.n << "," << format_double(row.observed_worst) << ","
            << format_double(row.conjectured_bound) << "," << format_double(row.asymptote) << "\n";
    }
}

}  // namespace qg
