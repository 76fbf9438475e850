// Command-line front end: config-driven runs, worst-case table reproduction,
// the decreasing-step conjecture probe, and interpolation-data checking.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qg/config.hpp"
#include "qg/experiments.hpp"
#include "qg/interp.hpp"

namespace {

int run_config_command(const std::string& config_path, const std::string& out_dir,
                       std::uint64_t seed, int jobs, double tolerance, bool require_verify) {
    const auto cfg = qg::Config::parse_file(config_path);
    if (require_verify && !cfg.has_section("verify")) {
        std::cerr << "error: 'verify' requires a [verify] section in " << config_path << "\n";
        return 2;
    }
    const auto result = qg::run_experiment(cfg, out_dir, seed, jobs, tolerance);
    for (const auto& f : result.outputs) std::cout << "wrote " << f << "\n";
    if (!result.ok) {
        for (const auto& f : result.failures) std::cerr << "FAIL " << f << "\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"first-order methods on quadratically upper bounded convex functions"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = "out";
    std::uint64_t seed = 0;  // 0 = take the config's seed
    int jobs = 1;
    double tolerance = -1.0;  // <0 = module default
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--seed", seed, "override the base seed");
    app.add_option("--jobs", jobs, "parallel workers for batteries");
    app.add_option("--tolerance", tolerance, "override the bound-check slack");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run a config-described experiment");
    run_cmd->add_option("config", config_path, "experiment config file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run a config and require its bound checks");
    verify_cmd->add_option("config", config_path, "experiment config file")->required();

    auto* table_cmd = app.add_subcommand("table1", "observed-versus-bound table for every studied method");

    auto* conj_cmd = app.add_subcommand("conjecture", "decreasing-step worst-case probe");
    std::vector<int> ns = {5, 10, 20, 50};
    int battery = 100;
    conj_cmd->add_option("--n", ns, "horizons to probe");
    conj_cmd->add_option("--battery", battery, "number of random instances");

    std::string dataset_path;
    auto* interp_cmd = app.add_subcommand("interp-check", "validate an interpolation dataset");
    interp_cmd->add_option("dataset", dataset_path, "dataset JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return run_config_command(config_path, out_dir, seed, jobs, tolerance, false);
        if (*verify_cmd) return run_config_command(config_path, out_dir, seed, jobs, tolerance, true);

        if (*table_cmd) {
            std::filesystem::create_directories(out_dir);
            const auto report = qg::table1_experiment(seed == 0 ? 1 : seed, jobs);
            const std::string path = out_dir + "/table1.csv";
            qg::write_table_csv(path, report);
            std::cout << "wrote " << path << "\n";
            for (const auto& row : report.rows) {
                std::cout << (row.ok ? "  ok   " : "  FAIL ") << row.method << " | " << row.step_sizes
                          << " | " << row.iterate << " | " << row.side
                          << " | observed=" << qg::format_double(row.observed)
                          << " bound=" << qg::format_double(row.bound) << "\n";
            }
            return report.all_ok() ? 0 : 1;
        }

        if (*conj_cmd) {
            std::filesystem::create_directories(out_dir);
            qg::ConjectureOptions opts;
            opts.ns = ns;
            opts.battery_count = battery;
            opts.base_seed = seed == 0 ? 1 : seed;
            opts.jobs = jobs;
            const auto report = qg::conjecture_probe(opts);
            const std::string path = out_dir + "/conjecture.csv";
            qg::emit_plot_data(report, path);
            std::cout << "wrote " << path << "\n";
            for (const auto& row : report.rows) {
                std::cout << "  n=" << row.n << " observed_worst=" << qg::format_double(row.observed_worst)
                          << " bound=" << qg::format_double(row.conjectured_bound)
                          << " asymptote=" << qg::format_double(row.asymptote)
                          << " huber_ratio=" << qg::format_double(row.huber_ratio) << "\n";
                if (row.violations > 0)
                    std::cout << "  CONJECTURE-VIOLATION at n=" << row.n << " on " << row.violations
                              << " instance(s)\n";
            }
            // Violations are findings, not failures: the bound is conjectured.
            return 0;
        }

        if (*interp_cmd) {
            const auto dataset = qg::load_dataset(dataset_path);
            const auto report = qg::check_qgplus_interpolation(dataset);
            nlohmann::json j;
            j["valid"] = report.valid;
            j["violations"] = nlohmann::json::array();
            for (const auto& v : report.violations)
                j["violations"].push_back({{"i", v.i}, {"j", v.j}, {"equation", v.equation},
                                           {"slack", v.slack}});
            std::cout << j.dump(2) << "\n";
            return report.valid ? 0 : 1;
        }
    } catch (const qg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
