#include "veeswarm/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "veeswarm/logs.hpp"
#include "veeswarm/scenario.hpp"
#include "veeswarm/simulator.hpp"

namespace veeswarm {

namespace {

namespace fs = std::filesystem;

std::optional<fs::path> resolve_out(const std::string& flag) {
    if (!flag.empty()) return fs::path(flag);
    if (const char* env = std::getenv("VEE_SWARM_OUT"); env != nullptr && *env != '\0') {
        return fs::path(env);
    }
    return std::nullopt;
}

Scenario load_any(const fs::path& path) {
    if (path.extension() == ".json") {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return scenario_from_summary_json(buf.str());
    }
    return load_scenario(path);
}

int cmd_run(const std::string& scenario_path, const std::string& out_flag, std::optional<std::uint64_t> seed,
            std::vector<std::string> overrides, std::ostream& out, std::ostream& err) {
    const auto out_dir = resolve_out(out_flag);
    if (!out_dir) {
        err << "run: --out not given and VEE_SWARM_OUT is unset\n";
        return 2;
    }
    if (seed) overrides.push_back("sim.seed=" + std::to_string(*seed));
    const Scenario scenario = load_scenario(scenario_path, overrides);
    const RunResult result = run(scenario);
    write_logs(result.trajectory, result.metrics, result.summary, scenario, *out_dir);
    const auto& s = result.summary;
    out << scenario.name << ": " << to_string(s.termination) << " after " << s.steps_used << " steps"
        << " | avg_error " << format_real(s.avg_error_mean) << " m | min_distance "
        << format_real(s.min_pairwise_overall) << " m | avg_consecutive " << format_real(s.avg_consecutive_mean)
        << " m\n";
    if (s.termination == Termination::ObstaclePenetration) {
        err << "run: a UAV penetrated an obstacle at step " << s.steps_used << "\n";
        return 1;
    }
    return 0;
}

struct SweepRow {
    std::string scenario;
    std::string cells;  // n..avg_consecutive_m, or empty on error
    std::string status;
    bool failed = false;
};

int cmd_sweep(const std::string& dir, const std::string& out_flag, int jobs, std::ostream& out, std::ostream& err) {
    const auto out_dir = resolve_out(out_flag);
    if (!out_dir) {
        err << "sweep: --out not given and VEE_SWARM_OUT is unset\n";
        return 2;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".scn") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << "sweep: no .scn files in '" << dir << "'\n";
        return 2;
    }
    fs::create_directories(*out_dir);

    std::vector<SweepRow> rows(files.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < files.size(); k = next++) {
            SweepRow& row = rows[k];
            row.scenario = files[k].stem().string();
            try {
                const Scenario scenario = load_scenario(files[k]);
                row.scenario = scenario.name;
                const RunResult result = run(scenario);
                write_logs(result.trajectory, result.metrics, result.summary, scenario,
                           *out_dir / files[k].stem());
                const auto& s = result.summary;
                row.cells = std::to_string(scenario.formation.n) + "," + format_real(scenario.formation.d) + "," +
                            format_real(scenario.formation.alpha) + "," + format_real(s.avg_error_mean) + "," +
                            format_real(s.min_pairwise_overall) + "," + format_real(s.avg_consecutive_mean);
                row.status = std::string(to_string(s.termination));
                row.failed = s.termination == Termination::ObstaclePenetration;
            } catch (const std::exception& e) {
                row.status = "error";
                row.failed = true;
                std::lock_guard lock(log_mutex);
                err << "sweep: " << files[k].string() << ": " << e.what() << "\n";
            }
        }
    };
    const int workers = std::clamp(jobs, 1, static_cast<int>(files.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    const fs::path table = *out_dir / "table.csv";
    std::ofstream csv(table, std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot open '" + table.string() + "' for writing");
    csv << "scenario,n,d,alpha,avg_error_m,min_distance_m,avg_consecutive_m,status\n";
    int failures = 0;
    for (const auto& row : rows) {
        csv << row.scenario << "," << (row.cells.empty() ? ",,,,," : row.cells) << "," << row.status << "\n";
        failures += row.failed ? 1 : 0;
    }
    csv.flush();
    if (!csv) throw std::runtime_error("write to '" + table.string() + "' failed");
    out << "sweep: " << rows.size() << " scenarios, " << failures << " failed -> " << table.string() << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_metrics(const std::string& trajectory, const std::string& scenario_path, const std::string& out_path,
                std::ostream& out) {
    const Scenario scenario = load_any(scenario_path);
    const auto log = read_trajectory_csv(fs::path(trajectory));
    const auto series = recompute_metrics(log, scenario);
    std::ofstream csv(out_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    write_metrics_csv(csv, series);
    csv.flush();
    if (!csv) throw std::runtime_error("write to '" + out_path + "' failed");
    out << "metrics: " << series.size() << " steps -> " << out_path << "\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"V-shape UAV formation simulator"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, scenarios_dir, trajectory, metrics_out;
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;
    int jobs = 1;

    auto* run_cmd = app.add_subcommand("run", "Run one scenario and write its logs");
    run_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (default: $VEE_SWARM_OUT)");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Override sim.seed");
    run_cmd->add_option("--override", overrides, "key=value applied on top of the scenario file");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run every .scn file in a directory and tabulate the results");
    sweep_cmd->add_option("--scenarios", scenarios_dir, "Directory of scenario files")->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory (default: $VEE_SWARM_OUT)");
    sweep_cmd->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

    auto* metrics_cmd = app.add_subcommand("metrics", "Recompute the metrics series from a stored trajectory");
    metrics_cmd->add_option("--trajectory", trajectory, "trajectory.csv")->required();
    metrics_cmd->add_option("--scenario", scenario_path, "Scenario file or summary.json")->required();
    metrics_cmd->add_option("--out", metrics_out, "Output metrics CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (run_cmd->parsed()) {
            std::optional<std::uint64_t> seed_override;
            if (seed_opt->count() > 0) seed_override = seed;
            return cmd_run(scenario_path, out_dir, seed_override, overrides, out, err);
        }
        if (sweep_cmd->parsed()) return cmd_sweep(scenarios_dir, out_dir, jobs, out, err);
        if (metrics_cmd->parsed()) return cmd_metrics(trajectory, scenario_path, metrics_out, out);
    } catch (const std::exception& e) {
        err << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace veeswarm
