#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "veeswarm/metrics.hpp"
#include "veeswarm/scenario.hpp"
#include "veeswarm/simulator.hpp"

namespace veeswarm {

inline constexpr const char* kTrajectoryHeader =
    "step,time_s,uav_id,x_m,y_m,vx_mps,vy_mps,psi_rad,uf_x,uf_y,ug_x,ug_y,uo_x,uo_y,uc_x,uc_y,ur_x,ur_y,"
    "reconfig_active";
inline constexpr const char* kMetricsHeader =
    "step,time_s,phi,avg_error_m,min_pairwise_m,avg_consecutive_m,n_reconfig_active";

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log);
void write_metrics_csv(std::ostream& out, const MetricsSeries& series);

/// RunSummary fields plus a `scenario` object holding the canonical
/// key/value form of the scenario.
std::string summary_json(const RunSummary& summary, const Scenario& scenario);

Scenario scenario_from_summary_json(const std::string& json_text);
RunSummary run_summary_from_json(const std::string& json_text);

struct LogPaths {
    std::filesystem::path trajectory;
    std::filesystem::path metrics;
    std::filesystem::path summary;
};

/// Writes trajectory.csv, metrics.csv and summary.json into out_dir (created
/// if needed). Throws std::runtime_error naming the path on I/O failure.
LogPaths write_logs(const TrajectoryLog& log, const MetricsSeries& series, const RunSummary& summary,
                    const Scenario& scenario, const std::filesystem::path& out_dir);

/// Parses a trajectory.csv written by write_trajectory_csv.
TrajectoryLog read_trajectory_csv(std::istream& in);
TrajectoryLog read_trajectory_csv(const std::filesystem::path& path);

/// Recomputes the per-step metrics from a stored trajectory.
MetricsSeries recompute_metrics(const TrajectoryLog& log, const Scenario& scenario);

}  // namespace veeswarm
