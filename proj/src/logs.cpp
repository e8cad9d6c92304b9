#include "veeswarm/logs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace veeswarm {

namespace {

using ordered_json = nlohmann::ordered_json;

void put(std::string& line, double v) {
    line += format_real(v);
    line += ',';
}

void put(std::string& line, Vec2 v) {
    put(line, v.x);
    put(line, v.y);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log) {
    out << kTrajectoryHeader << '\n';
    std::string line;
    for (const auto& row : log) {
        line.clear();
        line += std::to_string(row.step);
        line += ',';
        put(line, row.time);
        line += std::to_string(row.uav.id);
        line += ',';
        put(line, row.uav.position);
        put(line, row.uav.velocity);
        put(line, row.uav.heading);
        put(line, row.breakdown.u_f);
        put(line, row.breakdown.u_g);
        put(line, row.breakdown.u_o);
        put(line, row.breakdown.u_c);
        put(line, row.breakdown.u_r);
        line += row.breakdown.reconfig_active ? '1' : '0';
        line += '\n';
        out << line;
    }
}

void write_metrics_csv(std::ostream& out, const MetricsSeries& series) {
    out << kMetricsHeader << '\n';
    std::string line;
    for (const auto& s : series) {
        line.clear();
        line += std::to_string(s.step);
        line += ',';
        put(line, s.time);
        put(line, s.phi);
        put(line, s.avg_error);
        put(line, s.min_pairwise);
        put(line, s.avg_consecutive);
        line += std::to_string(s.n_reconfig_active);
        line += '\n';
        out << line;
    }
}

std::string summary_json(const RunSummary& summary, const Scenario& scenario) {
    ordered_json j;
    j["avg_error_mean"] = summary.avg_error_mean;
    j["min_pairwise_overall"] = summary.min_pairwise_overall;
    j["avg_consecutive_mean"] = summary.avg_consecutive_mean;
    j["termination"] = std::string(to_string(summary.termination));
    j["steps_used"] = summary.steps_used;
    ordered_json echo = ordered_json::object();
    for (const auto& e : to_key_values(scenario)) {
        echo[e.key] = e.value;
    }
    j["scenario"] = std::move(echo);
    return j.dump(2) + "\n";
}

Scenario scenario_from_summary_json(const std::string& json_text) {
    const auto j = ordered_json::parse(json_text);
    KeyValues kv;
    for (const auto& [key, value] : j.at("scenario").items()) {
        kv.push_back({key, value.get<std::string>(), 0});
    }
    return scenario_from_key_values(kv);
}

RunSummary run_summary_from_json(const std::string& json_text) {
    const auto j = ordered_json::parse(json_text);
    RunSummary s;
    s.avg_error_mean = j.at("avg_error_mean").get<double>();
    s.min_pairwise_overall = j.at("min_pairwise_overall").get<double>();
    s.avg_consecutive_mean = j.at("avg_consecutive_mean").get<double>();
    s.termination = termination_from_string(j.at("termination").get<std::string>());
    s.steps_used = j.at("steps_used").get<int>();
    return s;
}

LogPaths write_logs(const TrajectoryLog& log, const MetricsSeries& series, const RunSummary& summary,
                    const Scenario& scenario, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
    }
    LogPaths paths{out_dir / "trajectory.csv", out_dir / "metrics.csv", out_dir / "summary.json"};
    {
        auto out = open_for_write(paths.trajectory);
        write_trajectory_csv(out, log);
        finish(out, paths.trajectory);
    }
    {
        auto out = open_for_write(paths.metrics);
        write_metrics_csv(out, series);
        finish(out, paths.metrics);
    }
    {
        auto out = open_for_write(paths.summary);
        out << summary_json(summary, scenario);
        finish(out, paths.summary);
    }
    return paths;
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t begin = 0;
    while (true) {
        const auto pos = line.find(',', begin);
        cells.push_back(line.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin));
        if (pos == std::string_view::npos) break;
        begin = pos + 1;
    }
    return cells;
}

template <typename T>
T parse_cell(std::string_view cell, int line_no, const char* column) {
    T v{};
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": bad value '" +
                                 std::string(cell) + "' in column " + column);
    }
    return v;
}

}  // namespace

TrajectoryLog read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("trajectory file is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryHeader) {
        throw std::runtime_error("trajectory header mismatch; expected '" + std::string(kTrajectoryHeader) + "'");
    }
    TrajectoryLog log;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() != 19) {
            throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": expected 19 columns, got " +
                                     std::to_string(c.size()));
        }
        auto real = [&](std::size_t k) { return parse_cell<double>(c[k], line_no, "real"); };
        TrajectoryRow row;
        row.step = parse_cell<int>(c[0], line_no, "step");
        row.time = real(1);
        row.uav.id = parse_cell<int>(c[2], line_no, "uav_id");
        row.uav.position = {real(3), real(4)};
        row.uav.velocity = {real(5), real(6)};
        row.uav.heading = real(7);
        row.breakdown.u_f = {real(8), real(9)};
        row.breakdown.u_g = {real(10), real(11)};
        row.breakdown.u_o = {real(12), real(13)};
        row.breakdown.u_c = {real(14), real(15)};
        row.breakdown.u_r = {real(16), real(17)};
        row.breakdown.reconfig_active = parse_cell<int>(c[18], line_no, "reconfig_active") != 0;
        row.breakdown.u_total = row.uav.velocity;
        log.push_back(row);
    }
    return log;
}

TrajectoryLog read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open trajectory '" + path.string() + "'");
    }
    return read_trajectory_csv(in);
}

MetricsSeries recompute_metrics(const TrajectoryLog& log, const Scenario& scenario) {
    const auto n = static_cast<std::size_t>(scenario.formation.n);
    if (log.size() % n != 0) {
        throw std::runtime_error("trajectory row count is not a multiple of n = " + std::to_string(n));
    }
    MetricsSeries series;
    std::vector<UavState> uavs(n);
    std::vector<BehaviorBreakdown> breakdowns(n);
    for (std::size_t base = 0; base < log.size(); base += n) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto& row = log[base + k];
            if (row.step != log[base].step || row.uav.id != static_cast<int>(k + 1)) {
                throw std::runtime_error("trajectory rows out of (step, uav_id) order at step " +
                                         std::to_string(row.step) + " (scenario/log mismatch?)");
            }
            uavs[k] = row.uav;
            breakdowns[k] = row.breakdown;
        }
        series.push_back(measure(log[base].step, log[base].time, uavs, breakdowns, scenario.formation,
                                 scenario.sim.activation_threshold));
    }
    return series;
}

}  // namespace veeswarm
