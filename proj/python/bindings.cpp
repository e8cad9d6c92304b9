#include <iostream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "veeswarm/cli.hpp"
#include "veeswarm/formation.hpp"
#include "veeswarm/geometry.hpp"
#include "veeswarm/logs.hpp"
#include "veeswarm/metrics.hpp"
#include "veeswarm/scenario.hpp"
#include "veeswarm/simulator.hpp"

namespace py = pybind11;
using namespace veeswarm;

namespace {

std::string repr(Vec2 v) { return "Vec2(" + format_real(v.x) + ", " + format_real(v.y) + ")"; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "V-formation swarm simulator core";

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__iter__", [](const Vec2& v) { return py::iter(py::make_tuple(v.x, v.y)); })
        .def("__eq__", [](const Vec2& a, const Vec2& b) { return a == b; })
        .def("__repr__", &repr);

    py::class_<Circle>(m, "Circle")
        .def(py::init([](Vec2 c, double r) { return Circle{c, r}; }), py::arg("center"), py::arg("radius"))
        .def_readwrite("center", &Circle::center)
        .def_readwrite("radius", &Circle::radius);
    py::class_<ConvexPolygon>(m, "ConvexPolygon")
        .def(py::init([](std::vector<Vec2> v) { return ConvexPolygon{std::move(v)}; }), py::arg("vertices"))
        .def_readwrite("vertices", &ConvexPolygon::vertices);

    m.def("make_rect", &make_rect, py::arg("min_x"), py::arg("min_y"), py::arg("max_x"), py::arg("max_y"));
    m.def("obstacle_distance", &obstacle_distance, py::arg("obstacle"), py::arg("p"));
    m.def("closest_boundary_point", &closest_boundary_point, py::arg("obstacle"), py::arg("p"));

    py::class_<FormationSpec>(m, "FormationSpec")
        .def_static("make", &FormationSpec::make, py::arg("n"), py::arg("d"), py::arg("alpha"))
        .def_readonly("n", &FormationSpec::n)
        .def_readonly("d", &FormationSpec::d)
        .def_readonly("alpha", &FormationSpec::alpha)
        .def_readonly("leader", &FormationSpec::leader);
    m.def("desired_position", &desired_position, py::arg("leader_position"), py::arg("leader_heading"),
          py::arg("i"), py::arg("spec"));

    py::class_<Gains>(m, "Gains")
        .def(py::init<>())
        .def_readwrite("k_f", &Gains::k_f)
        .def_readwrite("k_g", &Gains::k_g)
        .def_readwrite("k_o", &Gains::k_o)
        .def_readwrite("k_c", &Gains::k_c)
        .def_readwrite("k_r", &Gains::k_r)
        .def_readwrite("beta_c", &Gains::beta_c)
        .def_readwrite("beta_r", &Gains::beta_r);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("max_steps", &SimConfig::max_steps)
        .def_readwrite("v_max", &SimConfig::v_max)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("goal_tolerance", &SimConfig::goal_tolerance)
        .def_readwrite("spawn_radius", &SimConfig::spawn_radius)
        .def_property(
            "r_a", [](const SimConfig& c) { return c.ranges.r_a; }, [](SimConfig& c, double v) { c.ranges.r_a = v; })
        .def_property(
            "r_s", [](const SimConfig& c) { return c.ranges.r_s; }, [](SimConfig& c, double v) { c.ranges.r_s = v; });

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("formation", &Scenario::formation)
        .def_readwrite("gains", &Scenario::gains)
        .def_readwrite("sim", &Scenario::sim)
        .def_readwrite("start", &Scenario::start)
        .def_readwrite("goal", &Scenario::goal)
        .def_readwrite("obstacles", &Scenario::obstacles)
        .def("validate", &Scenario::validate)
        .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

    m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("overrides") = std::vector<std::string>{});
    m.def("load_scenario", &load_scenario, py::arg("path"), py::arg("overrides") = std::vector<std::string>{});
    m.def("serialize_scenario", &serialize_scenario, py::arg("scenario"));

    py::enum_<Termination>(m, "Termination")
        .value("GoalReached", Termination::GoalReached)
        .value("MaxSteps", Termination::MaxSteps)
        .value("ObstaclePenetration", Termination::ObstaclePenetration);

    py::class_<MetricsSample>(m, "MetricsSample")
        .def_readonly("step", &MetricsSample::step)
        .def_readonly("time", &MetricsSample::time)
        .def_readonly("phi", &MetricsSample::phi)
        .def_readonly("avg_error", &MetricsSample::avg_error)
        .def_readonly("min_pairwise", &MetricsSample::min_pairwise)
        .def_readonly("avg_consecutive", &MetricsSample::avg_consecutive)
        .def_readonly("n_reconfig_active", &MetricsSample::n_reconfig_active);

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("avg_error_mean", &RunSummary::avg_error_mean)
        .def_readonly("min_pairwise_overall", &RunSummary::min_pairwise_overall)
        .def_readonly("avg_consecutive_mean", &RunSummary::avg_consecutive_mean)
        .def_readonly("termination", &RunSummary::termination)
        .def_readonly("steps_used", &RunSummary::steps_used);

    py::class_<TrajectoryRow>(m, "TrajectoryRow")
        .def_readonly("step", &TrajectoryRow::step)
        .def_readonly("time", &TrajectoryRow::time)
        .def_property_readonly("uav_id", [](const TrajectoryRow& r) { return r.uav.id; })
        .def_property_readonly("position", [](const TrajectoryRow& r) { return r.uav.position; })
        .def_property_readonly("velocity", [](const TrajectoryRow& r) { return r.uav.velocity; })
        .def_property_readonly("heading", [](const TrajectoryRow& r) { return r.uav.heading; })
        .def_property_readonly("reconfig_active", [](const TrajectoryRow& r) { return r.breakdown.reconfig_active; });

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("trajectory", &RunResult::trajectory)
        .def_readonly("metrics", &RunResult::metrics)
        .def_readonly("summary", &RunResult::summary);

    m.def("run", &run, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "write_logs",
        [](const RunResult& r, const Scenario& s, const std::filesystem::path& out_dir) {
            const LogPaths p = write_logs(r.trajectory, r.metrics, r.summary, s, out_dir);
            return py::dict(py::arg("trajectory") = p.trajectory, py::arg("metrics") = p.metrics,
                            py::arg("summary") = p.summary);
        },
        py::arg("result"), py::arg("scenario"), py::arg("out_dir"));

    m.def(
        "recompute_metrics",
        [](const std::filesystem::path& trajectory_csv, const Scenario& s) {
            return recompute_metrics(read_trajectory_csv(trajectory_csv), s);
        },
        py::arg("trajectory_csv"), py::arg("scenario"));

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"veeswarm"};
            for (const auto& a : args) argv.push_back(a.c_str());
            py::gil_scoped_release release;
            return cli_main(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
        },
        py::arg("args"), "Runs the command line tool in-process and returns its exit code.");
}
