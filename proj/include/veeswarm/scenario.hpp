#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "veeswarm/behaviors.hpp"
#include "veeswarm/formation.hpp"
#include "veeswarm/geometry.hpp"
#include "veeswarm/simulator.hpp"

namespace veeswarm {

/// A fully specified, seeded experiment.
struct Scenario {
    std::string name = "unnamed";
    FormationSpec formation;
    Gains gains;
    SimConfig sim;
    Vec2 start;
    Vec2 goal;
    std::vector<Obstacle> obstacles;

    /// Re-checks every embedded invariant. Throws ScenarioError naming the key.
    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string key, int line, const std::string& what);

    /// Dotted key path of the offending entry, empty for syntax errors.
    const std::string& key() const { return key_; }
    /// 1-based source line, 0 when not tied to a line.
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;  ///< source line, 0 for generated entries
};

/// Ordered dotted-key / value pairs, the canonical flat form of a scenario.
using KeyValues = std::vector<KeyValue>;

/// Parses `key = value` lines. `#` starts a comment; blank lines are ignored.
KeyValues parse_key_values(const std::string& text);

/// Applies `key=value` assignments on top of parsed pairs (later wins).
void apply_overrides(KeyValues& kv, const std::vector<std::string>& overrides);

/// Builds a validated scenario; omitted gain and sim keys take the defaults.
/// Required keys: formation.n, start, goal.
Scenario scenario_from_key_values(const KeyValues& kv);

KeyValues to_key_values(const Scenario& scenario);

std::string serialize_scenario(const Scenario& scenario);
Scenario parse_scenario(const std::string& text, const std::vector<std::string>& overrides = {});
Scenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Parses a real number; accepts plain decimals and multiples of pi such as
/// `pi`, `3pi/4`, `0.75*pi`.
double parse_real(const std::string& text);

/// Shortest decimal text that reads back to exactly the same double.
std::string format_real(double value);

}  // namespace veeswarm
