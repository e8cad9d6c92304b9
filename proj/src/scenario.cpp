#include "veeswarm/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace veeswarm {

ScenarioError::ScenarioError(std::string key, int line, const std::string& what)
    : std::runtime_error([&] {
          std::string msg;
          if (line > 0) msg += "line " + std::to_string(line) + ": ";
          if (!key.empty()) msg += key + ": ";
          return msg + what;
      }()),
      key_(std::move(key)),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const auto pos = s.find(sep, begin);
        parts.push_back(trim(s.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin)));
        if (pos == std::string_view::npos) break;
        begin = pos + 1;
    }
    return parts;
}

bool parse_plain(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

double parse_real(const std::string& text) {
    const std::string s = trim(text);
    double value = 0.0;
    if (parse_plain(s, value)) return value;

    // <coef>[*]pi[/<den>]
    const auto pi_pos = s.find("pi");
    if (pi_pos != std::string::npos) {
        std::string coef = trim(std::string_view(s).substr(0, pi_pos));
        if (!coef.empty() && coef.back() == '*') coef = trim(std::string_view(coef).substr(0, coef.size() - 1));
        std::string rest = trim(std::string_view(s).substr(pi_pos + 2));
        double c = 1.0;
        if (coef == "-") {
            c = -1.0;
        } else if (!coef.empty() && !parse_plain(coef, c)) {
            throw std::invalid_argument("malformed number '" + s + "'");
        }
        double den = 1.0;
        if (!rest.empty()) {
            if (rest.front() != '/' || !parse_plain(trim(std::string_view(rest).substr(1)), den) || den == 0.0) {
                throw std::invalid_argument("malformed number '" + s + "'");
            }
        }
        return c * std::numbers::pi / den;
    }
    throw std::invalid_argument("malformed number '" + s + "'");
}

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError("", line_no, "expected 'key = value'");
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ScenarioError("", line_no, "empty key");
        if (!seen.insert(key).second) throw ScenarioError(key, line_no, "duplicate key");
        kv.push_back({std::move(key), std::move(value), line_no});
    }
    return kv;
}

void apply_overrides(KeyValues& kv, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError("", 0, "override '" + o + "' is not of the form key=value");
        }
        std::string key = trim(std::string_view(o).substr(0, eq));
        std::string value = trim(std::string_view(o).substr(eq + 1));
        auto it = std::find_if(kv.begin(), kv.end(), [&](const KeyValue& e) { return e.key == key; });
        if (it != kv.end()) {
            it->value = std::move(value);
            it->line = 0;
        } else {
            kv.push_back({std::move(key), std::move(value), 0});
        }
    }
}

namespace {

class Reader {
public:
    explicit Reader(const KeyValues& kv) {
        for (const auto& e : kv) entries_.emplace(e.key, &e);
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const KeyValue& require(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ScenarioError(key, 0, "required key is missing");
        used_.insert(key);
        return *it->second;
    }

    double real(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return real(key);
    }

    double real(const std::string& key) {
        const auto& e = require(key);
        try {
            return parse_real(e.value);
        } catch (const std::invalid_argument& ex) {
            throw ScenarioError(key, e.line, ex.what());
        }
    }

    long long integer(const std::string& key, long long fallback) {
        if (!has(key)) return fallback;
        return integer(key);
    }

    long long integer(const std::string& key) {
        const auto& e = require(key);
        long long v = 0;
        const auto& s = e.value;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ScenarioError(key, e.line, "expected an integer, got '" + s + "'");
        }
        return v;
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const auto& e = require(key);
        std::uint64_t v = 0;
        const auto& s = e.value;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ScenarioError(key, e.line, "expected a non-negative integer, got '" + s + "'");
        }
        return v;
    }

    Vec2 vec(const std::string& key) {
        const auto& e = require(key);
        const auto parts = split(e.value, ',');
        if (parts.size() != 2) throw ScenarioError(key, e.line, "expected 'x, y'");
        try {
            return {parse_real(parts[0]), parse_real(parts[1])};
        } catch (const std::invalid_argument& ex) {
            throw ScenarioError(key, e.line, ex.what());
        }
    }

    std::vector<Vec2> vertices(const std::string& key) {
        const auto& e = require(key);
        std::vector<Vec2> out;
        for (const auto& pair : split(e.value, ';')) {
            if (pair.empty()) continue;
            const auto xy = split(pair, ',');
            if (xy.size() != 2) throw ScenarioError(key, e.line, "expected 'x1, y1; x2, y2; ...'");
            try {
                out.push_back({parse_real(xy[0]), parse_real(xy[1])});
            } catch (const std::invalid_argument& ex) {
                throw ScenarioError(key, e.line, ex.what());
            }
        }
        return out;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        return require(key).value;
    }

    int line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second->line;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : entries_) {
            if (!used_.count(key)) throw ScenarioError(key, entry->line, "unknown key");
        }
    }

    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        for (const auto& [key, entry] : entries_) out.push_back(key);
        return out;
    }

private:
    std::map<std::string, const KeyValue*> entries_;
    std::set<std::string> used_;
};

template <typename Fn>
void checked(const std::string& key, int line, Fn&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& ex) {
        throw ScenarioError(key, line, ex.what());
    }
}

std::string obstacle_key(std::size_t index, const char* field) {
    return "obstacle." + std::to_string(index) + "." + field;
}

}  // namespace

void Scenario::validate() const {
    auto require = [](bool ok, const char* key, const char* what) {
        if (!ok) throw ScenarioError(key, 0, what);
    };
    require(formation.n >= 2, "formation.n", "must be >= 2");
    require(formation.d > 0.0 && std::isfinite(formation.d), "formation.d", "must be positive");
    require(formation.alpha > std::numbers::pi / 2.0 && formation.alpha < std::numbers::pi, "formation.alpha",
            "must lie in (pi/2, pi)");
    require(formation.leader == leader_index(formation.n), "formation.leader", "must be ceil(n/2)");

    const std::pair<const char*, double> gain_fields[] = {
        {"gains.k_f", gains.k_f}, {"gains.k_g", gains.k_g}, {"gains.k_o", gains.k_o},
        {"gains.k_c", gains.k_c}, {"gains.k_r", gains.k_r}, {"gains.beta_c", gains.beta_c},
        {"gains.beta_r", gains.beta_r},
    };
    for (const auto& [key, value] : gain_fields) {
        require(value > 0.0 && std::isfinite(value), key, "must be strictly positive");
    }

    require(sim.dt > 0.0 && std::isfinite(sim.dt), "sim.dt", "must be positive");
    require(sim.max_steps >= 1, "sim.max_steps", "must be >= 1");
    require(sim.v_max > 0.0 && std::isfinite(sim.v_max), "sim.v_max", "must be positive");
    require(sim.ranges.r_a > 0.0 && std::isfinite(sim.ranges.r_a), "sim.r_a", "must be positive");
    require(sim.ranges.r_s > sim.ranges.r_a && std::isfinite(sim.ranges.r_s), "sim.r_s", "must exceed sim.r_a");
    require(sim.goal_tolerance > 0.0, "sim.goal_tolerance", "must be positive");
    require(sim.spawn_radius >= 0.0 && std::isfinite(sim.spawn_radius), "sim.spawn_radius", "must be non-negative");
    require(sim.clamp_factor > 0.0, "sim.clamp_factor", "must be positive");
    require(sim.activation_threshold >= 0.0, "sim.activation_threshold", "must be >= 0");
    require(sim.leader_delay == 0 || sim.leader_delay == 1, "leader_delay", "must be 0 or 1");

    require(is_finite(start), "start", "must be finite");
    require(is_finite(goal), "goal", "must be finite");
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
        const std::string key = "obstacle." + std::to_string(k + 1);
        checked(key, 0, [&] { validate_obstacle(obstacles[k]); });
        if (obstacle_distance(obstacles[k], start) <= 0.0) {
            throw ScenarioError("start", 0, "lies inside " + key);
        }
        if (obstacle_distance(obstacles[k], goal) <= 0.0) {
            throw ScenarioError("goal", 0, "lies inside " + key);
        }
    }
}

Scenario scenario_from_key_values(const KeyValues& kv) {
    Reader r(kv);
    Scenario s;
    s.name = r.text("name", s.name);

    const long long n = r.integer("formation.n");
    if (n < 2 || n > 10'000) throw ScenarioError("formation.n", r.line_of("formation.n"), "must be in [2, 10000]");
    s.formation.n = static_cast<int>(n);
    s.formation.leader = leader_index(s.formation.n);
    s.formation.d = r.real("formation.d", s.formation.d);
    s.formation.alpha = r.real("formation.alpha", s.formation.alpha);

    struct GainField {
        const char* key;
        double Gains::*member;
    };
    const GainField gain_fields[] = {
        {"gains.k_f", &Gains::k_f}, {"gains.k_g", &Gains::k_g},       {"gains.k_o", &Gains::k_o},
        {"gains.k_c", &Gains::k_c}, {"gains.k_r", &Gains::k_r},       {"gains.beta_c", &Gains::beta_c},
        {"gains.beta_r", &Gains::beta_r},
    };
    for (const auto& f : gain_fields) {
        s.gains.*f.member = r.real(f.key, s.gains.*f.member);
    }

    SimConfig& c = s.sim;
    c.dt = r.real("sim.dt", c.dt);
    const long long max_steps = r.integer("sim.max_steps", c.max_steps);
    if (max_steps < 1 || max_steps > 100'000'000) {
        throw ScenarioError("sim.max_steps", r.line_of("sim.max_steps"), "must be in [1, 1e8]");
    }
    c.max_steps = static_cast<int>(max_steps);
    c.v_max = r.real("sim.v_max", c.v_max);
    c.ranges.r_a = r.real("sim.r_a", c.ranges.r_a);
    c.ranges.r_s = r.real("sim.r_s", c.ranges.r_s);
    c.goal_tolerance = r.real("sim.goal_tolerance", c.goal_tolerance);
    c.seed = r.unsigned64("sim.seed", c.seed);
    c.spawn_radius = r.real("sim.spawn_radius", c.spawn_radius);
    c.clamp_factor = r.real("sim.clamp_factor", c.clamp_factor);
    c.activation_threshold = r.real("sim.activation_threshold", c.activation_threshold);

    const std::string mode = r.text("reconfig_mode", "signed");
    if (mode == "signed") {
        c.reconfig_mode = ReconfigMode::Signed;
    } else if (mode == "literal") {
        c.reconfig_mode = ReconfigMode::Literal;
    } else {
        throw ScenarioError("reconfig_mode", r.line_of("reconfig_mode"), "expected 'signed' or 'literal'");
    }
    const long long delay = r.integer("leader_delay", 0);
    if (delay != 0 && delay != 1) throw ScenarioError("leader_delay", r.line_of("leader_delay"), "must be 0 or 1");
    c.leader_delay = static_cast<int>(delay);

    s.start = r.vec("start");
    s.goal = r.vec("goal");

    // obstacle.<k>.<field>, taken in numeric order of k.
    std::set<long long> indices;
    for (const auto& key : r.keys()) {
        if (key.rfind("obstacle.", 0) != 0) continue;
        const auto dot = key.find('.', 9);
        const std::string idx = key.substr(9, dot == std::string::npos ? std::string::npos : dot - 9);
        long long k = 0;
        const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), k);
        if (ec != std::errc{} || ptr != idx.data() + idx.size() || k < 1 || dot == std::string::npos) {
            throw ScenarioError(key, r.line_of(key), "obstacle keys look like obstacle.<k>.<field> with k >= 1");
        }
        indices.insert(k);
    }
    for (long long k : indices) {
        const std::string type_key = obstacle_key(static_cast<std::size_t>(k), "type");
        const std::string type = r.require(type_key).value;
        const int line = r.line_of(type_key);
        Obstacle o;
        if (type == "circle") {
            const Vec2 center = r.vec(obstacle_key(k, "center"));
            const double radius = r.real(obstacle_key(k, "radius"));
            o = Circle{center, radius};
        } else if (type == "rect") {
            const double min_x = r.real(obstacle_key(k, "min_x"));
            const double min_y = r.real(obstacle_key(k, "min_y"));
            const double max_x = r.real(obstacle_key(k, "max_x"));
            const double max_y = r.real(obstacle_key(k, "max_y"));
            checked("obstacle." + std::to_string(k), line, [&] { o = make_rect(min_x, min_y, max_x, max_y); });
        } else if (type == "polygon") {
            o = ConvexPolygon{r.vertices(obstacle_key(k, "vertices"))};
        } else {
            throw ScenarioError(type_key, line, "expected circle, rect or polygon");
        }
        checked("obstacle." + std::to_string(k), line, [&] { validate_obstacle(o); });
        s.obstacles.push_back(std::move(o));
    }

    r.reject_unused();
    try {
        s.validate();
    } catch (const ScenarioError& e) {
        // Obstacle errors carry "obstacle.<k>"; point at its type line.
        const int line = r.line_of(e.key()) ? r.line_of(e.key()) : r.line_of(e.key() + ".type");
        throw ScenarioError(e.key(), line, std::string(e.what()).substr(e.key().size() + 2));
    }
    return s;
}

KeyValues to_key_values(const Scenario& s) {
    KeyValues kv;
    auto put = [&](std::string key, std::string value) { kv.push_back({std::move(key), std::move(value), 0}); };
    auto vec = [](Vec2 v) { return format_real(v.x) + ", " + format_real(v.y); };

    put("name", s.name);
    put("formation.n", std::to_string(s.formation.n));
    put("formation.d", format_real(s.formation.d));
    put("formation.alpha", format_real(s.formation.alpha));
    put("gains.k_f", format_real(s.gains.k_f));
    put("gains.k_g", format_real(s.gains.k_g));
    put("gains.k_o", format_real(s.gains.k_o));
    put("gains.k_c", format_real(s.gains.k_c));
    put("gains.k_r", format_real(s.gains.k_r));
    put("gains.beta_c", format_real(s.gains.beta_c));
    put("gains.beta_r", format_real(s.gains.beta_r));
    put("sim.dt", format_real(s.sim.dt));
    put("sim.max_steps", std::to_string(s.sim.max_steps));
    put("sim.v_max", format_real(s.sim.v_max));
    put("sim.r_a", format_real(s.sim.ranges.r_a));
    put("sim.r_s", format_real(s.sim.ranges.r_s));
    put("sim.goal_tolerance", format_real(s.sim.goal_tolerance));
    put("sim.seed", std::to_string(s.sim.seed));
    put("sim.spawn_radius", format_real(s.sim.spawn_radius));
    put("sim.clamp_factor", format_real(s.sim.clamp_factor));
    put("sim.activation_threshold", format_real(s.sim.activation_threshold));
    put("reconfig_mode", s.sim.reconfig_mode == ReconfigMode::Signed ? "signed" : "literal");
    put("leader_delay", std::to_string(s.sim.leader_delay));
    put("start", vec(s.start));
    put("goal", vec(s.goal));
    for (std::size_t k = 0; k < s.obstacles.size(); ++k) {
        const std::size_t idx = k + 1;
        if (const auto* c = std::get_if<Circle>(&s.obstacles[k])) {
            put(obstacle_key(idx, "type"), "circle");
            put(obstacle_key(idx, "center"), vec(c->center));
            put(obstacle_key(idx, "radius"), format_real(c->radius));
        } else {
            const auto& poly = std::get<ConvexPolygon>(s.obstacles[k]);
            std::string verts;
            for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
                if (v) verts += "; ";
                verts += vec(poly.vertices[v]);
            }
            put(obstacle_key(idx, "type"), "polygon");
            put(obstacle_key(idx, "vertices"), verts);
        }
    }
    return kv;
}

std::string serialize_scenario(const Scenario& scenario) {
    std::string out;
    for (const auto& e : to_key_values(scenario)) {
        out += e.key + " = " + e.value + "\n";
    }
    return out;
}

Scenario parse_scenario(const std::string& text, const std::vector<std::string>& overrides) {
    KeyValues kv = parse_key_values(text);
    apply_overrides(kv, overrides);
    return scenario_from_key_values(kv);
}

Scenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioError("", 0, "cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), overrides);
}

}  // namespace veeswarm
