#include "runspec.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace detumble::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool valid_key(std::string_view key) {
    if (key.empty()) {
        return false;
    }
    for (char c : key) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') {
            return false;
        }
    }
    return true;
}

double parse_number_token(std::string_view token, const std::string& origin, int line) {
    const std::string text{trim(token)};
    if (text.empty()) {
        throw ConfigError(origin + ":" + std::to_string(line) + ": empty number");
    }
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
        throw ConfigError(origin + ":" + std::to_string(line) +
                          ": cannot parse number '" + text + "'");
    }
    return value;
}

} // namespace

KeyValueConfig KeyValueConfig::parse_string(std::string_view text,
                                            const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;

    std::istringstream stream{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        // strip comments; '#' inside a quoted string stays
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') {
                in_quote = !in_quote;
            } else if (line[i] == '#' && !in_quote) {
                line.erase(i);
                break;
            }
        }
        const std::string_view content = trim(line);
        if (content.empty()) {
            continue;
        }
        const std::size_t eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key{trim(content.substr(0, eq))};
        if (!valid_key(key)) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": malformed key '" + key + "'");
        }
        if (cfg.entries_.contains(key)) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": duplicate key '" + key + "'");
        }
        const std::string_view value_text = trim(content.substr(eq + 1));
        if (value_text.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": missing value for '" + key + "'");
        }

        Entry entry;
        entry.line = line_no;
        if (value_text.front() == '"') {
            if (value_text.size() < 2 || value_text.back() != '"') {
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": unterminated string for '" + key + "'");
            }
            entry.value = std::string(value_text.substr(1, value_text.size() - 2));
        } else if (value_text.front() == '[') {
            if (value_text.back() != ']') {
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": unterminated array for '" + key + "'");
            }
            std::vector<double> values;
            std::string_view body = value_text.substr(1, value_text.size() - 2);
            if (!trim(body).empty()) {
                while (true) {
                    const std::size_t comma = body.find(',');
                    if (comma == std::string_view::npos) {
                        values.push_back(parse_number_token(body, origin, line_no));
                        break;
                    }
                    values.push_back(
                        parse_number_token(body.substr(0, comma), origin, line_no));
                    body.remove_prefix(comma + 1);
                }
            }
            entry.value = std::move(values);
        } else if (value_text == "true" || value_text == "false") {
            entry.value = (value_text == "true");
        } else {
            entry.value = parse_number_token(value_text, origin, line_no);
        }
        cfg.entries_.emplace(key, std::move(entry));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path);
}

bool KeyValueConfig::has(const std::string& key) const {
    return entries_.contains(key);
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        return nullptr;
    }
    it->second.consumed = true;
    return &it->second;
}

const KeyValueConfig::Entry& KeyValueConfig::require(const std::string& key) const {
    const Entry* entry = find(key);
    if (!entry) {
        throw ConfigError(origin_ + ": missing required key '" + key + "'");
    }
    return *entry;
}

void KeyValueConfig::fail(const std::string& key, const std::string& message) const {
    const auto it = entries_.find(key);
    if (it != entries_.end()) {
        throw ConfigError(origin_ + ":" + std::to_string(it->second.line) + ": " +
                          key + ": " + message);
    }
    throw ConfigError(origin_ + ": " + key + ": " + message);
}

double KeyValueConfig::get_number(const std::string& key) {
    const Entry& entry = require(key);
    if (const double* v = std::get_if<double>(&entry.value)) {
        return *v;
    }
    fail(key, "expected a number");
}

double KeyValueConfig::get_number_or(const std::string& key, double fallback) {
    return has(key) ? get_number(key) : fallback;
}

long long KeyValueConfig::get_integer(const std::string& key) {
    const double v = get_number(key);
    const double rounded = std::nearbyint(v);
    if (v != rounded) {
        fail(key, "expected an integer");
    }
    return static_cast<long long>(rounded);
}

long long KeyValueConfig::get_integer_or(const std::string& key, long long fallback) {
    return has(key) ? get_integer(key) : fallback;
}

std::string KeyValueConfig::get_string(const std::string& key) {
    const Entry& entry = require(key);
    if (const std::string* v = std::get_if<std::string>(&entry.value)) {
        return *v;
    }
    fail(key, "expected a quoted string");
}

std::string KeyValueConfig::get_string_or(const std::string& key,
                                          const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) {
    if (!has(key)) {
        return fallback;
    }
    const Entry& entry = require(key);
    if (const bool* v = std::get_if<bool>(&entry.value)) {
        return *v;
    }
    fail(key, "expected true or false");
}

std::vector<double> KeyValueConfig::get_array(const std::string& key,
                                              std::size_t expected_size) {
    std::vector<double> values = get_array_any(key);
    if (values.size() != expected_size) {
        fail(key, "expected an array of " + std::to_string(expected_size) +
                      " numbers, got " + std::to_string(values.size()));
    }
    return values;
}

std::vector<double> KeyValueConfig::get_array_any(const std::string& key) {
    const Entry& entry = require(key);
    if (const auto* v = std::get_if<std::vector<double>>(&entry.value)) {
        return *v;
    }
    fail(key, "expected an array like [1, 2, 3]");
}

void KeyValueConfig::reject_unknown_keys() const {
    std::string unknown;
    for (const auto& [key, entry] : entries_) {
        if (!entry.consumed) {
            if (!unknown.empty()) {
                unknown += ", ";
            }
            unknown += "'" + key + "' (line " + std::to_string(entry.line) + ")";
        }
    }
    if (!unknown.empty()) {
        throw ConfigError(origin_ + ": unknown key(s): " + unknown);
    }
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "initial_omega_mag") {
        return SweepAxis::initial_omega_mag;
    }
    if (name == "dt") {
        return SweepAxis::dt;
    }
    if (name == "k_c") {
        return SweepAxis::k_c;
    }
    throw ConfigError("unknown sweep axis '" + name +
                      "' (expected initial_omega_mag, dt or k_c)");
}

namespace {

Vec3 to_vec3(const std::vector<double>& v) {
    return Vec3(v[0], v[1], v[2]);
}

SpacecraftBody parse_body(KeyValueConfig& cfg) {
    const bool full = cfg.has("body.inertia");
    const bool diag = cfg.has("body.inertia_diag");
    if (full == diag) {
        throw ConfigError(
            "config must set exactly one of body.inertia (9 numbers, row-major) "
            "or body.inertia_diag (3 numbers)");
    }
    try {
        if (full) {
            const std::vector<double> m = cfg.get_array("body.inertia", 9);
            Mat3 inertia;
            inertia << m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8];
            return SpacecraftBody(inertia);
        }
        const std::vector<double> d = cfg.get_array("body.inertia_diag", 3);
        return SpacecraftBody::from_principal_moments(d[0], d[1], d[2]);
    } catch (const std::invalid_argument& err) {
        cfg.fail(full ? "body.inertia" : "body.inertia_diag", err.what());
    }
}

FieldModel parse_field(KeyValueConfig& cfg) {
    const std::string model = cfg.get_string_or("field.model", "static");
    if (model == "static") {
        StaticInertial field;
        if (cfg.has("field.b0")) {
            field.b0 = to_vec3(cfg.get_array("field.b0", 3));
        }
        if (!(field.b0.squaredNorm() > 0.0)) {
            cfg.fail("field.b0", "field must be nonzero");
        }
        return field;
    }
    if (model == "planar_rotating") {
        PlanarRotating field;
        if (cfg.has("field.b0")) {
            field.b0 = to_vec3(cfg.get_array("field.b0", 3));
        }
        if (cfg.has("field.axis")) {
            field.axis = to_vec3(cfg.get_array("field.axis", 3));
        }
        field.rate = cfg.get_number_or("field.rate", field.rate);
        if (!(field.b0.squaredNorm() > 0.0)) {
            cfg.fail("field.b0", "field must be nonzero");
        }
        if (!(field.axis.squaredNorm() > 0.0)) {
            cfg.fail("field.axis", "rotation axis must be nonzero");
        }
        return field;
    }
    if (model == "tilted_dipole") {
        TiltedDipole field;
        field.orbit_radius = cfg.get_number_or("field.orbit_radius", field.orbit_radius);
        field.inclination = cfg.get_number_or("field.inclination", field.inclination);
        field.orbit_phase0 = cfg.get_number_or("field.orbit_phase0", field.orbit_phase0);
        field.dipole_tilt = cfg.get_number_or("field.dipole_tilt", field.dipole_tilt);
        field.dipole_strength =
            cfg.get_number_or("field.dipole_strength", field.dipole_strength);
        if (!(field.orbit_radius > 0.0)) {
            cfg.fail("field.orbit_radius", "must be positive");
        }
        if (!(field.dipole_strength > 0.0)) {
            cfg.fail("field.dipole_strength", "must be positive");
        }
        return field;
    }
    cfg.fail("field.model", "unknown model '" + model +
                                "' (expected static, planar_rotating or tilted_dipole)");
}

std::vector<double> parse_sweep_values(KeyValueConfig& cfg, const std::string& values_key,
                                       const std::string& range_key) {
    const bool explicit_values = cfg.has(values_key);
    const bool range = cfg.has(range_key);
    if (explicit_values == range) {
        throw ConfigError("config must set exactly one of " + values_key + " or " +
                          range_key + " = [lo, hi, count]");
    }
    if (explicit_values) {
        std::vector<double> values = cfg.get_array_any(values_key);
        if (values.empty()) {
            cfg.fail(values_key, "must be nonempty");
        }
        return values;
    }
    const std::vector<double> r = cfg.get_array(range_key, 3);
    const double lo = r[0];
    const double hi = r[1];
    if (!(r[2] > 0.0) || r[2] != std::nearbyint(r[2])) {
        cfg.fail(range_key, "count must be a positive integer");
    }
    const auto count = static_cast<std::size_t>(r[2]);
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = count == 1 ? lo
                               : lo + (hi - lo) * static_cast<double>(i) /
                                          static_cast<double>(count - 1);
    }
    return values;
}

RunSpec build(KeyValueConfig cfg) {
    RunSpec spec;

    spec.sim.body = parse_body(cfg);

    const std::string algorithm = cfg.get_string("controller.algorithm");
    if (algorithm == "omega_cross_b") {
        spec.sim.controller.algorithm = Algorithm::omega_cross_b;
    } else if (algorithm == "bdot") {
        spec.sim.controller.algorithm = Algorithm::bdot;
    } else {
        cfg.fail("controller.algorithm",
                 "unknown algorithm '" + algorithm + "' (expected omega_cross_b or bdot)");
    }

    spec.sim.controller.dt = cfg.get_number("controller.dt");
    if (!(spec.sim.controller.dt > 0.0)) {
        cfg.fail("controller.dt", "must be positive");
    }

    if (cfg.has("orbit.t_orb") || cfg.has("orbit.xi")) {
        try {
            spec.orbit.emplace(cfg.get_number("orbit.t_orb"), cfg.get_number("orbit.xi"));
        } catch (const std::invalid_argument& err) {
            cfg.fail("orbit.t_orb", err.what());
        }
    }

    const std::string gain_mode = cfg.get_string_or("controller.gain_mode", "direct");
    if (gain_mode == "direct") {
        spec.sim.controller.k_c = cfg.get_number("controller.k_c");
    } else if (gain_mode == "avanzini") {
        if (cfg.has("controller.k_c")) {
            cfg.fail("controller.k_c",
                     "conflicts with controller.gain_mode = \"avanzini\"");
        }
        if (!spec.orbit) {
            throw ConfigError(
                "controller.gain_mode = \"avanzini\" requires orbit.t_orb and orbit.xi");
        }
        spec.sim.controller.k_c = avanzini_gain(*spec.orbit, spec.sim.body.j_min());
        spec.gain_from_orbit = true;
    } else {
        cfg.fail("controller.gain_mode",
                 "unknown gain mode '" + gain_mode + "' (expected direct or avanzini)");
    }
    if (!(spec.sim.controller.k_c >= 0.0)) {
        cfg.fail("controller.k_c", "must be non-negative");
    }

    if (cfg.has("controller.moment_cap")) {
        spec.sim.controller.moment_cap = cfg.get_number("controller.moment_cap");
        if (!(*spec.sim.controller.moment_cap > 0.0)) {
            cfg.fail("controller.moment_cap", "must be positive");
        }
    }

    spec.sim.field = parse_field(cfg);

    if (cfg.has("sim.initial_omega")) {
        spec.sim.initial_omega = to_vec3(cfg.get_array("sim.initial_omega", 3));
    }
    if (cfg.has("sim.initial_q")) {
        const std::vector<double> q = cfg.get_array("sim.initial_q", 4);
        spec.sim.initial_q = Quat(q[0], q[1], q[2], q[3]);
        if (!(spec.sim.initial_q.norm() > 0.0)) {
            cfg.fail("sim.initial_q", "must be nonzero");
        }
        spec.sim.initial_q.normalize();
    }

    // Default duration is a single control interval; check does not need more.
    spec.sim.duration = cfg.get_number_or("sim.duration", spec.sim.controller.dt);
    if (spec.sim.duration < spec.sim.controller.dt) {
        cfg.fail("sim.duration", "must be >= controller.dt (duration " +
                                     std::to_string(spec.sim.duration) + " s < dt " +
                                     std::to_string(spec.sim.controller.dt) + " s)");
    }

    const long long substeps = cfg.get_integer_or("sim.substeps", 20);
    if (substeps < 1) {
        cfg.fail("sim.substeps", "must be >= 1");
    }
    spec.sim.substeps = static_cast<int>(substeps);

    const long long seed = cfg.get_integer_or("sim.seed", 0);
    if (seed < 0) {
        cfg.fail("sim.seed", "must be >= 0");
    }
    spec.sim.seed = static_cast<std::uint64_t>(seed);

    const std::string hold = cfg.get_string_or("sim.torque_hold", "time_varying");
    if (hold == "time_varying") {
        spec.sim.torque_hold = TorqueHold::time_varying;
    } else if (hold == "frozen") {
        spec.sim.torque_hold = TorqueHold::frozen;
    } else {
        cfg.fail("sim.torque_hold",
                 "unknown mode '" + hold + "' (expected time_varying or frozen)");
    }

    const bool any_sweep_key =
        cfg.has("sweep.axis") || cfg.has("sweep.values") || cfg.has("sweep.range") ||
        cfg.has("sweep.axis2") || cfg.has("sweep.values2") || cfg.has("sweep.range2") ||
        cfg.has("sweep.horizon") || cfg.has("sweep.randomize_attitude");
    if (any_sweep_key) {
        SweepSpec sweep;
        if (!cfg.has("sweep.axis")) {
            throw ConfigError("sweep section requires sweep.axis");
        }
        sweep.axis1 = parse_sweep_axis(cfg.get_string("sweep.axis"));
        sweep.values1 = parse_sweep_values(cfg, "sweep.values", "sweep.range");
        if (cfg.has("sweep.axis2") || cfg.has("sweep.values2") || cfg.has("sweep.range2")) {
            sweep.axis2 = parse_sweep_axis(cfg.get_string("sweep.axis2"));
            sweep.values2 = parse_sweep_values(cfg, "sweep.values2", "sweep.range2");
            if (*sweep.axis2 == sweep.axis1) {
                cfg.fail("sweep.axis2", "must differ from sweep.axis");
            }
        }
        const std::string horizon = cfg.get_string_or("sweep.horizon", "full_run");
        if (horizon == "one_interval") {
            sweep.horizon = SweepHorizon::one_interval;
        } else if (horizon == "full_run") {
            sweep.horizon = SweepHorizon::full_run;
        } else {
            cfg.fail("sweep.horizon",
                     "unknown horizon '" + horizon + "' (expected one_interval or full_run)");
        }
        sweep.randomize_attitude = cfg.get_bool_or("sweep.randomize_attitude", false);
        spec.sweep = std::move(sweep);
    }

    spec.portrait.omega_max = cfg.get_number_or(
        "portrait.omega_max", 4.0 * std::numbers::pi / spec.sim.controller.dt);
    if (!(spec.portrait.omega_max > 0.0)) {
        cfg.fail("portrait.omega_max", "must be positive");
    }
    const long long samples = cfg.get_integer_or("portrait.samples", 512);
    if (samples < 2) {
        cfg.fail("portrait.samples", "must be >= 2");
    }
    spec.portrait.samples = static_cast<int>(samples);

    cfg.reject_unknown_keys();

    try {
        spec.sim.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("invalid configuration: ") + err.what());
    }
    return spec;
}

} // namespace

RunSpec RunSpec::from_file(const std::string& path) {
    return build(KeyValueConfig::parse_file(path));
}

RunSpec RunSpec::from_string(std::string_view text) {
    return build(KeyValueConfig::parse_string(text));
}

} // namespace detumble::cli
