#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "detumble/sim.hpp"

namespace detumble::cli {

/// Configuration problem with enough context to point at the offending
/// line/key. Maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

/// Flat "section.key = value" file. Values are numbers, booleans, quoted
/// strings or bracketed numeric arrays; '#' starts a comment. Every key must
/// be consumed by the schema; leftovers are reported as unknown keys.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_string(std::string_view text,
                                       const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    double get_number(const std::string& key);
    double get_number_or(const std::string& key, double fallback);
    long long get_integer(const std::string& key);
    long long get_integer_or(const std::string& key, long long fallback);
    std::string get_string(const std::string& key);
    std::string get_string_or(const std::string& key, const std::string& fallback);
    bool get_bool_or(const std::string& key, bool fallback);
    std::vector<double> get_array(const std::string& key, std::size_t expected_size);
    std::vector<double> get_array_any(const std::string& key);

    /// Throws ConfigError naming every key the schema never consumed.
    void reject_unknown_keys() const;

    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

private:
    using Value = std::variant<double, bool, std::string, std::vector<double>>;
    struct Entry {
        Value value;
        int line = 0;
        mutable bool consumed = false;
    };

    const Entry& require(const std::string& key) const;
    const Entry* find(const std::string& key) const;

    std::string origin_;
    std::map<std::string, Entry> entries_;
};

struct SweepSpec {
    SweepAxis axis1 = SweepAxis::k_c;
    std::vector<double> values1;
    std::optional<SweepAxis> axis2;
    std::vector<double> values2;
    SweepHorizon horizon = SweepHorizon::full_run;
    bool randomize_attitude = false;
};

struct PortraitSpec {
    double omega_max = 0.0; ///< resolved to 4*pi/dt when unset
    int samples = 512;
};

/// Fully validated run configuration for all four commands.
struct RunSpec {
    SimConfig sim;
    std::optional<OrbitConfig> orbit;
    bool gain_from_orbit = false; ///< k_c came from the orbit gain rule
    std::optional<SweepSpec> sweep;
    PortraitSpec portrait;

    static RunSpec from_file(const std::string& path);
    static RunSpec from_string(std::string_view text);
};

SweepAxis parse_sweep_axis(const std::string& name);

} // namespace detumble::cli
