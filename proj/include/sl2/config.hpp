#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "sl2/dual_space.hpp"
#include "sl2/fields.hpp"
#include "sl2/principal_series.hpp"

namespace sl2 {

// Raised for malformed configuration files or overrides.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    WindowSizes windows;
    FourierResolution fourier;    // circle and t-axis nodes
    int haar_resolution = 64;     // nodes per axis of the Haar rules
    double ks_step = 1.0 / 32.0;  // x-axis: double-exponential step of the intertwiner integral
    std::vector<double> v_grid{0.0, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> u_grid{0.25, 0.5, 0.75};
    // Distances to the limit parameter, largest first.
    std::vector<double> boundary_schedule{0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
    int m_horizon = 8;
    int random_fields = 100;     // random restricted fields per ncdl case
    int random_functions = 20;   // random test functions in fields-roundtrip
    std::uint64_t seed = 20240611;
    std::map<std::string, double> tolerances;
    std::filesystem::path output_dir = "out";
    std::filesystem::path topology_descriptors = "config/topology_descriptors.json";
    std::filesystem::path topology_golden = "tests/golden/topology_table.csv";

    Config();

    double tolerance(const std::string& key) const;
    FieldGrids field_grids() const;
    // Throws ConfigError when an invariant fails.
    void validate() const;
};

// Relative paths inside the file resolve against the file's directory parent
// (the repository root for config/reference.json).
Config load_config(const std::filesystem::path& file);
Config config_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
nlohmann::json config_to_json(const Config& c);

// "suite=value"; the suite must already carry a tolerance.
void apply_tolerance_override(Config& c, const std::string& spec);

// Config shipped with the repository.
std::filesystem::path reference_config_path();

}  // namespace sl2
