#include "sl2/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace sl2 {

namespace {

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t{
        {"haar-check", 1e-6},
        {"unitarity", 1e-8},
        {"cn-verify", 1e-5},
        {"cn-verify.intertwining", 1e-6},
        {"cn-verify.gamma", 1e-12},
        {"casimir", 1e-3},
        {"casimir.variance", 1e-4},
        {"ncdl-i", 1e-3},
        {"ncdl-ii", 1e-3},
        {"ncdl-iii", 1e-3},
        {"ncdl.bound", 1e-10},
        {"ncdl.involution", 1e-12},
        {"fields-roundtrip", 1e-8},
        {"fields.commutation", 1e-10},
        {"fields.star", 1e-8},
    };
    return t;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("config: " + what);
}

bool increasing(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(b > a); }) == v.end();
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: bad value for \"") + key + "\": " + e.what());
    }
}

}  // namespace

Config::Config() : tolerances(default_tolerances()) {}

double Config::tolerance(const std::string& key) const {
    auto it = tolerances.find(key);
    if (it == tolerances.end()) throw ConfigError("config: no tolerance named \"" + key + "\"");
    return it->second;
}

FieldGrids Config::field_grids() const {
    FieldGrids g;
    g.f1_imag = v_grid;
    g.f2_imag = v_grid;
    g.f1_real = u_grid;
    g.m_horizon = m_horizon;
    g.windows = windows;
    return g;
}

void Config::validate() const {
    require(schema_version == kSchemaVersion, "unsupported schema_version " + std::to_string(schema_version));
    require(windows.even >= 2 && windows.odd >= 2, "window sizes must be >= 2");
    require(fourier.circle >= 4 * std::max(windows.even, windows.odd), "circle rule too coarse for the window");
    require(fourier.t_nodes >= 8 && haar_resolution >= 8, "quadrature resolutions must be >= 8");
    require(ks_step > 0.0 && ks_step <= 0.25, "ks_step must lie in (0, 0.25]");
    require(increasing(v_grid) && !v_grid.empty() && v_grid.front() == 0.0, "v_grid must be increasing from 0");
    require(increasing(u_grid) && !u_grid.empty() && u_grid.front() > 0.0 && u_grid.back() < 1.0,
            "u_grid must be increasing inside (0,1)");
    require(!boundary_schedule.empty() && boundary_schedule.back() > 0.0 && boundary_schedule.front() < 1.0,
            "boundary_schedule must lie in (0,1)");
    for (std::size_t i = 1; i < boundary_schedule.size(); ++i)
        require(boundary_schedule[i] < boundary_schedule[i - 1], "boundary_schedule must be decreasing");
    require(m_horizon >= 2, "m_horizon must be >= 2");
    require(random_fields >= 1 && random_functions >= 1, "random sample counts must be >= 1");
    for (const auto& [k, v] : tolerances) require(v > 0.0 && std::isfinite(v), "tolerance \"" + k + "\" must be positive");
}

Config config_from_json(const nlohmann::json& j, const std::filesystem::path& base) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    Config c;
    read(j, "schema_version", c.schema_version);
    if (j.contains("windows")) {
        read(j.at("windows"), "even", c.windows.even);
        read(j.at("windows"), "odd", c.windows.odd);
    }
    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        read(q, "circle", c.fourier.circle);
        read(q, "t_nodes", c.fourier.t_nodes);
        read(q, "haar", c.haar_resolution);
        read(q, "x_step", c.ks_step);
    }
    read(j, "v_grid", c.v_grid);
    read(j, "u_grid", c.u_grid);
    read(j, "boundary_schedule", c.boundary_schedule);
    read(j, "m_horizon", c.m_horizon);
    read(j, "random_fields", c.random_fields);
    read(j, "random_functions", c.random_functions);
    read(j, "seed", c.seed);
    if (j.contains("tolerances")) {
        for (const auto& [k, v] : j.at("tolerances").items()) {
            if (!c.tolerances.count(k)) throw ConfigError("config: unknown tolerance \"" + k + "\"");
            if (!v.is_number()) throw ConfigError("config: tolerance \"" + k + "\" must be a number");
            c.tolerances[k] = v.get<double>();
        }
    }
    auto path = [&](const char* key, std::filesystem::path& out) {
        std::string s;
        read(j, key, s);
        if (!s.empty()) out = s;
        if (out.is_relative() && !base.empty()) out = base / out;
    };
    path("output_dir", c.output_dir);
    path("topology_descriptors", c.topology_descriptors);
    path("topology_golden", c.topology_golden);
    c.validate();
    return c;
}

nlohmann::json config_to_json(const Config& c) {
    return {{"schema_version", c.schema_version},
            {"windows", {{"even", c.windows.even}, {"odd", c.windows.odd}}},
            {"quadrature",
             {{"circle", c.fourier.circle}, {"t_nodes", c.fourier.t_nodes}, {"haar", c.haar_resolution}, {"x_step", c.ks_step}}},
            {"v_grid", c.v_grid},
            {"u_grid", c.u_grid},
            {"boundary_schedule", c.boundary_schedule},
            {"m_horizon", c.m_horizon},
            {"random_fields", c.random_fields},
            {"random_functions", c.random_functions},
            {"seed", c.seed},
            {"tolerances", c.tolerances},
            {"output_dir", c.output_dir.string()},
            {"topology_descriptors", c.topology_descriptors.string()},
            {"topology_golden", c.topology_golden.string()}};
}

Config load_config(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("config: cannot open " + file.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: " + file.string() + ": " + e.what());
    }
    const auto dir = std::filesystem::absolute(file).parent_path();
    return config_from_json(j, dir.parent_path());
}

void apply_tolerance_override(Config& c, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects <suite>=<value>, got \"" + spec + "\"");
    const std::string key = spec.substr(0, eq);
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw ConfigError("--tol: \"" + spec.substr(eq + 1) + "\" is not a number");
    }
    // zero is allowed here to force a suite to fail
    if (!(v >= 0.0)) throw ConfigError("--tol: tolerance must be >= 0");
    std::vector<std::string> keys{key};
    if (key == "ncdl") keys = {"ncdl-i", "ncdl-ii", "ncdl-iii"};
    for (const auto& k : keys) {
        if (!c.tolerances.count(k)) throw ConfigError("--tol: unknown suite \"" + k + "\"");
        c.tolerances[k] = v;
    }
}

std::filesystem::path reference_config_path() { return std::filesystem::path(SL2_SOURCE_DIR) / "config" / "reference.json"; }

}  // namespace sl2
