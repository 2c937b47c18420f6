// Command-line harness for the verification suites.
#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sl2/config.hpp"
#include "sl2/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print(const sl2::SuiteReport& r) {
    std::printf("%-17s %s  max_defect=%.3e  tolerance=%.3e  %.0f ms\n", r.suite.c_str(), r.pass ? "PASS" : "FAIL",
                r.max_defect, r.tolerance, r.runtime_ms);
    for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator-valued Fourier transform of C*(SL(2,R)): verification suites"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path = sl2::reference_config_path().string();
    std::string out_dir;
    int window = 0;
    std::vector<std::string> tol_overrides;
    app.add_option("--config", config_path, "JSON config file")->capture_default_str();
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--window", window, "even window N; the odd window becomes N+1")->check(CLI::Range(2, 64));
    app.add_option("--tol", tol_overrides, "tolerance override <suite>=<value>, repeatable")->take_all();

    std::vector<std::string> selected;
    for (const auto& name : {"haar-check", "unitarity", "cn-verify", "casimir", "topology-table", "fields-roundtrip"}) {
        app.add_subcommand(name, std::string("run the ") + name + " suite")->callback([&selected, n = std::string(name)] {
            selected = {n};
        });
    }
    std::string ncdl_case = "all";
    auto* ncdl = app.add_subcommand("ncdl", "norm-control limits; --case i|ii|iii");
    ncdl->add_option("--case", ncdl_case, "i, ii, iii or all")
        ->check(CLI::IsMember({"i", "ii", "iii", "all"}))
        ->capture_default_str();
    ncdl->callback([&] {
        selected = ncdl_case == "all" ? std::vector<std::string>{"ncdl-i", "ncdl-ii", "ncdl-iii"}
                                      : std::vector<std::string>{"ncdl-" + ncdl_case};
    });
    app.add_subcommand("all", "run every suite concurrently")->callback([&] { selected = sl2::suite_names(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    sl2::Config cfg;
    try {
        cfg = sl2::load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (window > 0) cfg.windows = {window, window + 1};
        for (const auto& t : tol_overrides) sl2::apply_tolerance_override(cfg, t);
        // keep the circle rule well above the window's highest frequency
        if (window > 0) cfg.fourier.circle = std::max(cfg.fourier.circle, 4 * (window + 1));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    std::vector<sl2::SuiteReport> reports;
    try {
        if (selected.size() == sl2::suite_names().size()) {
            reports = sl2::run_all(cfg);
        } else {
            for (const auto& s : selected) reports.push_back(sl2::run_suite(s, cfg));
        }
        nlohmann::json merged = nlohmann::json::array();
        for (const auto& r : reports) {
            sl2::write_report(r, cfg.output_dir);
            merged.push_back(sl2::summary_json(r));
            print(r);
        }
        if (reports.size() > 1) std::ofstream(cfg.output_dir / "summary.json") << merged.dump(2) << "\n";
    } catch (const sl2::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }

    for (const auto& r : reports)
        if (!r.pass) return kExitFail;
    return kExitPass;
}
