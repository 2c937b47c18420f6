#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "sl2/config.hpp"
#include "sl2/norm_control.hpp"

namespace sl2 {

struct SuiteFile {
    std::string name;  // file name inside the output directory
    std::string content;
};

struct SuiteReport {
    std::string suite;
    bool pass = false;
    double max_defect = 0.0;  // headline defect compared against `tolerance`
    double tolerance = 0.0;
    double runtime_ms = 0.0;
    std::vector<SuiteFile> csv;       // byte-deterministic outputs
    std::vector<std::string> notes;   // failed side checks and diagnostics
};

// Names accepted by run_suite, in the order `all` reports them.
const std::vector<std::string>& suite_names();

SuiteReport run_haar_check(const Config& c);
SuiteReport run_unitarity(const Config& c);
SuiteReport run_cn_verify(const Config& c);
SuiteReport run_casimir(const Config& c);
SuiteReport run_topology_table(const Config& c);
SuiteReport run_ncdl(NuCase which, const Config& c);
SuiteReport run_fields_roundtrip(const Config& c);

SuiteReport run_suite(const std::string& name, const Config& c);
// Every suite, concurrently; reports come back in suite_names() order.
std::vector<SuiteReport> run_all(const Config& c);

nlohmann::json summary_json(const SuiteReport& r);
// <file>.csv for every table plus <suite>.json.
void write_report(const SuiteReport& r, const std::filesystem::path& dir);

// Bi-type reference functions used by the ncdl suites.
std::vector<TestFunction> ncdl_test_functions(NuCase which);

// mt19937_64 with hand-written conversions; the standard distributions are
// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi);  // [lo, hi)
    int integer(int lo, int hi);           // [lo, hi]
    cplx complex_unit();                   // both parts in [-1, 1)
private:
    std::mt19937_64 engine_;
};

TestFunction random_test_function(Rng& rng, const WindowSizes& w);
RestrictedField random_restricted_field(NuCase which, Rng& rng, const WindowSizes& w);

}  // namespace sl2
