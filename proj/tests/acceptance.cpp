// Runs `sl2ncdl all` twice on the reference config and judges every
// acceptance criterion from the written CSV tables. Thresholds are fixed here
// so a loosened config cannot turn a criterion green.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl2/config.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

using Row = std::map<std::string, std::string>;

std::vector<Row> read_csv(const fs::path& p) {
    std::istringstream is(slurp(p));
    std::string line;
    std::vector<std::string> header;
    std::vector<Row> rows;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!s.empty() && s.back() == ',') out.emplace_back();
        return out;
    };
    if (!std::getline(is, line)) return rows;
    header = split(line);
    while (std::getline(is, line)) {
        const auto cells = split(line);
        Row r;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) r[header[i]] = cells[i];
        rows.push_back(std::move(r));
    }
    return rows;
}

double num(const Row& r, const std::string& key) {
    auto it = r.find(key);
    if (it == r.end() || it->second.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::stod(it->second);
}

struct Verdict {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

// max of `column` over rows whose `check` column (if given) matches
double worst(const std::vector<Row>& rows, const std::string& column, const std::string& check = "") {
    double w = 0.0;
    for (const auto& r : rows) {
        if (!check.empty() && r.at("check") != check) continue;
        const double v = num(r, column);
        if (!(v <= w)) w = v;  // NaN propagates as a failure
    }
    return w;
}

std::size_t count(const std::vector<Row>& rows, const std::string& check) {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.at("check") == check;
    return n;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

void below(Verdict& v, const std::string& what, double value, double limit) {
    if (!(value < limit)) v.fail(what + " " + sci(value) + " >= " + sci(limit));
}

Verdict ncdl(const fs::path& dir, const std::string& c, std::size_t expected_functions) {
    Verdict v;
    const auto rows = read_csv(dir / ("ncdl-" + c + ".csv"));
    std::map<std::string, std::vector<double>> by_h;
    for (const auto& r : rows) by_h[r.at("h")].push_back(num(r, "defect"));
    if (by_h.size() != expected_functions) v.fail("expected " + std::to_string(expected_functions) + " test functions");
    double last_worst = 0.0;
    for (const auto& [h, d] : by_h) {
        if (d.size() != 6) v.fail(h + ": schedule length " + std::to_string(d.size()));
        if (d.empty()) continue;
        if (!(d.back() < 1e-3)) v.fail(h + ": final defect " + sci(d.back()));
        for (std::size_t k = 1; k < d.size(); ++k)
            if (d[k] > d[k - 1]) v.fail(h + ": defect increases at step " + std::to_string(k));
        last_worst = std::max(last_worst, d.back());
    }
    if (v.pass) v.detail = "worst final defect " + sci(last_worst);
    return v;
}

int run_cli(const fs::path& out, double& seconds) {
    const std::string cmd = std::string(SL2NCDL_EXE) + " all --out " + out.string() + " > " + (out.string() + ".log") + " 2>&1";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "sl2_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path run1 = root / "run1", run2 = root / "run2";

    double t1 = 0.0, t2 = 0.0;
    const int code1 = run_cli(run1, t1);
    const int code2 = run_cli(run2, t2);
    std::printf("cli all: exit %d in %.1f s, second run exit %d in %.1f s\n", code1, t1, code2, t2);
    if (code1 == 2 || code1 < 0 || !fs::exists(run1 / "summary.json")) {
        std::printf("FAIL cli all did not produce reports (see %s.log)\n", run1.string().c_str());
        return 1;
    }

    std::vector<std::pair<int, Verdict>> results;
    const auto record = [&](int n, Verdict v) { results.emplace_back(n, std::move(v)); };

    {  // 1
        Verdict v;
        const auto rows = read_csv(run1 / "haar-check.csv");
        below(v, "left invariance", worst(rows, "relative_defect", "left_invariance"), 1e-6);
        below(v, "Iwasawa vs Cartan", worst(rows, "relative_defect", "agreement"), 1e-6);
        if (count(rows, "left_invariance") != 2 || count(rows, "agreement") != 1) v.fail("missing rows");
        if (v.pass) v.detail = "worst relative defect " + sci(worst(rows, "relative_defect"));
        record(1, v);
    }
    {  // 2
        Verdict v;
        const auto rows = read_csv(run1 / "unitarity.csv");
        if (rows.size() != 18) v.fail("expected 18 rows, got " + std::to_string(rows.size()));
        below(v, "unitarity defect", worst(rows, "defect"), 1e-8);
        if (v.pass) v.detail = "worst defect " + sci(worst(rows, "defect"));
        record(2, v);
    }
    const auto cn = read_csv(run1 / "cn-verify.csv");
    {  // 3
        Verdict v;
        if (count(cn, "ratio") != 18 || count(cn, "vanishing_at_1") != 6) v.fail("missing rows");
        below(v, "ratio defect", worst(cn, "defect", "ratio"), 1e-5);
        below(v, "c_n(1)/c_0(1)", worst(cn, "defect", "vanishing_at_1"), 1e-5);
        if (v.pass) v.detail = "ratio " + sci(worst(cn, "defect", "ratio")) + ", endpoint " + sci(worst(cn, "defect", "vanishing_at_1"));
        record(3, v);
    }
    {  // 4
        Verdict v;
        if (count(cn, "intertwining") != 10) v.fail("missing rows");
        below(v, "intertwining residual", worst(cn, "defect", "intertwining"), 1e-6);
        if (v.pass) v.detail = "worst residual " + sci(worst(cn, "defect", "intertwining"));
        record(4, v);
    }
    {  // 5
        Verdict v;
        if (count(cn, "gamma_invariance") != 13) v.fail("missing rows");
        below(v, "gamma defect", worst(cn, "defect", "gamma_invariance"), 1e-12);
        if (v.pass) v.detail = "worst defect " + sci(worst(cn, "defect", "gamma_invariance"));
        record(5, v);
    }
    {  // 6
        Verdict v;
        const auto rows = read_csv(run1 / "casimir.csv");
        if (rows.size() != 14) v.fail("expected 14 points");
        below(v, "Casimir defect", worst(rows, "defect"), 1e-3);
        below(v, "variance", worst(rows, "variance"), 1e-4);
        if (v.pass) v.detail = "worst defect " + sci(worst(rows, "defect")) + ", variance " + sci(worst(rows, "variance"));
        record(6, v);
    }
    {  // 7
        Verdict v;
        const sl2::Config ref = sl2::load_config(sl2::reference_config_path());
        const std::string table = slurp(run1 / "topology-table.csv");
        if (table != slurp(ref.topology_golden)) v.fail("table differs from the golden file");
        const auto rows = read_csv(run1 / "topology-table.csv");
        if (rows.size() < 20) v.fail("only " + std::to_string(rows.size()) + " descriptors");
        const auto summary = nlohmann::json::parse(slurp(run1 / "topology-table.json"));
        if (!summary.at("pass").get<bool>()) v.fail("proper-convergence cases disagree");
        if (v.pass) v.detail = std::to_string(rows.size()) + " descriptors match";
        record(7, v);
    }
    record(8, ncdl(run1, "i", 3));
    record(9, ncdl(run1, "ii", 3));
    {  // 10
        Verdict v = ncdl(run1, "iii", 4);
        for (const char* c : {"i", "ii", "iii"}) {
            const auto rows = read_csv(run1 / (std::string("ncdl-") + c + "-random.csv"));
            if (rows.size() != 100) v.fail(std::string("case ") + c + ": expected 100 random fields");
            const double b = worst(rows, "bound_defect"), inv = worst(rows, "involution_defect");
            if (!(b <= 1e-10)) v.fail(std::string("case ") + c + ": bound defect " + sci(b));
            if (!(inv <= 1e-12)) v.fail(std::string("case ") + c + ": involution defect " + sci(inv));
        }
        record(10, v);
    }
    {  // 11
        Verdict v;
        const auto rows = read_csv(run1 / "fields-roundtrip.csv");
        if (rows.size() != 20) v.fail("expected 20 samples");
        below(v, "round trip", worst(rows, "roundtrip"), 1e-8);
        below(v, "commutation", std::max(worst(rows, "commutation_at_one"), worst(rows, "commutation_at_zero")), 1e-10);
        for (const auto& r : rows) {
            if (r.at("parity_zero") != "true") v.fail("sample " + r.at("sample") + ": parity leak");
            if (r.at("f3_vanishing") != "true") v.fail("sample " + r.at("sample") + ": F3 tail");
        }
        if (v.pass) v.detail = "round trip " + sci(worst(rows, "roundtrip"));
        record(11, v);
    }
    {  // 12
        Verdict v;
        std::size_t files = 0;
        for (const auto& e : fs::directory_iterator(run1)) {
            if (e.path().extension() != ".csv") continue;
            ++files;
            const fs::path other = run2 / e.path().filename();
            if (!fs::exists(other) || slurp(e.path()) != slurp(other)) v.fail(e.path().filename().string() + " differs");
        }
        if (files == 0) v.fail("no CSV output");
        if (v.pass) v.detail = std::to_string(files) + " CSV files byte-identical";
        record(12, v);
    }

    bool all = true;
    for (const auto& [n, v] : results) {
        std::printf("%s criterion %d: %s\n", v.pass ? "PASS" : "FAIL", n, v.detail.c_str());
        all = all && v.pass;
    }
    if (t1 > 600.0) std::printf("note: cli all took %.0f s, above the 10 minute budget\n", t1);
    return all ? 0 : 1;
}
