#include "sl2/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sl2/fields.hpp"
#include "sl2/intertwiner.hpp"
#include "sl2/quadrature.hpp"

namespace sl2 {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9e", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

// Comma separated rows built in a fixed order.
class Csv {
public:
    explicit Csv(std::string header) { os_ << header << "\n"; }
    template <class... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((os_ << (first ? "" : ",") << cells, first = false), ...);
        os_ << "\n";
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

const char* yes_no(bool b) { return b ? "true" : "false"; }

// Runs `body` and fills in the timing.
template <class F>
SuiteReport timed(const std::string& suite, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport r = body();
    r.suite = suite;
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string label(const TestFunction& h) {
    std::string s;
    for (const auto& c : h.components()) s += "(" + std::to_string(c.l) + ";" + std::to_string(c.n) + ")";
    return s;
}

// Smooth, rapidly decaying and not K-biinvariant.
double haar_probe(const GroupElement& g) {
    const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
    return std::exp(-(a * a + b * b + c * c + d * d)) * (1.0 + 0.5 * a + 0.3 * b * c + 0.2 * d * d);
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"haar-check", "unitarity", "cn-verify", "casimir", "topology-table",
                                                "ncdl-i",     "ncdl-ii",   "ncdl-iii", "fields-roundtrip"};
    return names;
}

double Rng::uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

int Rng::integer(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

cplx Rng::complex_unit() {
    const double re = uniform(-1.0, 1.0);
    return {re, uniform(-1.0, 1.0)};
}

TestFunction random_test_function(Rng& rng, const WindowSizes& w) {
    const Parity parity = rng.integer(0, 1) == 0 ? Parity::Even : Parity::Odd;
    // stay inside the window and below the F3 horizon
    const int top = std::min(6, parity == Parity::Even ? w.even : w.odd);
    auto index = [&] {
        return parity == Parity::Even ? rng.integer(-top / 2, top / 2) * 2 : rng.integer(-(top + 1) / 2, (top - 1) / 2) * 2 + 1;
    };
    std::vector<Component> comps;
    const int count = rng.integer(1, 3);
    for (int i = 0; i < count; ++i) {
        Component c;
        c.l = index();
        c.n = index();
        const double t0 = rng.uniform(0.1, 0.5);
        c.chi = BumpProfile{t0, t0 + rng.uniform(0.5, 1.5), 1.0};
        c.weight = rng.complex_unit();
        comps.push_back(std::move(c));
    }
    return TestFunction(parity, std::move(comps));
}

RestrictedField random_restricted_field(NuCase which, Rng& rng, const WindowSizes& w) {
    RestrictedField psi;
    for (const DualPoint& p : limit_points(which)) {
        const KTypeWindow win = point_window(p, w);
        TruncatedOperator a = TruncatedOperator::zero(win);
        for (int i = 0; i < win.size(); ++i)
            for (int j = 0; j < win.size(); ++j) a.matrix()(i, j) = rng.complex_unit();
        psi.set(p, std::move(a));
    }
    return psi;
}

std::vector<TestFunction> ncdl_test_functions(NuCase which) {
    std::vector<std::pair<int, int>> types;
    switch (which) {
        case NuCase::I: types = {{1, 1}, {3, 1}, {-1, -3}}; break;
        case NuCase::II: types = {{0, 0}, {2, 2}, {4, -2}}; break;
        case NuCase::III: types = {{2, 4}, {-2, -4}, {2, 0}, {0, 0}}; break;
    }
    std::vector<TestFunction> out;
    for (auto [l, n] : types) out.push_back(reference_test_function(l, n, 0.2, 1.2));
    return out;
}

SuiteReport run_haar_check(const Config& c) {
    return timed("haar-check", [&] {
        const int n = c.haar_resolution;
        const Resolution res{n, n, n};
        const QuadratureRule iw = haar_rule(CoordinateSystem::Iwasawa, res, {{-3.5, 3.5}, {-8.0, 8.0}});
        const QuadratureRule ca = haar_rule(CoordinateSystem::Cartan, res, {{0.0, 5.0}});
        const GroupElement g0 = GroupElement::from_entries(1.0, 0.5, 0.4, 1.2);
        auto left = [&](const GroupElement& g) { return haar_probe(g0 * g); };
        auto right = [&](const GroupElement& g) { return haar_probe(g * g0); };

        const double i_iw = iw.integrate(haar_probe), i_ca = ca.integrate(haar_probe);
        struct Row {
            const char* check;
            const char* system;
            double value, reference;
        };
        const std::vector<Row> rows{{"left_invariance", "iwasawa", iw.integrate(left), i_iw},
                                    {"left_invariance", "cartan", ca.integrate(left), i_ca},
                                    {"right_invariance", "iwasawa", iw.integrate(right), i_iw},
                                    {"right_invariance", "cartan", ca.integrate(right), i_ca},
                                    {"agreement", "iwasawa_vs_cartan", i_iw, i_ca}};
        SuiteReport r;
        r.tolerance = c.tolerance("haar-check");
        Csv csv("check,system,value,reference,relative_defect");
        for (const auto& row : rows) {
            const double defect = std::abs(row.value - row.reference) / std::abs(row.reference);
            r.max_defect = std::max(r.max_defect, defect);
            csv.row(row.check, row.system, fmt(row.value), fmt(row.reference), fmt(defect));
        }
        r.pass = r.max_defect < r.tolerance;
        r.csv.push_back({"haar-check.csv", csv.str()});
        return r;
    });
}

SuiteReport run_unitarity(const Config& c) {
    return timed("unitarity", [&] {
        const std::vector<std::pair<std::string, GroupElement>> gs{
            {"a_1", GroupElement::diag_exp(1.0)},
            {"mu_1*a_0.5", GroupElement::unipotent(1.0) * GroupElement::diag_exp(0.5)},
            {"k_0.3*a_0.7", GroupElement::rotation(0.3) * GroupElement::diag_exp(0.7)}};
        SuiteReport r;
        r.tolerance = c.tolerance("unitarity");
        Csv csv("sign,v,g,defect");
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const KTypeWindow win(parity_of(s), c.windows.even);
            for (double v : {0.0, 0.5, 2.5}) {
                for (const auto& [name, g] : gs) {
                    const double d = unitarity_defect(s, v, g, win, c.fourier.circle);
                    r.max_defect = std::max(r.max_defect, d);
                    csv.row(to_string(s), fmt_short(v), name, fmt(d));
                }
            }
        }
        r.pass = r.max_defect < r.tolerance;
        r.csv.push_back({"unitarity.csv", csv.str()});
        return r;
    });
}

static std::vector<cplx> gamma_grid() {
    // 50 points between the odd integers, half of them off the real axis
    std::vector<cplx> u;
    for (int k = 0; k < 50; ++k) u.emplace_back(-4.9 + 0.2 * k, (k % 2) * 0.35);
    return u;
}

SuiteReport run_cn_verify(const Config& c) {
    return timed("cn-verify", [&] {
        SuiteReport r;
        r.tolerance = c.tolerance("cn-verify");
        const double tol_int = c.tolerance("cn-verify.intertwining"), tol_gamma = c.tolerance("cn-verify.gamma");
        KnappSteinOptions ks;
        ks.step = c.ks_step;
        Csv csv("check,n,u_re,u_im,value_re,value_im,defect");
        bool ok = true;

        // numeric quotient against the product formula
        for (cplx u : {cplx(0.5), cplx(1.5), cplx(2.0, 0.5)}) {
            const cplx c0 = knapp_stein_eigen(u, 0, ks).value;
            for (int n : {-6, -4, -2, 2, 4, 6}) {
                const cplx q = knapp_stein_eigen(u, n, ks).value / c0;
                const double d = std::abs(q - ratio_c(n, u));
                r.max_defect = std::max(r.max_defect, d);
                csv.row("ratio", n, fmt_short(u.real()), fmt_short(u.imag()), fmt(q.real()), fmt(q.imag()), fmt(d));
            }
        }
        // only the n = 0 eigenvalue survives at u = 1
        {
            const cplx c0 = knapp_stein_eigen(1.0, 0, ks).value;
            for (int n : {-6, -4, -2, 2, 4, 6}) {
                const cplx q = knapp_stein_eigen(1.0, n, ks).value / c0;
                const double d = std::abs(q);
                r.max_defect = std::max(r.max_defect, d);
                csv.row("vanishing_at_1", n, "1", "0", fmt(q.real()), fmt(q.imag()), fmt(d));
            }
        }
        ok = ok && r.max_defect < r.tolerance;

        const std::vector<std::pair<std::string, GroupElement>> gs{
            {"a_1", GroupElement::diag_exp(1.0)},
            {"mu_1*a_0.5", GroupElement::unipotent(1.0) * GroupElement::diag_exp(0.5)},
            {"k_0.3*a_0.7", GroupElement::rotation(0.3) * GroupElement::diag_exp(0.7)},
            {"mu_-0.8*k_1.1", GroupElement::unipotent(-0.8) * GroupElement::rotation(1.1)},
            {"a_-0.6*mu_0.4*k_2", GroupElement::diag_exp(-0.6) * GroupElement::unipotent(0.4) * GroupElement::rotation(2.0)}};
        const KTypeWindow six(Parity::Even, 6);
        double worst_int = 0.0;
        for (double u : {0.3, 0.6}) {
            for (const auto& [name, g] : gs) {
                const TruncatedOperator mp = rep_matrix(Sign::Plus, u, g, six, c.fourier.circle);
                const TruncatedOperator mm = rep_matrix(Sign::Plus, -u, g, six, c.fourier.circle);
                double d = 0.0;
                for (int l : six.indices())
                    for (int n : six.indices())
                        d = std::max(d, std::abs(ratio_c(l, u) * mp.entry(l, n) - ratio_c(n, u) * mm.entry(l, n)));
                worst_int = std::max(worst_int, d);
                csv.row("intertwining", name, fmt_short(u), "0", "", "", fmt(d));
            }
        }
        if (!(worst_int < tol_int)) {
            ok = false;
            r.notes.push_back("intertwining residual " + fmt(worst_int) + " exceeds " + fmt(tol_int));
        }

        double worst_gamma = 0.0;
        const std::vector<cplx> grid = gamma_grid();
        for (int n = -12; n <= 12; n += 2) {
            double d = 0.0;
            for (cplx u : grid) d = std::max(d, gamma_invariance_defect(n, u));
            worst_gamma = std::max(worst_gamma, d);
            csv.row("gamma_invariance", n, "grid50", "", "", "", fmt(d));
        }
        if (!(worst_gamma < tol_gamma)) {
            ok = false;
            r.notes.push_back("gamma invariance defect " + fmt(worst_gamma) + " exceeds " + fmt(tol_gamma));
        }
        r.pass = ok;
        r.csv.push_back({"cn-verify.csv", csv.str()});
        return r;
    });
}

SuiteReport run_casimir(const Config& c) {
    return timed("casimir", [&] {
        const std::vector<DualPoint> points{
            DualPoint::principal_even(0.0),         DualPoint::principal_even(1.5),
            DualPoint::principal_odd(0.5),          DualPoint::principal_odd(2.0),
            DualPoint::complementary(0.5),          DualPoint::discrete(1, Sign::Plus),
            DualPoint::discrete(1, Sign::Minus),    DualPoint::discrete(2, Sign::Plus),
            DualPoint::discrete(2, Sign::Minus),    DualPoint::discrete(3, Sign::Plus),
            DualPoint::discrete(3, Sign::Minus),    DualPoint::limit_discrete(Sign::Plus),
            DualPoint::limit_discrete(Sign::Minus), DualPoint::trivial()};
        CasimirOptions opts;
        opts.max_index = c.windows.even;
        opts.circle = c.fourier.circle;
        std::vector<std::future<CasimirEstimate>> jobs;
        for (const auto& p : points) jobs.push_back(std::async(std::launch::async, [&, p] { return casimir_numeric(p, opts); }));

        SuiteReport r;
        r.tolerance = c.tolerance("casimir");
        const double tol_var = c.tolerance("casimir.variance");
        double worst_var = 0.0;
        Csv csv("point,k_types,numeric,exact,defect,variance");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const CasimirEstimate e = jobs[i].get();
            const double exact = casimir_value(points[i]);
            const double d = std::abs(e.mean - exact);
            r.max_defect = std::max(r.max_defect, d);
            worst_var = std::max(worst_var, e.variance);
            std::string ks;
            for (int n : e.k_types) ks += (ks.empty() ? "" : " ") + std::to_string(n);
            csv.row(points[i].label(), ks, fmt(e.mean), fmt(exact), fmt(d), fmt(e.variance));
        }
        r.pass = r.max_defect < r.tolerance && worst_var < tol_var;
        if (!(worst_var < tol_var)) r.notes.push_back("cross K-type variance " + fmt(worst_var) + " exceeds " + fmt(tol_var));
        r.csv.push_back({"casimir.csv", csv.str()});
        return r;
    });
}

SuiteReport run_topology_table(const Config& c) {
    return timed("topology-table", [&] {
        std::ifstream is(c.topology_descriptors);
        if (!is) throw ConfigError("cannot open descriptor table " + c.topology_descriptors.string());
        const nlohmann::json j = nlohmann::json::parse(is);
        std::vector<SequenceDescriptor> table;
        for (const auto& d : j.at("descriptors")) table.push_back(descriptor_from_json(d));
        const std::string csv = topology_table_csv(table);

        SuiteReport r;
        r.tolerance = 0.0;
        std::ifstream gs(c.topology_golden, std::ios::binary);
        if (!gs) throw ConfigError("cannot open golden table " + c.topology_golden.string());
        const std::string golden((std::istreambuf_iterator<char>(gs)), std::istreambuf_iterator<char>());
        if (csv != golden) {
            std::istringstream a(csv), b(golden);
            std::string la, lb;
            int line = 0, bad = 0;
            while (true) {
                const bool ha = static_cast<bool>(std::getline(a, la)), hb = static_cast<bool>(std::getline(b, lb));
                if (!ha && !hb) break;
                ++line;
                if (!ha || !hb || la != lb) {
                    ++bad;
                    r.notes.push_back("golden mismatch at line " + std::to_string(line));
                }
            }
            r.max_defect += std::max(bad, 1);
        }
        for (const auto& pc : j.at("proper_cases")) {
            const SequenceDescriptor d = descriptor_from_json(pc);
            const bool expect = pc.at("expect_proper").get<bool>();
            if (is_properly_converging(d) != expect) {
                r.max_defect += 1.0;
                r.notes.push_back("properly converging mismatch for " + d.name);
            }
        }
        r.pass = r.max_defect == 0.0;
        r.csv.push_back({"topology-table.csv", csv});
        return r;
    });
}

SuiteReport run_ncdl(NuCase which, const Config& c) {
    const std::string suite = std::string("ncdl-") + to_string(which);
    return timed(suite, [&] {
        SuiteReport r;
        r.tolerance = c.tolerance(suite);
        const double tol_bound = c.tolerance("ncdl.bound"), tol_inv = c.tolerance("ncdl.involution");
        std::vector<double> grid;
        for (double s : c.boundary_schedule) grid.push_back(which == NuCase::III ? 1.0 - s : s);

        const std::vector<TestFunction> hs = ncdl_test_functions(which);
        std::vector<std::future<std::vector<NcdlPoint>>> jobs;
        for (const auto& h : hs)
            jobs.push_back(std::async(std::launch::async,
                                      [&, h] { return verify_ncdl_limit(which, h, grid, c.windows, c.fourier); }));

        Csv csv("h,parameter,distance,defect,bound");
        bool ok = true;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            const auto pts = jobs[i].get();
            for (std::size_t k = 0; k < pts.size(); ++k)
                csv.row(label(hs[i]), fmt_short(pts[k].parameter), fmt_short(c.boundary_schedule[k]), fmt(pts[k].defect),
                        fmt(pts[k].bound));
            const double last = pts.back().defect;
            r.max_defect = std::max(r.max_defect, last);
            if (!(last < r.tolerance)) {
                ok = false;
                r.notes.push_back(label(hs[i]) + ": defect " + fmt(last) + " at distance " +
                                  fmt_short(c.boundary_schedule.back()) + " is not below " + fmt(r.tolerance));
            }
            for (std::size_t k = 1; k < pts.size(); ++k) {
                if (pts[k].defect > pts[k - 1].defect) {
                    ok = false;
                    r.notes.push_back(label(hs[i]) + ": defect grows between distances " +
                                      fmt_short(c.boundary_schedule[k - 1]) + " and " + fmt_short(c.boundary_schedule[k]));
                }
            }
            if (pts.size() >= 2 && pts.back().defect > 0.0 && pts[pts.size() - 2].defect > 0.0) {
                const double rate = std::log(pts[pts.size() - 2].defect / pts.back().defect) /
                                    std::log(c.boundary_schedule[pts.size() - 2] / c.boundary_schedule.back());
                r.notes.push_back(label(hs[i]) + ": observed rate " + fmt_short(rate));
            }
        }

        Rng rng(c.seed + static_cast<std::uint64_t>(which));
        Csv rnd("sample,sup_norm,nu_norm,bound_defect,involution_defect");
        double worst_bound = 0.0, worst_inv = 0.0;
        for (int k = 0; k < c.random_fields; ++k) {
            const RestrictedField psi = random_restricted_field(which, rng, c.windows);
            const double b = nu_norm_bound_defect(which, psi, c.windows);
            const double inv = nu_involution_defect(which, psi, c.windows);
            worst_bound = std::max(worst_bound, b);
            worst_inv = std::max(worst_inv, inv);
            rnd.row(k, fmt(psi.sup_norm()), fmt(nu_apply(which, psi, c.windows).op_norm()), fmt(b), fmt(inv));
        }
        if (!(worst_bound <= tol_bound)) {
            ok = false;
            r.notes.push_back("norm bound defect " + fmt(worst_bound) + " exceeds " + fmt(tol_bound));
        }
        if (!(worst_inv <= tol_inv)) {
            ok = false;
            r.notes.push_back("involution defect " + fmt(worst_inv) + " exceeds " + fmt(tol_inv));
        }
        r.pass = ok;
        r.csv.push_back({suite + ".csv", csv.str()});
        r.csv.push_back({suite + "-random.csv", rnd.str()});
        return r;
    });
}

namespace {

std::vector<DualPoint> sampled_points(const FieldGrids& g) {
    std::vector<DualPoint> pts;
    for (double v : g.f1_imag) pts.push_back(DualPoint::principal_even(v));
    for (double u : g.f1_real) pts.push_back(DualPoint::complementary(u));
    for (double v : g.f2_imag)
        if (v > 0.0) pts.push_back(DualPoint::principal_odd(v));
    pts.push_back(DualPoint::trivial());
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        pts.push_back(DualPoint::discrete(1, s));
        pts.push_back(DualPoint::limit_discrete(s));
        for (int m = 2; m <= g.m_horizon; ++m) pts.push_back(DualPoint::discrete(m, s));
    }
    return pts;
}

double max_axis_difference(const std::map<double, TruncatedOperator>& a, const std::map<double, TruncatedOperator>& b) {
    double d = 0.0;
    for (const auto& [x, op] : a) d = std::max(d, (op - b.at(x)).op_norm());
    return d;
}

bool identical(const FieldTriple& a, const FieldTriple& b) {
    auto same = [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return false;
        for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
            if (i->first != j->first || !(i->second.rows() == j->second.rows()) ||
                !(i->second.cols() == j->second.cols()) || i->second.matrix() != j->second.matrix())
                return false;
        return true;
    };
    return same(a.f1_imag, b.f1_imag) && same(a.f1_real, b.f1_real) && same(a.f2, b.f2) && same(a.f3, b.f3);
}

struct FieldCheck {
    double roundtrip = 0.0;
    CommutationDefect commutation;
    bool parity_zero = true;
    bool f3_vanishing = true;
    double star = 0.0;
    bool serialization = true;
};

FieldCheck check_field(const TestFunction& a, const Config& c, const std::filesystem::path* dump) {
    const FieldGrids grids = c.field_grids();
    const FieldTriple f = forward(a, grids, c.fourier);
    FieldCheck out;
    for (const DualPoint& p : sampled_points(grids)) {
        const BackwardResult b = backward(f, p);
        out.roundtrip = std::max(out.roundtrip, (b.op - fourier_at(p, a, c.windows, c.fourier)).op_norm());
    }
    out.commutation = commutation_defect(f);

    // the other parity's field must vanish identically
    const auto& other = a.parity() == Parity::Odd ? std::vector{&f.f1_imag, &f.f1_real} : std::vector{&f.f2};
    for (const auto* axis : other)
        for (const auto& [x, op] : *axis)
            if (!op.matrix().isZero(0.0)) out.parity_zero = false;

    int reach = 0;
    for (const auto& comp : a.components()) reach = std::max({reach, std::abs(comp.l), std::abs(comp.n)});
    for (const auto& [m, op] : f.f3)
        if (std::abs(m) > reach && !op.matrix().isZero(0.0)) out.f3_vanishing = false;

    const FieldTriple lhs = f.adjoint(), rhs = forward(a.adjoint(), grids, c.fourier);
    out.star = std::max({max_axis_difference(lhs.f1_imag, rhs.f1_imag), max_axis_difference(lhs.f1_real, rhs.f1_real),
                         max_axis_difference(lhs.f2, rhs.f2)});

    if (dump) {
        write_field_triple(f, *dump);
        out.serialization = identical(f, read_field_triple(*dump));
    }
    return out;
}

}  // namespace

SuiteReport run_fields_roundtrip(const Config& c) {
    return timed("fields-roundtrip", [&] {
        SuiteReport r;
        r.tolerance = c.tolerance("fields-roundtrip");
        const double tol_comm = c.tolerance("fields.commutation"), tol_star = c.tolerance("fields.star");
        Rng rng(c.seed);
        std::vector<TestFunction> as;
        for (int k = 0; k < c.random_functions; ++k) as.push_back(random_test_function(rng, c.windows));
        const std::filesystem::path dump = c.output_dir / "fields-roundtrip-sample";

        std::vector<std::future<FieldCheck>> jobs;
        for (std::size_t k = 0; k < as.size(); ++k)
            jobs.push_back(std::async(std::launch::async, [&, k] { return check_field(as[k], c, k == 0 ? &dump : nullptr); }));

        Csv csv("sample,parity,components,roundtrip,commutation_at_one,commutation_at_zero,parity_zero,f3_vanishing,star,"
                "serialization");
        bool ok = true;
        double worst_comm = 0.0, worst_star = 0.0;
        for (std::size_t k = 0; k < as.size(); ++k) {
            const FieldCheck fc = jobs[k].get();
            r.max_defect = std::max(r.max_defect, fc.roundtrip);
            worst_comm = std::max({worst_comm, fc.commutation.at_one, fc.commutation.at_zero});
            worst_star = std::max(worst_star, fc.star);
            ok = ok && fc.parity_zero && fc.f3_vanishing && fc.serialization;
            if (!fc.parity_zero) r.notes.push_back("sample " + std::to_string(k) + ": field of the other parity is nonzero");
            if (!fc.f3_vanishing) r.notes.push_back("sample " + std::to_string(k) + ": F3 nonzero beyond the bi-type reach");
            if (!fc.serialization) r.notes.push_back("sample " + std::to_string(k) + ": serialization round trip changed data");
            csv.row(k, to_string(as[k].parity()), label(as[k]), fmt(fc.roundtrip), fmt(fc.commutation.at_one),
                    fmt(fc.commutation.at_zero), yes_no(fc.parity_zero), yes_no(fc.f3_vanishing), fmt(fc.star),
                    yes_no(fc.serialization));
        }
        if (!(worst_comm < tol_comm)) {
            ok = false;
            r.notes.push_back("commutation defect " + fmt(worst_comm) + " exceeds " + fmt(tol_comm));
        }
        if (!(worst_star < tol_star)) {
            ok = false;
            r.notes.push_back("*-compatibility defect " + fmt(worst_star) + " exceeds " + fmt(tol_star));
        }
        r.pass = ok && r.max_defect < r.tolerance;
        r.csv.push_back({"fields-roundtrip.csv", csv.str()});
        return r;
    });
}

SuiteReport run_suite(const std::string& name, const Config& c) {
    if (name == "haar-check") return run_haar_check(c);
    if (name == "unitarity") return run_unitarity(c);
    if (name == "cn-verify") return run_cn_verify(c);
    if (name == "casimir") return run_casimir(c);
    if (name == "topology-table") return run_topology_table(c);
    if (name == "ncdl-i") return run_ncdl(NuCase::I, c);
    if (name == "ncdl-ii") return run_ncdl(NuCase::II, c);
    if (name == "ncdl-iii") return run_ncdl(NuCase::III, c);
    if (name == "fields-roundtrip") return run_fields_roundtrip(c);
    throw std::invalid_argument("unknown suite \"" + name + "\"");
}

std::vector<SuiteReport> run_all(const Config& c) {
    std::vector<std::future<SuiteReport>> jobs;
    for (const auto& name : suite_names())
        jobs.push_back(std::async(std::launch::async, [&c, name] { return run_suite(name, c); }));
    std::vector<SuiteReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

nlohmann::json summary_json(const SuiteReport& r) {
    nlohmann::json j = {{"suite", r.suite},
                        {"pass", r.pass},
                        {"max_defect", r.max_defect},
                        {"tolerance", r.tolerance},
                        {"runtime_ms", r.runtime_ms}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

void write_report(const SuiteReport& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& f : r.csv) {
        std::ofstream os(dir / f.name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + (dir / f.name).string());
        os << f.content;
    }
    std::ofstream(dir / (r.suite + ".json")) << summary_json(r).dump(2) << "\n";
}

}  // namespace sl2
