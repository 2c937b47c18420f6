#include "sl2/fields.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "sl2/intertwiner.hpp"
#include "sl2/norm_control.hpp"

namespace sl2 {

namespace {

using OpMap = std::map<double, TruncatedOperator>;

constexpr double kCoordTol = 1e-14;

KTypeWindow even_full(const FieldGrids& g) { return {Parity::Even, g.windows.even}; }
KTypeWindow odd_full(const FieldGrids& g) { return {Parity::Odd, g.windows.odd}; }

// Piecewise linear evaluation of a sampled axis.
BackwardResult interpolate(const OpMap& axis, double x) {
    if (axis.empty()) throw std::invalid_argument("backward: empty axis");
    auto hi = axis.lower_bound(x - kCoordTol);
    if (hi != axis.end() && std::abs(hi->first - x) <= kCoordTol) return {hi->second, 0.0, false, 0.0};
    if (hi == axis.end()) {
        const auto& last = std::prev(axis.end())->second;
        return {TruncatedOperator(last.rows(), last.cols()), 0.0, true, last.op_norm()};
    }
    if (hi == axis.begin()) throw std::out_of_range("backward: coordinate below the sampled grid");
    auto lo = std::prev(hi);
    const double w = (x - lo->first) / (hi->first - lo->first);
    BackwardResult r{lo->second * (1.0 - w) + hi->second * w, 0.0, false, 0.0};
    r.error_estimate = 0.5 * (hi->second - lo->second).op_norm();
    return r;
}

template <class Key>
void write_blob(const TruncatedOperator& a, const std::filesystem::path& file) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    const auto& m = a.matrix();
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            double parts[2] = {m(i, j).real(), m(i, j).imag()};
            for (double& d : parts) {
                std::uint64_t bits;
                std::memcpy(&bits, &d, sizeof bits);
                if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
                os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
            }
        }
    }
}

Eigen::MatrixXcd read_blob(const std::filesystem::path& file, int rows, int cols) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + file.string());
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            double parts[2];
            for (double& d : parts) {
                std::uint64_t bits;
                if (!is.read(reinterpret_cast<char*>(&bits), sizeof bits))
                    throw std::runtime_error("truncated blob " + file.string());
                if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
                std::memcpy(&d, &bits, sizeof d);
            }
            m(i, j) = {parts[0], parts[1]};
        }
    }
    return m;
}

nlohmann::json window_json(const KTypeWindow& w) {
    return {{"parity", to_string(w.parity())}, {"max_index", w.max_index()}, {"lo", w.lo()}, {"hi", w.hi()}};
}

KTypeWindow window_from(const nlohmann::json& j) {
    const Parity p = j.at("parity").get<std::string>() == "even" ? Parity::Even : Parity::Odd;
    return KTypeWindow::range(p, j.at("max_index").get<int>(), j.at("lo").get<int>(), j.at("hi").get<int>());
}

std::string coord_text(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void FieldGrids::validate() const {
    auto sorted_unique = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) throw std::invalid_argument(std::string("field grid ") + name + " is empty");
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) throw std::invalid_argument(std::string("field grid ") + name + " is not increasing");
    };
    sorted_unique(f1_imag, "f1_imag");
    sorted_unique(f1_real, "f1_real");
    sorted_unique(f2_imag, "f2_imag");
    if (f1_imag.front() != 0.0 || f2_imag.front() != 0.0)
        throw std::invalid_argument("field grids on imaginary axes must start at 0");
    if (!(f1_real.front() > 0.0) || !(f1_real.back() < 1.0))
        throw std::invalid_argument("field grid f1_real must lie inside (0,1)");
    if (m_horizon < 2) throw std::invalid_argument("field m_horizon must be >= 2");
    if (!(tail_tolerance > 0.0)) throw std::invalid_argument("field tail_tolerance must be positive");
}

FieldTriple FieldTriple::adjoint() const {
    FieldTriple out;
    out.grids = grids;
    for (const auto& [x, a] : f1_imag) out.f1_imag.emplace(x, a.adjoint());
    for (const auto& [x, a] : f1_real) out.f1_real.emplace(x, a.adjoint());
    for (const auto& [x, a] : f2) out.f2.emplace(x, a.adjoint());
    // F3 is kept in the L^2 window picture, where the matrix adjoint is not the Hilbert adjoint.
    out.f3 = f3;
    return out;
}

FieldTriple forward(const TestFunction& a, const FieldGrids& grids, const FourierResolution& res) {
    grids.validate();
    const WindowSizes& w = grids.windows;
    FieldTriple f;
    f.grids = grids;

    // Every sample is independent; futures keep the assembly order fixed.
    using Task = std::function<TruncatedOperator()>;
    std::vector<std::pair<std::function<void(TruncatedOperator)>, Task>> jobs;
    auto add = [&](auto store, Task t) { jobs.emplace_back(std::move(store), std::move(t)); };

    for (double v : grids.f1_imag)
        add([&f, v](TruncatedOperator o) { f.f1_imag.emplace(v, std::move(o)); },
            [&, v] { return fourier_at(DualPoint::principal_even(v), a, w, res); });
    for (double u : grids.f1_real)
        add([&f, u](TruncatedOperator o) { f.f1_real.emplace(u, std::move(o)); },
            [&, u] { return fourier_at(DualPoint::complementary(u), a, w, res); });
    add([&f](TruncatedOperator o) { f.f1_real.emplace(1.0, std::move(o)); }, [&] {
        if (a.empty() || a.parity() != Parity::Even) return TruncatedOperator::zero(even_full(grids));
        return nu_apply(NuCase::III, restricted_fourier(NuCase::III, a, w, res), w);
    });
    for (double v : grids.f2_imag) {
        if (v == 0.0) {
            add([&f](TruncatedOperator o) { f.f2.emplace(0.0, std::move(o)); }, [&] {
                if (a.empty() || a.parity() != Parity::Odd) return TruncatedOperator::zero(odd_full(grids));
                return nu_apply(NuCase::I, restricted_fourier(NuCase::I, a, w, res), w);
            });
        } else {
            add([&f, v](TruncatedOperator o) { f.f2.emplace(v, std::move(o)); },
                [&, v] { return fourier_at(DualPoint::principal_odd(v), a, w, res); });
        }
    }
    for (int m = 2; m <= grids.m_horizon; ++m) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const int key = s == Sign::Plus ? m : -m;
            add([&f, key](TruncatedOperator o) { f.f3.emplace(key, std::move(o)); },
                [&, m, s] { return fourier_at(DualPoint::discrete(m, s), a, w, res); });
        }
    }

    std::vector<std::future<TruncatedOperator>> futures;
    futures.reserve(jobs.size());
    for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job.second));
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].first(futures[i].get());
    return f;
}

BackwardResult backward(const FieldTriple& f, const DualPoint& p) {
    const WindowSizes& w = f.grids.windows;
    switch (p.kind()) {
        case DualKind::PrincipalEven: return interpolate(f.f1_imag, p.parameter());
        case DualKind::Complementary: {
            // the real branch of I_1 joins the imaginary one at 0
            OpMap branch = f.f1_real;
            branch.emplace(0.0, f.f1_imag.at(0.0));
            return interpolate(branch, p.parameter());
        }
        case DualKind::PrincipalOdd: return interpolate(f.f2, p.parameter());
        case DualKind::Trivial: {
            const KTypeWindow zero = point_window(p, w);
            return {f.f1_at_one().restrict_to(zero, zero), 0.0, false, 0.0};
        }
        case DualKind::LimitDiscrete: {
            const KTypeWindow half = point_window(p, w);
            return {f.f2_at_zero().restrict_to(half, half), 0.0, false, 0.0};
        }
        case DualKind::Discrete: {
            const KTypeWindow win = point_window(p, w);
            if (p.m() == 1) {
                const RescalingOperator k = p.side() == Sign::Plus ? RescalingOperator(PositiveEndpoint{}, win)
                                                                   : RescalingOperator(NegativeEndpoint{}, win);
                return {k.unconjugate(f.f1_at_one().restrict_to(win, win)), 0.0, false, 0.0};
            }
            const int key = p.side() == Sign::Plus ? p.m() : -p.m();
            auto it = f.f3.find(key);
            if (it != f.f3.end()) return {it->second, 0.0, false, 0.0};
            double cert = 0.0;
            for (int edge : {f.grids.m_horizon, -f.grids.m_horizon}) {
                auto e = f.f3.find(edge);
                if (e != f.f3.end()) cert = std::max(cert, e->second.op_norm());
            }
            return {TruncatedOperator(win, win), 0.0, true, cert};
        }
    }
    throw std::invalid_argument("backward: unknown dual point");
}

double sup_norm(const FieldTriple& f) {
    double s = 0.0;
    for (const auto* axis : {&f.f1_imag, &f.f1_real, &f.f2})
        for (const auto& [x, a] : *axis) s = std::max(s, a.op_norm());
    for (const auto& [m, a] : f.f3) s = std::max(s, a.op_norm());
    return s;
}

CommutationDefect commutation_defect(const FieldTriple& f) {
    CommutationDefect d;
    const TruncatedOperator& one = f.f1_at_one();
    for (Support s : {Support::Positive, Support::Negative, Support::Zero})
        d.at_one = std::max(d.at_one, commutator_norm(one, TruncatedOperator::projection(one.rows(), s)));
    const TruncatedOperator& zero = f.f2_at_zero();
    for (Support s : {Support::Positive, Support::Negative})
        d.at_zero = std::max(d.at_zero, commutator_norm(zero, TruncatedOperator::projection(zero.rows(), s)));
    return d;
}

VanishingReport vanishing_check(const FieldTriple& f) {
    VanishingReport r;
    const double scale = sup_norm(f);
    const double threshold = f.grids.tail_tolerance * scale;
    auto check = [&](const std::string& axis, double norm) {
        r.tail_norms[axis] = norm;
        if (scale > 0.0 && norm > threshold) {
            r.pass = false;
            r.offending.push_back(axis);
        }
    };
    check("F1", std::prev(f.f1_imag.end())->second.op_norm());
    check("F2", std::prev(f.f2.end())->second.op_norm());
    const int h = f.grids.m_horizon;
    check("F3+", f.f3.count(h) ? f.f3.at(h).op_norm() : 0.0);
    check("F3-", f.f3.count(-h) ? f.f3.at(-h).op_norm() : 0.0);
    return r;
}

std::map<std::string, double> continuity_profile(const FieldTriple& f) {
    auto axis_max = [](const OpMap& m) {
        double d = 0.0;
        for (auto it = m.begin(); it != m.end() && std::next(it) != m.end(); ++it)
            d = std::max(d, (std::next(it)->second - it->second).op_norm());
        return d;
    };
    OpMap real = f.f1_real;
    real.emplace(0.0, f.f1_imag.at(0.0));
    return {{"F1.imag", axis_max(f.f1_imag)}, {"F1.real", axis_max(real)}, {"F2", axis_max(f.f2)}};
}

std::string norm_profile_csv(const FieldTriple& f) {
    std::ostringstream os;
    os << "axis,coordinate,op_norm\n";
    auto row = [&](const char* axis, const std::string& x, const TruncatedOperator& a) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12e", a.op_norm());
        os << axis << "," << x << "," << buf << "\n";
    };
    for (const auto& [x, a] : f.f1_imag) row("F1.imag", coord_text(x), a);
    for (const auto& [x, a] : f.f1_real) row("F1.real", coord_text(x), a);
    for (const auto& [x, a] : f.f2) row("F2.imag", coord_text(x), a);
    for (const auto& [m, a] : f.f3) row("F3", std::to_string(m), a);
    return os.str();
}

void write_field_triple(const FieldTriple& f, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::json samples = nlohmann::json::array();
    int counter = 0;
    auto put = [&](const char* axis, double coord, const TruncatedOperator& a) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%03d.bin", axis, counter++);
        write_blob<double>(a, dir / name);
        samples.push_back({{"axis", axis},
                           {"coordinate", coord},
                           {"rows", window_json(a.rows())},
                           {"cols", window_json(a.cols())},
                           {"file", name}});
    };
    for (const auto& [x, a] : f.f1_imag) put("F1.imag", x, a);
    for (const auto& [x, a] : f.f1_real) put("F1.real", x, a);
    for (const auto& [x, a] : f.f2) put("F2.imag", x, a);
    for (const auto& [m, a] : f.f3) put("F3", m, a);
    const FieldGrids& g = f.grids;
    nlohmann::json manifest = {
        {"schema_version", 1},
        {"grids",
         {{"f1_imag", g.f1_imag},
          {"f1_real", g.f1_real},
          {"f2_imag", g.f2_imag},
          {"m_horizon", g.m_horizon},
          {"window_even", g.windows.even},
          {"window_odd", g.windows.odd},
          {"tail_tolerance", g.tail_tolerance}}},
        {"samples", samples}};
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << "\n";
    std::ofstream(dir / "norms.csv") << norm_profile_csv(f);
}

FieldTriple read_field_triple(const std::filesystem::path& dir) {
    std::ifstream is(dir / "manifest.json");
    if (!is) throw std::runtime_error("missing manifest in " + dir.string());
    const nlohmann::json manifest = nlohmann::json::parse(is);
    if (manifest.at("schema_version").get<int>() != 1) throw std::runtime_error("unsupported field schema version");
    FieldTriple f;
    const auto& g = manifest.at("grids");
    f.grids.f1_imag = g.at("f1_imag").get<std::vector<double>>();
    f.grids.f1_real = g.at("f1_real").get<std::vector<double>>();
    f.grids.f2_imag = g.at("f2_imag").get<std::vector<double>>();
    f.grids.m_horizon = g.at("m_horizon").get<int>();
    f.grids.windows = {g.at("window_even").get<int>(), g.at("window_odd").get<int>()};
    f.grids.tail_tolerance = g.at("tail_tolerance").get<double>();
    for (const auto& s : manifest.at("samples")) {
        const KTypeWindow rows = window_from(s.at("rows")), cols = window_from(s.at("cols"));
        TruncatedOperator a(rows, cols, read_blob(dir / s.at("file").get<std::string>(), rows.size(), cols.size()));
        const std::string axis = s.at("axis").get<std::string>();
        const double x = s.at("coordinate").get<double>();
        if (axis == "F1.imag")
            f.f1_imag.emplace(x, std::move(a));
        else if (axis == "F1.real")
            f.f1_real.emplace(x, std::move(a));
        else if (axis == "F2.imag")
            f.f2.emplace(x, std::move(a));
        else if (axis == "F3")
            f.f3.emplace(static_cast<int>(x), std::move(a));
        else
            throw std::runtime_error("unknown axis \"" + axis + "\" in manifest");
    }
    return f;
}

}  // namespace sl2
