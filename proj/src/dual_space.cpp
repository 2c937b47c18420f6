#include "sl2/dual_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sl2/intertwiner.hpp"

namespace sl2 {

namespace {

std::string num(double x) {
    if (std::isinf(x)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

const char* side_char(Sign s) { return s == Sign::Plus ? "+" : "-"; }

Sign side_from(const std::string& s) {
    if (s == "+") return Sign::Plus;
    if (s == "-") return Sign::Minus;
    throw std::invalid_argument("sign must be \"+\" or \"-\", got \"" + s + "\"");
}

std::set<DualPoint> family_limit(const Stage& st) {
    const double x = st.limit;
    switch (st.family) {
        case Family::PrincipalEven:
            if (std::isinf(x)) return {};
            if (!(x >= 0.0)) throw std::invalid_argument("descriptor: principal even limit must be >= 0");
            return {DualPoint::principal_even(x)};
        case Family::PrincipalOdd:
            if (std::isinf(x)) return {};
            if (!(x >= 0.0)) throw std::invalid_argument("descriptor: principal odd limit must be >= 0");
            if (x == 0.0) return {DualPoint::limit_discrete(Sign::Plus), DualPoint::limit_discrete(Sign::Minus)};
            return {DualPoint::principal_odd(x)};
        case Family::Complementary:
            if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("descriptor: complementary limit must lie in [0,1]");
            if (x == 0.0) return {DualPoint::principal_even(0.0)};
            if (x == 1.0)
                return {DualPoint::discrete(1, Sign::Plus), DualPoint::discrete(1, Sign::Minus), DualPoint::trivial()};
            return {DualPoint::complementary(x)};
        case Family::DiscretePlus:
        case Family::DiscreteMinus:
            // an integer sequence with a finite limit is eventually constant
            if (!std::isinf(x)) throw std::invalid_argument("descriptor: discrete series stages need limit inf");
            return {};
    }
    throw std::invalid_argument("descriptor: unknown family");
}

std::set<DualPoint> stage_limit(const Stage& st) {
    if (st.constant) {
        if (!st.point) throw std::invalid_argument("descriptor: constant stage without a point");
        return {*st.point};
    }
    return family_limit(st);
}

const char* family_name(Family f) {
    switch (f) {
        case Family::PrincipalEven: return "principal_even";
        case Family::PrincipalOdd: return "principal_odd";
        case Family::Complementary: return "complementary";
        case Family::DiscretePlus: return "discrete_plus";
        case Family::DiscreteMinus: return "discrete_minus";
    }
    return "?";
}

Family family_from(const std::string& s) {
    for (Family f : {Family::PrincipalEven, Family::PrincipalOdd, Family::Complementary, Family::DiscretePlus,
                     Family::DiscreteMinus})
        if (s == family_name(f)) return f;
    throw std::invalid_argument("descriptor: unknown family \"" + s + "\"");
}

}  // namespace

DualPoint DualPoint::principal_even(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("PrincipalEven needs v >= 0");
    return {DualKind::PrincipalEven, v, 0, Sign::Plus};
}

DualPoint DualPoint::principal_odd(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("PrincipalOdd needs v > 0");
    return {DualKind::PrincipalOdd, v, 0, Sign::Minus};
}

DualPoint DualPoint::complementary(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("Complementary needs 0 < u < 1");
    return {DualKind::Complementary, u, 0, Sign::Plus};
}

DualPoint DualPoint::discrete(int m, Sign side) {
    if (m < 1) throw std::invalid_argument("Discrete needs m >= 1");
    return {DualKind::Discrete, 0.0, m, side};
}

DualPoint DualPoint::limit_discrete(Sign side) { return {DualKind::LimitDiscrete, 0.0, 0, side}; }

DualPoint DualPoint::trivial() { return {DualKind::Trivial, 0.0, 0, Sign::Plus}; }

std::weak_ordering DualPoint::operator<=>(const DualPoint& o) const {
    if (auto c = stratum(*this) <=> stratum(o); c != 0) return c;
    if (auto c = m_ <=> o.m_; c != 0) return c;
    if (auto c = static_cast<int>(side_) <=> static_cast<int>(o.side_); c != 0) return c;
    if (param_ < o.param_) return std::weak_ordering::less;
    if (param_ > o.param_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

std::string DualPoint::label() const {
    switch (kind_) {
        case DualKind::PrincipalEven: return "P+(" + num(param_) + ")";
        case DualKind::PrincipalOdd: return "P-(" + num(param_) + ")";
        case DualKind::Complementary: return "C(" + num(param_) + ")";
        case DualKind::Discrete: return "D" + std::to_string(m_) + side_char(side_);
        case DualKind::LimitDiscrete: return std::string("D") + side_char(side_);
        case DualKind::Trivial: return "F1";
    }
    return "?";
}

double casimir_value(const DualPoint& p) {
    switch (p.kind()) {
        case DualKind::PrincipalEven:
        case DualKind::PrincipalOdd: return 0.25 * (-p.parameter() * p.parameter() - 1.0);
        case DualKind::Complementary: return 0.25 * (p.parameter() * p.parameter() - 1.0);
        case DualKind::Discrete: return 0.25 * (double(p.m()) * p.m() - 1.0);
        case DualKind::LimitDiscrete: return -0.25;
        case DualKind::Trivial: return 0.0;
    }
    return 0.0;
}

int stratum(const DualPoint& p) {
    switch (p.kind()) {
        case DualKind::Trivial: return 0;
        case DualKind::Discrete:
            if (p.m() == 1) return p.side() == Sign::Plus ? 1 : 2;
            return 5;
        case DualKind::LimitDiscrete: return p.side() == Sign::Plus ? 3 : 4;
        case DualKind::PrincipalEven: return 6;
        case DualKind::PrincipalOdd: return 7;
        case DualKind::Complementary: return 8;
    }
    return -1;
}

FieldCoordinate parametrize(const DualPoint& p) {
    switch (p.kind()) {
        case DualKind::PrincipalEven: return {1, cplx(0.0, p.parameter())};
        case DualKind::Complementary: return {1, cplx(p.parameter(), 0.0)};
        case DualKind::Trivial: return {1, 1.0};
        case DualKind::Discrete:
            if (p.m() == 1) return {1, 1.0};
            return {3, cplx(p.side() == Sign::Plus ? p.m() : -p.m(), 0.0)};
        case DualKind::PrincipalOdd: return {2, cplx(0.0, p.parameter())};
        case DualKind::LimitDiscrete: return {2, 0.0};
    }
    return {};
}

Realization realize(const DualPoint& p, int max_index) {
    Realization r{Sign::Plus, 0.0, {}};
    auto fill = [&](Parity par, auto keep) {
        for (int n = -max_index; n <= max_index; ++n)
            if (parity_of(n) == par && keep(n)) r.k_types.push_back(n);
    };
    switch (p.kind()) {
        case DualKind::PrincipalEven:
            r = {Sign::Plus, cplx(0.0, p.parameter()), {}};
            fill(Parity::Even, [](int) { return true; });
            break;
        case DualKind::PrincipalOdd:
            r = {Sign::Minus, cplx(0.0, p.parameter()), {}};
            fill(Parity::Odd, [](int) { return true; });
            break;
        case DualKind::Complementary:
            // conjugation by K_u leaves the diagonal unchanged
            r = {Sign::Plus, p.parameter(), {}};
            fill(Parity::Even, [](int) { return true; });
            break;
        case DualKind::Discrete: {
            const int m = p.m();
            r = {m % 2 == 1 ? Sign::Plus : Sign::Minus, double(m), {}};
            const bool plus = p.side() == Sign::Plus;
            fill(parity_of(m + 1), [&](int n) { return plus ? n >= m + 1 : n <= -m - 1; });
            break;
        }
        case DualKind::LimitDiscrete: {
            const bool plus = p.side() == Sign::Plus;
            r = {Sign::Minus, 0.0, {}};
            fill(Parity::Odd, [&](int n) { return plus ? n > 0 : n < 0; });
            break;
        }
        case DualKind::Trivial:
            // constants span the invariant line of P^{+,-1}
            r = {Sign::Plus, -1.0, {0}};
            break;
    }
    if (r.k_types.empty())
        throw std::invalid_argument("realize: window |n| <= " + std::to_string(max_index) + " carries no K-type of " +
                                    p.label());
    return r;
}

CasimirEstimate casimir_numeric(const DualPoint& p, const CasimirOptions& opts) {
    return casimir_numeric(p, casimir_dual_basis(), opts);
}

CasimirEstimate casimir_numeric(const DualPoint& p, const std::array<CasimirPair, 3>& pairs,
                                const CasimirOptions& opts) {
    const Realization r = realize(p, opts.max_index);
    CasimirEstimate out;
    out.k_types = r.k_types;
    for (int n : r.k_types) {
        cplx total = 0.0;
        for (const auto& [x, y] : pairs) {
            auto f = [&](double s, double t) {
                return matrix_element(r.sign, r.u, exp_one_param(x, s) * exp_one_param(y, t), n, n, opts.circle);
            };
            auto mixed = [&](double h) { return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h); };
            total += (4.0 * mixed(0.5 * opts.step) - mixed(opts.step)) / 3.0;
        }
        out.values.push_back(total.real());
        out.max_imag = std::max(out.max_imag, std::abs(total.imag()));
    }
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.mean = sum / out.values.size();
    double var = 0.0;
    for (double v : out.values) var += (v - out.mean) * (v - out.mean);
    out.variance = var / out.values.size();
    return out;
}

LimitSet limit_set(const SequenceDescriptor& s) {
    if (s.stages.empty()) throw std::invalid_argument("descriptor \"" + s.name + "\" has no stages");
    // a limit of an interleaved sequence is a limit of every interleaved tail
    std::set<DualPoint> acc = stage_limit(s.stages.front());
    for (std::size_t i = 1; i < s.stages.size(); ++i) {
        const std::set<DualPoint> next = stage_limit(s.stages[i]);
        std::set<DualPoint> both;
        std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(), std::inserter(both, both.end()));
        acc = std::move(both);
    }
    if (acc.empty()) return std::nullopt;
    return acc;
}

bool is_properly_converging(const SequenceDescriptor& s) {
    if (s.stages.empty()) throw std::invalid_argument("descriptor \"" + s.name + "\" has no stages");
    const std::set<DualPoint> first = stage_limit(s.stages.front());
    if (first.empty()) return false;
    for (const auto& st : s.stages)
        if (stage_limit(st) != first) return false;
    return true;
}

std::string format_limit_set(const LimitSet& ls) {
    if (!ls) return "none";
    std::string out = "{";
    bool first = true;
    for (const auto& p : *ls) {
        if (!first) out += " ";
        out += p.label();
        first = false;
    }
    return out + "}";
}

DualPoint dual_point_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "principal_even") return DualPoint::principal_even(j.at("v").get<double>());
    if (type == "principal_odd") return DualPoint::principal_odd(j.at("v").get<double>());
    if (type == "complementary") return DualPoint::complementary(j.at("u").get<double>());
    if (type == "discrete") return DualPoint::discrete(j.at("m").get<int>(), side_from(j.at("sign").get<std::string>()));
    if (type == "limit_discrete") return DualPoint::limit_discrete(side_from(j.at("sign").get<std::string>()));
    if (type == "trivial") return DualPoint::trivial();
    throw std::invalid_argument("unknown dual point type \"" + type + "\"");
}

nlohmann::json dual_point_to_json(const DualPoint& p) {
    switch (p.kind()) {
        case DualKind::PrincipalEven: return {{"type", "principal_even"}, {"v", p.parameter()}};
        case DualKind::PrincipalOdd: return {{"type", "principal_odd"}, {"v", p.parameter()}};
        case DualKind::Complementary: return {{"type", "complementary"}, {"u", p.parameter()}};
        case DualKind::Discrete: return {{"type", "discrete"}, {"m", p.m()}, {"sign", side_char(p.side())}};
        case DualKind::LimitDiscrete: return {{"type", "limit_discrete"}, {"sign", side_char(p.side())}};
        case DualKind::Trivial: return {{"type", "trivial"}};
    }
    return {};
}

SequenceDescriptor descriptor_from_json(const nlohmann::json& j) {
    SequenceDescriptor s;
    s.name = j.at("name").get<std::string>();
    for (const auto& st : j.at("stages")) {
        Stage stage;
        if (st.contains("constant")) {
            stage.constant = true;
            stage.point = dual_point_from_json(st.at("constant"));
        } else {
            stage.family = family_from(st.at("family").get<std::string>());
            const auto& lim = st.at("limit");
            if (lim.is_string()) {
                if (lim.get<std::string>() != "inf") throw std::invalid_argument("descriptor: limit must be a number or \"inf\"");
                stage.limit = std::numeric_limits<double>::infinity();
            } else {
                stage.limit = lim.get<double>();
            }
        }
        s.stages.push_back(std::move(stage));
    }
    if (s.stages.empty()) throw std::invalid_argument("descriptor \"" + s.name + "\" has no stages");
    return s;
}

nlohmann::json descriptor_to_json(const SequenceDescriptor& s) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& st : s.stages) {
        if (st.constant) {
            stages.push_back({{"constant", dual_point_to_json(*st.point)}});
        } else if (std::isinf(st.limit)) {
            stages.push_back({{"family", family_name(st.family)}, {"limit", "inf"}});
        } else {
            stages.push_back({{"family", family_name(st.family)}, {"limit", st.limit}});
        }
    }
    return {{"name", s.name}, {"stages", stages}};
}

std::string describe(const SequenceDescriptor& s) {
    std::string out;
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        const Stage& st = s.stages[i];
        if (i) out += " & ";
        if (st.constant) {
            out += "const " + st.point->label();
            continue;
        }
        switch (st.family) {
            case Family::PrincipalEven: out += "P+(v->" + num(st.limit) + ")"; break;
            case Family::PrincipalOdd: out += "P-(v->" + num(st.limit) + ")"; break;
            case Family::Complementary: out += "C(u->" + num(st.limit) + ")"; break;
            case Family::DiscretePlus: out += "Dm+(m->" + num(st.limit) + ")"; break;
            case Family::DiscreteMinus: out += "Dm-(m->" + num(st.limit) + ")"; break;
        }
    }
    return out;
}

std::string topology_table_csv(const std::vector<SequenceDescriptor>& ds) {
    std::ostringstream os;
    os << "name,descriptor,limit_set,properly_converging\n";
    for (const auto& d : ds)
        os << d.name << "," << describe(d) << "," << format_limit_set(limit_set(d)) << ","
           << (is_properly_converging(d) ? "true" : "false") << "\n";
    return os.str();
}

KTypeWindow point_window(const DualPoint& p, const WindowSizes& w) {
    switch (p.kind()) {
        case DualKind::PrincipalEven:
        case DualKind::Complementary: return {Parity::Even, w.even};
        case DualKind::PrincipalOdd: return {Parity::Odd, w.odd};
        case DualKind::LimitDiscrete:
            return KTypeWindow::restricted(Parity::Odd, w.odd, p.side() == Sign::Plus ? Support::Positive : Support::Negative);
        case DualKind::Trivial: return KTypeWindow::restricted(Parity::Even, w.even, Support::Zero);
        case DualKind::Discrete: {
            const Parity par = parity_of(p.m() + 1);
            const int n_max = par == Parity::Even ? w.even : w.odd;
            return KTypeWindow::tail(par, n_max, p.side() == Sign::Plus ? p.m() + 1 : -(p.m() + 1));
        }
    }
    throw std::invalid_argument("point_window: unknown dual point");
}

TruncatedOperator fourier_at(const DualPoint& p, const TestFunction& h, const WindowSizes& w,
                             const FourierResolution& res) {
    const KTypeWindow win = point_window(p, w);
    // even and odd functions act by zero on representations of the other parity
    if (h.empty() || h.parity() != win.parity()) return TruncatedOperator::zero(win);
    switch (p.kind()) {
        case DualKind::PrincipalEven: return group_fourier(Sign::Plus, cplx(0.0, p.parameter()), h, win, res);
        case DualKind::PrincipalOdd: return group_fourier(Sign::Minus, cplx(0.0, p.parameter()), h, win, res);
        case DualKind::Complementary: return comp_series_fourier(p.parameter(), h, win, res);
        case DualKind::LimitDiscrete: return group_fourier(Sign::Minus, 0.0, h, win, win, res);
        case DualKind::Discrete: {
            const Sign s = p.m() % 2 == 1 ? Sign::Plus : Sign::Minus;
            return group_fourier(s, double(p.m()), h, win, win, res);
        }
        case DualKind::Trivial: {
            TruncatedOperator out = TruncatedOperator::zero(win);
            out.set(0, 0, h.integral());
            return out;
        }
    }
    throw std::invalid_argument("fourier_at: unknown dual point");
}

}  // namespace sl2
