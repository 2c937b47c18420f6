#include "sl2/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sl2 {

namespace {

constexpr int kRadialNodes = 128;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(const Profile& p) {
    std::visit(overloaded{[](const BumpProfile& b) {
                              if (!(b.t0 > 0.0) || !(b.t1 > b.t0))
                                  throw std::invalid_argument("bump profile needs 0 < t0 < t1");
                          },
                          [](const SampledProfile& s) {
                              if (s.grid.size() < 2 || s.grid.size() != s.values.size())
                                  throw std::invalid_argument("sampled profile needs matching grid and values");
                              if (!(s.grid.front() > 0.0))
                                  throw std::invalid_argument("sampled profile must stay away from t = 0");
                              if (!std::is_sorted(s.grid.begin(), s.grid.end()) ||
                                  std::adjacent_find(s.grid.begin(), s.grid.end()) != s.grid.end())
                                  throw std::invalid_argument("sampled profile grid must be strictly increasing");
                          }},
               p);
}

// pi * int_I f(t) sinh t dt by Gauss-Legendre
template <class F>
auto radial_integral(Interval iv, F&& f) {
    const LineRule g = gauss_legendre(kRadialNodes, iv);
    using R = decltype(f(0.0));
    CompensatedSum<R> acc;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) acc.add(f(g.nodes[i]) * (g.weights[i] * std::sinh(g.nodes[i])));
    return acc.value() * std::numbers::pi;
}

}  // namespace

cplx profile_value(const Profile& p, double t) {
    return std::visit(overloaded{[t](const BumpProfile& b) -> cplx {
                                     if (t <= b.t0 || t >= b.t1) return 0.0;
                                     const double z = (2.0 * t - b.t0 - b.t1) / (b.t1 - b.t0);
                                     return b.amplitude * std::exp(-1.0 / (1.0 - z * z));
                                 },
                                 [t](const SampledProfile& s) -> cplx {
                                     if (t < s.grid.front() || t > s.grid.back()) return 0.0;
                                     auto it = std::upper_bound(s.grid.begin(), s.grid.end(), t);
                                     if (it == s.grid.end()) return s.values.back();
                                     const std::size_t k = static_cast<std::size_t>(it - s.grid.begin());
                                     const double w = (t - s.grid[k - 1]) / (s.grid[k] - s.grid[k - 1]);
                                     return (1.0 - w) * s.values[k - 1] + w * s.values[k];
                                 }},
                      p);
}

Interval profile_support(const Profile& p) {
    return std::visit(overloaded{[](const BumpProfile& b) { return Interval{b.t0, b.t1}; },
                                 [](const SampledProfile& s) { return Interval{s.grid.front(), s.grid.back()}; }},
                      p);
}

TestFunction::TestFunction(Parity parity, std::vector<Component> components)
    : parity_(parity), components_(std::move(components)) {
    for (const auto& c : components_) {
        if (parity_of(c.l) != parity_ || parity_of(c.n) != parity_)
            throw std::invalid_argument("TestFunction: component (" + std::to_string(c.l) + "," +
                                        std::to_string(c.n) + ") does not have " + to_string(parity_) + " parity");
        validate(c.chi);
    }
}

TestFunction TestFunction::single(int l, int n, Profile chi, cplx weight) {
    return TestFunction(parity_of(l), {Component{l, n, std::move(chi), weight}});
}

cplx TestFunction::operator()(const GroupElement& g) const {
    if (components_.empty()) return 0.0;
    const CartanCoords c = cartan(g);
    cplx acc = 0.0;
    for (const auto& comp : components_) {
        const cplx chi = comp.value(c.t);
        if (chi == cplx{}) continue;
        acc += std::polar(1.0, -comp.l * c.phi1) * chi * std::polar(1.0, -comp.n * c.phi2);
    }
    return acc;
}

Interval TestFunction::support() const {
    if (components_.empty()) throw std::logic_error("TestFunction::support: empty function");
    Interval out = profile_support(components_.front().chi);
    for (const auto& c : components_) {
        const Interval s = profile_support(c.chi);
        out.lo = std::min(out.lo, s.lo);
        out.hi = std::max(out.hi, s.hi);
    }
    return out;
}

cplx TestFunction::integral() const {
    CompensatedSum<cplx> acc;
    for (const auto& c : components_)
        if (c.l == 0 && c.n == 0)
            acc.add(radial_integral(profile_support(c.chi), [&](double t) { return c.value(t); }));
    return acc.value();
}

double TestFunction::l2_norm() const {
    // Components with distinct (l, n) are orthogonal in L^2(G).
    std::map<std::pair<int, int>, std::vector<const Component*>> groups;
    for (const auto& c : components_) groups[{c.l, c.n}].push_back(&c);
    CompensatedSum<double> acc;
    for (const auto& [key, members] : groups) {
        Interval iv = profile_support(members.front()->chi);
        for (const auto* m : members) {
            iv.lo = std::min(iv.lo, profile_support(m->chi).lo);
            iv.hi = std::max(iv.hi, profile_support(m->chi).hi);
        }
        acc.add(radial_integral(iv, [&](double t) {
            cplx s = 0.0;
            for (const auto* m : members) s += m->value(t);
            return std::norm(s);
        }));
    }
    return std::sqrt(acc.value());
}

double TestFunction::l1_norm(int angular_nodes) const {
    if (components_.empty()) return 0.0;
    if (components_.size() == 1) {
        const auto& c = components_.front();
        return radial_integral(profile_support(c.chi), [&](double t) { return std::abs(c.value(t)); });
    }
    const QuadratureRule rule = cartan_rule(angular_nodes, kRadialNodes, angular_nodes, support());
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto& nd = rule.nodes[i];
        cplx v = 0.0;
        for (const auto& c : components_)
            v += std::polar(1.0, -c.l * nd[0]) * c.value(nd[1]) * std::polar(1.0, -c.n * nd[2]);
        acc.add(rule.weights[i] * std::abs(v));
    }
    return acc.value();
}

TestFunction TestFunction::adjoint() const {
    // g^-1 = k_{pi/2 - b} a_t k_{-a - pi/2} turns component (l, n, chi) into (n, l, i^{l-n} conj chi).
    std::vector<Component> out;
    for (const auto& c : components_) {
        Component a;
        a.l = c.n;
        a.n = c.l;
        const int k = ((c.l - c.n) % 4 + 4) % 4;
        const cplx ipow[4] = {1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0)};
        a.weight = ipow[k] * std::conj(c.weight);
        a.chi = std::visit(overloaded{[](const BumpProfile& b) -> Profile { return b; },
                                      [](const SampledProfile& s) -> Profile {
                                          SampledProfile t = s;
                                          for (auto& v : t.values) v = std::conj(v);
                                          return t;
                                      }},
                           c.chi);
        out.push_back(std::move(a));
    }
    return TestFunction(parity_, std::move(out));
}

TestFunction TestFunction::scaled(cplx s) const {
    std::vector<Component> out = components_;
    for (auto& c : out) c.weight *= s;
    return TestFunction(parity_, std::move(out));
}

TestFunction TestFunction::operator+(const TestFunction& o) const {
    if (o.parity_ != parity_ && !o.empty() && !empty())
        throw std::invalid_argument("TestFunction: cannot add functions of different parity");
    std::vector<Component> out = components_;
    out.insert(out.end(), o.components_.begin(), o.components_.end());
    return TestFunction(empty() ? o.parity_ : parity_, std::move(out));
}

TestFunction reference_test_function(int l, int n, double t0, double t1) {
    TestFunction raw = TestFunction::single(l, n, BumpProfile{t0, t1, 1.0});
    return TestFunction::single(l, n, BumpProfile{t0, t1, 1.0 / raw.l1_norm()});
}

void to_json(nlohmann::json& j, const Profile& p) {
    std::visit(overloaded{[&](const BumpProfile& b) {
                              j = {{"type", "bump"}, {"t0", b.t0}, {"t1", b.t1}, {"amplitude", b.amplitude}};
                          },
                          [&](const SampledProfile& s) {
                              nlohmann::json vals = nlohmann::json::array();
                              for (const auto& v : s.values) vals.push_back({v.real(), v.imag()});
                              j = {{"type", "samples"}, {"grid", s.grid}, {"values", vals}};
                          }},
               p);
}

void from_json(const nlohmann::json& j, Profile& p) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "bump") {
        p = BumpProfile{j.at("t0").get<double>(), j.at("t1").get<double>(), j.value("amplitude", 1.0)};
    } else if (type == "samples") {
        SampledProfile s;
        s.grid = j.at("grid").get<std::vector<double>>();
        for (const auto& v : j.at("values")) {
            if (v.is_array())
                s.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
            else
                s.values.emplace_back(v.get<double>(), 0.0);
        }
        p = std::move(s);
    } else {
        throw std::invalid_argument("unknown profile type '" + type + "'");
    }
}

void to_json(nlohmann::json& j, const TestFunction& h) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : h.components()) {
        nlohmann::json chi;
        to_json(chi, c.chi);
        comps.push_back({{"l", c.l}, {"n", c.n}, {"weight", {c.weight.real(), c.weight.imag()}}, {"chi", chi}});
    }
    j = {{"parity", to_string(h.parity())}, {"components", comps}};
}

TestFunction test_function_from_json(const nlohmann::json& j) {
    const std::string par = j.at("parity").get<std::string>();
    if (par != "even" && par != "odd") throw std::invalid_argument("test function parity must be even or odd");
    std::vector<Component> comps;
    for (const auto& c : j.at("components")) {
        Component comp;
        comp.l = c.at("l").get<int>();
        comp.n = c.at("n").get<int>();
        from_json(c.at("chi"), comp.chi);
        if (c.contains("weight")) comp.weight = {c["weight"].at(0).get<double>(), c["weight"].at(1).get<double>()};
        comps.push_back(std::move(comp));
    }
    return TestFunction(par == "even" ? Parity::Even : Parity::Odd, std::move(comps));
}

}  // namespace sl2
