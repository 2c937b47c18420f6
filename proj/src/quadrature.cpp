#include "sl2/quadrature.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sl2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_resolution(int n, const char* axis) {
    if (n < 4) throw std::invalid_argument(std::string("quadrature: resolution < 4 on axis ") + axis);
}

void check_interval(Interval iv, const char* axis) {
    if (!(iv.hi > iv.lo) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
        throw std::invalid_argument(std::string("quadrature: empty or unbounded box on axis ") + axis);
}

}  // namespace

double QuadratureRule::total_weight() const {
    CompensatedSum<double> s;
    for (double w : weights) s.add(w);
    return s.value();
}

GroupElement QuadratureRule::element(std::size_t i) const {
    const auto& n = nodes[i];
    switch (system) {
        case CoordinateSystem::Iwasawa: return reconstruct(IwasawaCoords{n[0], n[1], n[2]});
        case CoordinateSystem::Cartan: return reconstruct(CartanCoords{n[0], n[1], n[2]});
        case CoordinateSystem::Circle: return GroupElement::rotation(n[0]);
        case CoordinateSystem::Line: return GroupElement::unipotent(n[0]);
    }
    return {};
}

double QuadratureRule::integrate(const std::function<double(const GroupElement&)>& f) const {
    CompensatedSum<double> s;
    for (std::size_t i = 0; i < size(); ++i) s.add(weights[i] * f(element(i)));
    return s.value();
}

LineRule gauss_legendre(int n, Interval iv) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    // Nonnegative zeros of P_n, ascending; mirror them for the full set.
    const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> x;
    x.reserve(n);
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
        if (*it != 0.0) x.push_back(-*it);
    for (double z : zeros) x.push_back(z);
    const double half = 0.5 * iv.length(), mid = 0.5 * (iv.lo + iv.hi);
    LineRule out;
    out.nodes.reserve(n);
    out.weights.reserve(n);
    for (double xi : x) {
        const double dp = boost::math::legendre_p_prime(n, xi);
        out.nodes.push_back(mid + half * xi);
        out.weights.push_back(half * 2.0 / ((1.0 - xi * xi) * dp * dp));
    }
    return out;
}

QuadratureRule circle_rule(int n) {
    check_resolution(n, "phi");
    QuadratureRule r;
    r.system = CoordinateSystem::Circle;
    for (int j = 0; j < n; ++j) {
        r.nodes.push_back({kTwoPi * j / n, 0.0, 0.0});
        r.weights.push_back(1.0 / n);
    }
    return r;
}

QuadratureRule line_rule(int n, Interval iv) {
    check_resolution(n, "x");
    check_interval(iv, "x");
    const LineRule g = gauss_legendre(n, iv);
    QuadratureRule r;
    r.system = CoordinateSystem::Line;
    for (int i = 0; i < n; ++i) {
        r.nodes.push_back({g.nodes[i], 0.0, 0.0});
        r.weights.push_back(g.weights[i]);
    }
    return r;
}

QuadratureRule iwasawa_rule(int n_phi, int n_s, int n_y, Interval s, Interval y) {
    check_resolution(n_phi, "phi");
    check_resolution(n_s, "s");
    check_resolution(n_y, "y");
    check_interval(s, "s");
    check_interval(y, "y");
    const LineRule gs = gauss_legendre(n_s, s);
    const LineRule gy = gauss_legendre(n_y, y);
    QuadratureRule r;
    r.system = CoordinateSystem::Iwasawa;
    r.nodes.reserve(static_cast<std::size_t>(n_phi) * n_s * n_y);
    r.weights.reserve(r.nodes.capacity());
    for (int i = 0; i < n_phi; ++i) {
        const double phi = kTwoPi * i / n_phi;
        for (int j = 0; j < n_s; ++j) {
            const double sv = gs.nodes[j];
            // e^{2s} ds dx with dx = e^{-s} dy
            const double ws = gs.weights[j] * std::exp(sv) / n_phi;
            for (int k = 0; k < n_y; ++k) {
                r.nodes.push_back({phi, sv, std::exp(-sv) * gy.nodes[k]});
                r.weights.push_back(ws * gy.weights[k]);
            }
        }
    }
    return r;
}

QuadratureRule cartan_rule(int n_phi1, int n_t, int n_phi2, Interval t) {
    check_resolution(n_phi1, "phi1");
    check_resolution(n_t, "t");
    check_resolution(n_phi2, "phi2");
    check_interval(t, "t");
    if (t.lo < 0.0) throw std::invalid_argument("cartan_rule: t must be nonnegative");
    const LineRule gt = gauss_legendre(n_t, t);
    QuadratureRule r;
    r.system = CoordinateSystem::Cartan;
    r.nodes.reserve(static_cast<std::size_t>(n_phi1) * n_t * n_phi2);
    r.weights.reserve(r.nodes.capacity());
    for (int i = 0; i < n_phi1; ++i) {
        const double p1 = kTwoPi * i / n_phi1;
        for (int j = 0; j < n_t; ++j) {
            const double wt = gt.weights[j] * std::numbers::pi * std::sinh(gt.nodes[j]) / (double(n_phi1) * n_phi2);
            for (int k = 0; k < n_phi2; ++k) {
                r.nodes.push_back({p1, gt.nodes[j], kTwoPi * k / n_phi2});
                r.weights.push_back(wt);
            }
        }
    }
    return r;
}

QuadratureRule haar_rule(CoordinateSystem system, Resolution res, const std::vector<Interval>& box) {
    auto need = [&](std::size_t k) {
        if (box.size() < k) throw std::invalid_argument("haar_rule: support box has too few axes");
    };
    switch (system) {
        case CoordinateSystem::Iwasawa:
            need(2);
            return iwasawa_rule(res.n1, res.n2, res.n3, box[0], box[1]);
        case CoordinateSystem::Cartan:
            need(1);
            return cartan_rule(res.n1, res.n2, res.n3, box[0]);
        case CoordinateSystem::Circle: return circle_rule(res.n1);
        case CoordinateSystem::Line:
            need(1);
            return line_rule(res.n1, box[0]);
    }
    throw std::invalid_argument("haar_rule: unknown coordinate system");
}

}  // namespace sl2
