#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sl2/quadrature.hpp"

using namespace sl2;
using std::numbers::pi;

TEST_CASE("gauss-legendre") {
    const LineRule r = gauss_legendre(12, {0.0, 2.0});
    double sum = 0.0, cubic = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        sum += r.weights[i];
        cubic += r.weights[i] * std::pow(r.nodes[i], 23);
        if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK(std::abs(sum - 2.0) < 1e-14);
    // degree 23 is the exactness limit of 12 nodes
    CHECK(std::abs(cubic - std::pow(2.0, 24) / 24.0) < 1e-8 * std::pow(2.0, 24) / 24.0);
}

TEST_CASE("circle rule") {
    const QuadratureRule c = circle_rule(32);
    CHECK(std::abs(c.total_weight() - 1.0) < 1e-15);
    for (double w : c.weights) CHECK(w > 0.0);
    for (int n = -15; n <= 15; ++n) {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            re += c.weights[i] * std::cos(n * c.nodes[i][0]);
            im -= c.weights[i] * std::sin(n * c.nodes[i][0]);
        }
        CHECK(std::abs(re - (n == 0 ? 1.0 : 0.0)) < 1e-15);
        CHECK(std::abs(im) < 1e-15);
    }
}

TEST_CASE("haar rules") {
    auto probe = [](const GroupElement& g) {
        const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
        return std::exp(-(a * a + b * b + c * c + d * d)) * (1.0 + 0.5 * a + 0.3 * b * c + 0.2 * d * d);
    };
    const Resolution res{48, 48, 48};
    const QuadratureRule iw = haar_rule(CoordinateSystem::Iwasawa, res, {{-3.5, 3.5}, {-8, 8}});
    const QuadratureRule ca = haar_rule(CoordinateSystem::Cartan, res, {{0.0, 5.0}});
    for (double w : iw.weights) CHECK(w > 0.0);
    const double i_ca = ca.integrate(probe);
    CHECK(std::abs(iw.integrate(probe) - i_ca) < 1e-7 * std::abs(i_ca));

    SUBCASE("K-biinvariant probe has a one-dimensional oracle") {
        // exp(-|g|^2) = exp(-2 cosh t); pi int_0^inf e^{-2 cosh t} sinh t dt = pi e^{-2} / 2
        auto radial = [](const GroupElement& g) {
            return std::exp(-(g.a() * g.a() + g.b() * g.b() + g.c() * g.c() + g.d() * g.d()));
        };
        const double exact = pi * std::exp(-2.0) / 2.0;
        CHECK(std::abs(ca.integrate(radial) - exact) < 1e-12);
        CHECK(std::abs(iw.integrate(radial) - exact) < 1e-8);
    }
    SUBCASE("left and right translation") {
        const GroupElement g0 = GroupElement::from_entries(1.0, 0.5, 0.4, 1.2);
        const double left = iw.integrate([&](const GroupElement& g) { return probe(g0 * g); });
        const double right = ca.integrate([&](const GroupElement& g) { return probe(g * g0); });
        CHECK(std::abs(left - i_ca) < 1e-6 * std::abs(i_ca));
        CHECK(std::abs(right - i_ca) < 1e-6 * std::abs(i_ca));
    }
    SUBCASE("empty boxes are rejected") {
        CHECK_THROWS(haar_rule(CoordinateSystem::Cartan, res, {}));
        CHECK_THROWS(haar_rule(CoordinateSystem::Cartan, res, {{1.0, 1.0}}));
    }
}

TEST_CASE("compensated sums") {
    CompensatedSum<double> s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1000.0);
}
