#pragma once

#include <array>
#include <complex>
#include <functional>
#include <type_traits>
#include <vector>

#include "sl2/group.hpp"

namespace sl2 {

enum class CoordinateSystem { Iwasawa, Cartan, Circle, Line };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// Nodes are (phi, s, x) for Iwasawa, (phi1, t, phi2) for Cartan,
// (phi) for the circle and (x) for a line; unused slots are zero.
struct QuadratureRule {
    CoordinateSystem system = CoordinateSystem::Line;
    std::vector<std::array<double, 3>> nodes;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    double total_weight() const;
    GroupElement element(std::size_t i) const;

    double integrate(const std::function<double(const GroupElement&)>& f) const;
};

// Gauss-Legendre nodes and weights on [lo, hi], ascending.
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
LineRule gauss_legendre(int n, Interval iv);

// Uniform trapezoid nodes 2 pi j / n with weights 1/n (|K| = 1).
QuadratureRule circle_rule(int n);
QuadratureRule line_rule(int n, Interval iv);

// Haar measure dg = e^{2s} dphi/(2 pi) ds dx. The x axis is sheared,
// x = e^{-s} y with y in `y`, which keeps the box aligned with the
// support of functions that are compact in the matrix entries.
QuadratureRule iwasawa_rule(int n_phi, int n_s, int n_y, Interval s, Interval y);

// The same measure in Cartan coordinates:
// dg = pi sinh(t) dt dphi1/(2 pi) dphi2/(2 pi), phi1, phi2 over a full period.
QuadratureRule cartan_rule(int n_phi1, int n_t, int n_phi2, Interval t);

struct Resolution {
    int n1 = 64, n2 = 64, n3 = 64;
};

// Dispatcher over the four systems. `box` holds the bounded axes:
// Iwasawa {s, y}, Cartan {t}, Line {x}, Circle {}.
QuadratureRule haar_rule(CoordinateSystem system, Resolution res, const std::vector<Interval>& box);

// Neumaier compensated sum, so results do not depend on accumulation drift.
template <typename T>
class CompensatedSum {
public:
    void add(T v) {
        if constexpr (std::is_same_v<T, std::complex<double>>) {
            re_.add(v.real());
            im_.add(v.imag());
        } else {
            const T t = sum_ + v;
            if (std::abs(sum_) >= std::abs(v))
                comp_ += (sum_ - t) + v;
            else
                comp_ += (v - t) + sum_;
            sum_ = t;
        }
    }
    T value() const {
        if constexpr (std::is_same_v<T, std::complex<double>>)
            return {re_.value(), im_.value()};
        else
            return sum_ + comp_;
    }

private:
    struct Empty {};
    using Inner = std::conditional_t<std::is_same_v<T, std::complex<double>>, CompensatedSum<double>, Empty>;
    T sum_{};
    T comp_{};
    [[no_unique_address]] Inner re_{};
    [[no_unique_address]] Inner im_{};
};

}  // namespace sl2
