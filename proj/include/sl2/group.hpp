#pragma once

#include <array>
#include <utility>

namespace sl2 {

// 2x2 real matrix of determinant one.
class GroupElement {
public:
    GroupElement() = default;

    // Rejects |det - 1| > 1e-12 * max(1, |g|^2).
    static GroupElement from_entries(double a, double b, double c, double d);
    // Rescales by 1/sqrt(det); rejects det <= 0.
    static GroupElement normalized(double a, double b, double c, double d);

    static GroupElement identity() { return {}; }
    static GroupElement rotation(double phi);     // k_phi
    static GroupElement diag_exp(double t);       // a_t = diag(e^{t/2}, e^{-t/2})
    static GroupElement unipotent(double x);      // mu_x

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return a_ * d_ - b_ * c_; }
    double frobenius_norm() const;

    GroupElement inverse() const { return {d_, -b_, -c_, a_}; }
    std::array<double, 2> apply(double x, double y) const {
        return {a_ * x + b_ * y, c_ * x + d_ * y};
    }

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
    double max_entry_distance(const GroupElement& other) const;

private:
    GroupElement(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}
    double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

// g = k_phi diag(e^s, e^-s) mu_x. Note a_t has s = t/2.
struct IwasawaCoords {
    double phi = 0.0;
    double s = 0.0;
    double x = 0.0;
};

// g = k_phi1 a_t k_phi2 with t >= 0 and phi1 in [0, pi) when t > 0.
struct CartanCoords {
    double phi1 = 0.0;
    double t = 0.0;
    double phi2 = 0.0;
};

IwasawaCoords iwasawa(const GroupElement& g);
GroupElement reconstruct(const IwasawaCoords& c);

CartanCoords cartan(const GroupElement& g);
GroupElement reconstruct(const CartanCoords& c);

// Traceless matrix [[h, e], [f, -h]].
struct LieAlgebraElement {
    double h = 0.0;
    double e = 0.0;
    double f = 0.0;

    LieAlgebraElement operator*(double s) const { return {h * s, e * s, f * s}; }
    LieAlgebraElement operator+(const LieAlgebraElement& o) const { return {h + o.h, e + o.e, f + o.f}; }
};

// <X, Y> = 2 tr(XY)
double killing_pairing(const LieAlgebraElement& x, const LieAlgebraElement& y);

GroupElement exp_one_param(const LieAlgebraElement& x, double s);

using CasimirPair = std::pair<LieAlgebraElement, LieAlgebraElement>;

// Pairs (X_i, X^i) with <X_i, X^j> = delta_ij for the basis H, E, F.
std::array<CasimirPair, 3> casimir_dual_basis();
// Same for an arbitrary basis; throws if it is degenerate.
std::array<CasimirPair, 3> casimir_dual_basis(const std::array<LieAlgebraElement, 3>& basis);

}  // namespace sl2
