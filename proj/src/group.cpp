#include "sl2/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sl2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

}  // namespace

GroupElement GroupElement::from_entries(double a, double b, double c, double d) {
    const double scale = std::max(1.0, a * a + b * b + c * c + d * d);
    const double det = a * d - b * c;
    if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-12 * scale) {
        throw std::invalid_argument("GroupElement: determinant " + std::to_string(det) + " is not 1");
    }
    return {a, b, c, d};
}

GroupElement GroupElement::normalized(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det)) {
        throw std::invalid_argument("GroupElement: cannot normalize a matrix with det <= 0");
    }
    const double r = 1.0 / std::sqrt(det);
    return {a * r, b * r, c * r, d * r};
}

GroupElement GroupElement::rotation(double phi) {
    const double cs = std::cos(phi), sn = std::sin(phi);
    return {cs, -sn, sn, cs};
}

GroupElement GroupElement::diag_exp(double t) {
    return {std::exp(0.5 * t), 0.0, 0.0, std::exp(-0.5 * t)};
}

GroupElement GroupElement::unipotent(double x) { return {1.0, x, 0.0, 1.0}; }

double GroupElement::frobenius_norm() const {
    return std::sqrt(a_ * a_ + b_ * b_ + c_ * c_ + d_ * d_);
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    return {g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
            g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_};
}

double GroupElement::max_entry_distance(const GroupElement& o) const {
    return std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_), std::abs(d_ - o.d_)});
}

IwasawaCoords iwasawa(const GroupElement& g) {
    const double r = std::hypot(g.a(), g.c());
    IwasawaCoords out;
    out.phi = wrap_angle(std::atan2(g.c(), g.a()));
    out.s = std::log(r);
    // (k^-1 g)_{12} = e^s x, with k^-1 = [[a, c], [-c, a]] / r
    out.x = (g.a() * g.b() + g.c() * g.d()) / (r * r);
    return out;
}

GroupElement reconstruct(const IwasawaCoords& c) {
    const double es = std::exp(c.s);
    return GroupElement::rotation(c.phi) * GroupElement::normalized(es, es * c.x, 0.0, 1.0 / es);
}

CartanCoords cartan(const GroupElement& g) {
    // Split g into rotation-like part p I + q J and reflection-like part r Z + w X.
    const double p = 0.5 * (g.a() + g.d());
    const double q = 0.5 * (g.c() - g.b());
    const double r = 0.5 * (g.a() - g.d());
    const double w = 0.5 * (g.b() + g.c());
    const double rho_rot = std::hypot(p, q);
    const double rho_ref = std::hypot(r, w);
    const double alpha = std::atan2(q, p);  // phi1 + phi2
    CartanCoords out;
    if (rho_ref <= 1e-15 * rho_rot) {
        out.phi1 = wrap_angle(alpha);
        return out;
    }
    // Singular values are rho_rot +- rho_ref and rho_rot^2 - rho_ref^2 = 1.
    out.t = 2.0 * std::asinh(rho_ref);
    const double beta = std::atan2(w, r);  // phi1 - phi2
    double phi1 = 0.5 * (alpha + beta);
    double phi2 = 0.5 * (alpha - beta);
    // (k1, k2) -> (-k1, -k2) shifts both angles by pi.
    const double pi = std::numbers::pi;
    while (phi1 < 0.0) {
        phi1 += pi;
        phi2 += pi;
    }
    while (phi1 >= pi) {
        phi1 -= pi;
        phi2 -= pi;
    }
    out.phi1 = phi1;
    out.phi2 = wrap_angle(phi2);
    return out;
}

GroupElement reconstruct(const CartanCoords& c) {
    return GroupElement::rotation(c.phi1) * GroupElement::diag_exp(c.t) * GroupElement::rotation(c.phi2);
}

double killing_pairing(const LieAlgebraElement& x, const LieAlgebraElement& y) {
    return 2.0 * (2.0 * x.h * y.h + x.e * y.f + x.f * y.e);
}

GroupElement exp_one_param(const LieAlgebraElement& x, double s) {
    // (sX)^2 = z I with z = s^2 (h^2 + e f); exp(sX) = C(z) I + S(z) sX.
    const double z = s * s * (x.h * x.h + x.e * x.f);
    double cz, sz;
    if (std::abs(z) < 1e-8) {
        cz = 1.0 + z / 2.0 + z * z / 24.0;
        sz = 1.0 + z / 6.0 + z * z / 120.0;
    } else if (z > 0.0) {
        const double k = std::sqrt(z);
        cz = std::cosh(k);
        sz = std::sinh(k) / k;
    } else {
        const double k = std::sqrt(-z);
        cz = std::cos(k);
        sz = std::sin(k) / k;
    }
    return GroupElement::normalized(cz + sz * s * x.h, sz * s * x.e, sz * s * x.f, cz - sz * s * x.h);
}

std::array<CasimirPair, 3> casimir_dual_basis() {
    return casimir_dual_basis({LieAlgebraElement{1.0, 0.0, 0.0}, LieAlgebraElement{0.0, 1.0, 0.0},
                               LieAlgebraElement{0.0, 0.0, 1.0}});
}

std::array<CasimirPair, 3> casimir_dual_basis(const std::array<LieAlgebraElement, 3>& basis) {
    // Gram matrix G_ij = <X_i, X_j>; dual X^i = sum_j (G^-1)_{ji} X_j.
    double gm[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gm[i][j] = killing_pairing(basis[i], basis[j]);
    const double det = gm[0][0] * (gm[1][1] * gm[2][2] - gm[1][2] * gm[2][1]) -
                       gm[0][1] * (gm[1][0] * gm[2][2] - gm[1][2] * gm[2][0]) +
                       gm[0][2] * (gm[1][0] * gm[2][1] - gm[1][1] * gm[2][0]);
    if (std::abs(det) < 1e-14) throw std::invalid_argument("casimir_dual_basis: degenerate basis");
    double inv[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
            inv[i][j] = (gm[i1][j1] * gm[i2][j2] - gm[i1][j2] * gm[i2][j1]) / det;
        }
    }
    std::array<CasimirPair, 3> out;
    for (int i = 0; i < 3; ++i) {
        LieAlgebraElement dual;
        for (int j = 0; j < 3; ++j) dual = dual + basis[j] * inv[j][i];
        out[i] = {basis[i], dual};
    }
    return out;
}

}  // namespace sl2
