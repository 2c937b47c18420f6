#include "sl2/principal_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sl2/quadrature.hpp"

namespace sl2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_parity(Sign sign, int n) {
    if (parity_of(n) != parity_of(sign))
        throw std::invalid_argument("even/odd type mismatch: K-type " + std::to_string(n) + " in " + to_string(sign));
}

// Per-node data of k -> g^-1 k: weight e^{-(u+1)s}, and e^{-i phi'}, e^{i phi}.
struct CircleData {
    std::vector<cplx> weight;
    std::vector<double> phi_out;
    std::vector<double> phi_in;
};

CircleData circle_data(cplx u, const GroupElement& g, int circle) {
    if (circle < 4) throw std::invalid_argument("circle rule needs at least 4 nodes");
    const GroupElement ginv = g.inverse();
    CircleData d;
    d.weight.resize(circle);
    d.phi_out.resize(circle);
    d.phi_in.resize(circle);
    for (int j = 0; j < circle; ++j) {
        const double phi = kTwoPi * j / circle;
        const auto col = ginv.apply(std::cos(phi), std::sin(phi));
        const double s = std::log(std::hypot(col[0], col[1]));
        d.weight[j] = std::exp(-(u + 1.0) * s);
        d.phi_out[j] = std::atan2(col[1], col[0]);
        d.phi_in[j] = phi;
    }
    return d;
}

cplx element_from(const CircleData& d, int n, int l) {
    CompensatedSum<cplx> acc;
    const std::size_t m = d.weight.size();
    for (std::size_t j = 0; j < m; ++j) acc.add(d.weight[j] * std::polar(1.0, l * d.phi_in[j] - n * d.phi_out[j]));
    return acc.value() / static_cast<double>(m);
}

}  // namespace

Parity parity_of(Sign s) { return s == Sign::Plus ? Parity::Even : Parity::Odd; }

const char* to_string(Sign s) { return s == Sign::Plus ? "P+" : "P-"; }

cplx matrix_element(Sign sign, cplx u, const GroupElement& g, int n, int l, int circle) {
    require_parity(sign, n);
    require_parity(sign, l);
    return element_from(circle_data(u, g, circle), n, l);
}

TruncatedOperator rep_matrix(Sign sign, cplx u, const GroupElement& g, const KTypeWindow& window, int circle) {
    return rep_matrix(sign, u, g, window, window, circle);
}

TruncatedOperator rep_matrix(Sign sign, cplx u, const GroupElement& g, const KTypeWindow& rows,
                             const KTypeWindow& cols, int circle) {
    if (rows.parity() != parity_of(sign) || cols.parity() != parity_of(sign))
        throw std::invalid_argument(std::string("even/odd type mismatch: window parity vs ") + to_string(sign));
    const CircleData d = circle_data(u, g, circle);
    TruncatedOperator out(rows, cols);
    for (int i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols.size(); ++j) out.matrix()(i, j) = element_from(d, cols.indices()[j], rows.indices()[i]);
    return out;
}

TruncatedOperator group_fourier(Sign sign, cplx u, const TestFunction& h, const KTypeWindow& window,
                                const FourierResolution& res) {
    return group_fourier(sign, u, h, window, window, res);
}

TruncatedOperator group_fourier(Sign sign, cplx u, const TestFunction& h, const KTypeWindow& rows,
                                const KTypeWindow& cols, const FourierResolution& res) {
    if (!h.empty() && h.parity() != parity_of(sign))
        throw std::invalid_argument(std::string("even/odd type mismatch: test function is ") + to_string(h.parity()) +
                                    " but representation is " + to_string(sign));
    if (rows.parity() != parity_of(sign) || cols.parity() != parity_of(sign))
        throw std::invalid_argument(std::string("even/odd type mismatch: window parity vs ") + to_string(sign));
    TruncatedOperator out(rows, cols);
    for (const auto& c : h.components()) {
        // components outside the window contribute outside it
        if (!rows.contains(c.l) || !cols.contains(c.n)) continue;
        const LineRule g = gauss_legendre(res.t_nodes, profile_support(c.chi));
        CompensatedSum<cplx> acc;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = g.nodes[i];
            const cplx chi = c.value(t);
            if (chi == cplx{}) continue;
            const CircleData d = circle_data(u, GroupElement::diag_exp(t), res.circle);
            acc.add(chi * element_from(d, c.n, c.l) * (g.weights[i] * std::sinh(t)));
        }
        out.set(c.l, c.n, out.entry(c.l, c.n) + std::numbers::pi * acc.value());
    }
    return out;
}

TestFunction bitype_project(const std::function<cplx(const GroupElement&)>& h, int l, int n,
                            const std::vector<double>& t_grid, int circle) {
    if (parity_of(l) != parity_of(n)) throw std::invalid_argument("bitype_project: l and n must share parity");
    SampledProfile prof;
    prof.grid = t_grid;
    std::vector<GroupElement> k(circle);
    for (int j = 0; j < circle; ++j) k[j] = GroupElement::rotation(kTwoPi * j / circle);
    for (double t : t_grid) {
        const GroupElement a = GroupElement::diag_exp(t);
        CompensatedSum<cplx> acc;
        for (int j = 0; j < circle; ++j) {
            const GroupElement ka = k[j] * a;
            for (int m = 0; m < circle; ++m) {
                const double p1 = kTwoPi * j / circle, p2 = kTwoPi * m / circle;
                acc.add(h(ka * k[m].inverse()) * std::polar(1.0, l * p1 + n * p2));
            }
        }
        prof.values.push_back(acc.value() / (double(circle) * circle));
    }
    return TestFunction::single(l, -n, std::move(prof));
}

double unitarity_defect(Sign sign, double v, const GroupElement& g, const KTypeWindow& window, int circle) {
    if (window.parity() != parity_of(sign))
        throw std::invalid_argument(std::string("even/odd type mismatch: window parity vs ") + to_string(sign));
    const GroupElement ginv = g.inverse();
    const cplx u(0.0, v);
    double worst = 0.0;
    for (int n : window.indices()) {
        CompensatedSum<double> acc;
        for (int j = 0; j < circle; ++j) {
            const double phi = kTwoPi * j / circle;
            const auto col = ginv.apply(std::cos(phi), std::sin(phi));
            const double s = std::log(std::hypot(col[0], col[1]));
            // |P(g) e_n|^2 pointwise: |e^{-(iv+1)s} e^{-in phi'}|^2
            const cplx val = std::exp(-(u + 1.0) * s) * std::polar(1.0, -n * std::atan2(col[1], col[0]));
            acc.add(std::norm(val));
        }
        worst = std::max(worst, std::abs(acc.value() / circle - 1.0));
    }
    return worst;
}

double convergence_bound(const TestFunction& h, cplx u1, cplx u2, const BoundOptions& opts) {
    if (h.empty() || u1 == u2) return 0.0;
    const Interval supp = h.support();
    // Haar volume of {t0 <= t <= T}
    const double volume = std::numbers::pi * (std::cosh(supp.hi) - std::cosh(supp.lo));
    // s(g^-1 k) only depends on t and the angle of k relative to g.
    double smax = 0.0;
    for (int i = 0; i <= opts.t_samples; ++i) {
        const double t = supp.lo + supp.length() * i / opts.t_samples;
        const GroupElement ainv = GroupElement::diag_exp(-t);
        for (int j = 0; j < opts.k_samples; ++j) {
            const double phi = kTwoPi * j / opts.k_samples;
            const auto col = ainv.apply(std::cos(phi), std::sin(phi));
            smax = std::max(smax, std::abs(std::log(std::hypot(col[0], col[1]))));
        }
    }
    const double x_max = smax * (1.0 + opts.margin) + 1e-12;
    double sup = 0.0;
    for (int i = 0; i < opts.x_samples; ++i) {
        const double x = -x_max + 2.0 * x_max * i / (opts.x_samples - 1);
        sup = std::max(sup, std::abs(std::exp(-u1 * x) - std::exp(-u2 * x)));
    }
    // Lipschitz slack between grid points keeps the sampled sup an upper bound.
    // |u1 e^{-u1 x} - u2 e^{-u2 x}| <= |u1-u2| E (1 + |u2| x_max)
    const double growth = std::exp(std::max(std::abs(u1.real()), std::abs(u2.real())) * x_max);
    const double lip = std::abs(u1 - u2) * growth * (1.0 + std::abs(u2) * x_max);
    sup += lip * x_max / (opts.x_samples - 1);
    return std::sqrt(volume) * sup * h.l2_norm();
}

}  // namespace sl2
