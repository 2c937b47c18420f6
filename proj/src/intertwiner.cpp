#include "sl2/intertwiner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sl2/quadrature.hpp"

namespace sl2 {

namespace {

constexpr double kMaxLogCutoff = 700.0;  // keeps sinh and cosh finite

std::string pole_message(int n, cplx pole) {
    std::ostringstream os;
    os << "ratio_c(" << n << ", u): pole of the product formula at u = " << pole.real();
    if (pole.imag() != 0.0) os << (pole.imag() > 0 ? "+" : "") << pole.imag() << "i";
    return os.str();
}

void require_even(int n, const char* where) {
    if (n % 2 != 0) throw std::invalid_argument(std::string(where) + ": K-type must be even");
}

double log_cosh(double q) {
    const double a = std::abs(q);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

struct DeSums {
    cplx coarse;  // step h
    cplx fine;    // step h/2
};

// x = sinh(q), q = (pi/2) sinh(tau): double-exponential decay of the transformed integrand.
DeSums de_trapezoid(cplx u, int n, double tau_max, double h) {
    const int k_max = static_cast<int>(std::ceil(tau_max / (0.5 * h)));
    CompensatedSum<cplx> even_nodes, odd_nodes;
    for (int k = -k_max; k <= k_max; ++k) {
        const double tau = 0.5 * h * k;
        const double q = 0.5 * std::numbers::pi * std::sinh(tau);
        const double x = std::sinh(q);
        const double log_jac = log_cosh(q) + std::log(0.5 * std::numbers::pi * std::cosh(tau));
        const IwasawaCoords c = iwasawa(GroupElement::from_entries(x, -1.0, 1.0, 0.0));
        const double log_mod = log_jac - (u.real() + 1.0) * c.s;
        const cplx term = std::exp(log_mod) * std::polar(1.0, -u.imag() * c.s - n * c.phi);
        (k % 2 == 0 ? even_nodes : odd_nodes).add(term);
    }
    return {even_nodes.value() * h, (even_nodes.value() + odd_nodes.value()) * (0.5 * h)};
}

}  // namespace

PoleError::PoleError(int n, cplx pole) : std::domain_error(pole_message(n, pole)), n_(n), pole_(pole) {}

KnappSteinResult knapp_stein_eigen(cplx u, int n, const KnappSteinOptions& opts) {
    require_even(n, "knapp_stein_eigen");
    const double a = u.real();
    if (!(a > 0.0)) throw std::domain_error("knapp_stein_eigen: the integral converges only for Re u > 0");
    auto tail_for = [a](double log_x) { return 2.0 * std::exp(-a * log_x) / a; };
    // provisional cutoff for |value| ~ 1, then enlarge until the tail is relatively small
    double log_x = std::min(kMaxLogCutoff, std::log(2.0 / (a * opts.tail_rel_target * 1e-2)) / a);
    KnappSteinResult out;
    for (;;) {
        const double q_max = log_x + std::numbers::ln2;  // asinh(X) for large X
        const double tau_max = std::asinh(q_max * 2.0 / std::numbers::pi);
        const DeSums s = de_trapezoid(u, n, tau_max, opts.step);
        out.value = s.fine;
        out.tail_bound = tail_for(log_x);
        out.cutoff = std::exp(log_x);
        out.error_estimate = std::abs(s.fine - s.coarse) + out.tail_bound;
        const double target = opts.tail_rel_target * std::abs(out.value);
        if (out.tail_bound <= target || log_x >= kMaxLogCutoff || target == 0.0) break;
        log_x = std::min(kMaxLogCutoff, log_x + std::log(out.tail_bound / target) / a + 1.0);
    }
    return out;
}

cplx ratio_c(int n, cplx u) {
    require_even(n, "ratio_c");
    const int k = std::abs(n) / 2;
    cplx r = (k % 2 == 0) ? 1.0 : -1.0;
    for (int j = 1; j <= k; ++j) {
        const double odd = 2.0 * j - 1.0;
        if (std::abs(u + odd) < 1e-14) throw PoleError(n, cplx(-odd, 0.0));
        r *= (u - odd) / (u + odd);
    }
    return r;
}

cplx ratio_over_base(int n, int base, cplx u) {
    require_even(n, "ratio_over_base");
    if (base != 2 && base != -2) throw std::invalid_argument("ratio_over_base: base must be +-2");
    if (n == 0 || (n > 0) != (base > 0))
        throw std::invalid_argument("ratio_over_base: n must be nonzero with the sign of the base");
    // the j = 1 factor and one sign cancel against ratio_c(+-2, u)
    const int k = std::abs(n) / 2;
    cplx r = ((k - 1) % 2 == 0) ? 1.0 : -1.0;
    for (int j = 2; j <= k; ++j) {
        const double odd = 2.0 * j - 1.0;
        if (std::abs(u + odd) < 1e-14) throw PoleError(n, cplx(-odd, 0.0));
        r *= (u - odd) / (u + odd);
    }
    return r;
}

double gamma_invariance_defect(int n, cplx u) { return std::abs(ratio_c(n, u) * ratio_c(n, -u) - 1.0); }

RescalingOperator::RescalingOperator(RescalingVariant variant, KTypeWindow window)
    : variant_(std::move(variant)), window_(std::move(window)), d_(window_.size()) {
    if (window_.parity() != Parity::Even) throw std::invalid_argument("rescaling: window must be even");
    for (int k = 0; k < window_.size(); ++k) {
        const int n = window_.indices()[k];
        cplx radicand;
        if (const auto* cs = std::get_if<ComplementaryScale>(&variant_)) {
            radicand = ratio_c(n, cs->u);
        } else if (std::holds_alternative<PositiveEndpoint>(variant_)) {
            radicand = ratio_over_base(n, 2, 1.0);
        } else {
            radicand = ratio_over_base(n, -2, 1.0);
        }
        if (std::abs(radicand.imag()) > 1e-14 || !(radicand.real() > 0.0))
            throw std::domain_error("rescaling: nonpositive radicand at K-type " + std::to_string(n));
        d_(k) = std::sqrt(radicand.real());
    }
}

double RescalingOperator::d(int n) const {
    const auto p = window_.position(n);
    if (!p) throw std::out_of_range("rescaling: K-type " + std::to_string(n) + " outside " + window_.describe());
    return d_(*p);
}

TruncatedOperator RescalingOperator::as_operator() const {
    return {window_, window_, d_.cast<cplx>().asDiagonal().toDenseMatrix()};
}

TruncatedOperator RescalingOperator::inverse() const {
    return {window_, window_, d_.cwiseInverse().cast<cplx>().asDiagonal().toDenseMatrix()};
}

TruncatedOperator RescalingOperator::conjugate(const TruncatedOperator& a) const {
    return as_operator() * a * inverse();
}

TruncatedOperator RescalingOperator::unconjugate(const TruncatedOperator& a) const {
    return inverse() * a * as_operator();
}

RescalingOperator rescaling(const RescalingVariant& variant, const KTypeWindow& window) {
    if (const auto* cs = std::get_if<ComplementaryScale>(&variant)) {
        if (!(cs->u > 0.0 && cs->u < 1.0)) throw std::domain_error("rescaling: K_u needs u in (0,1)");
        return {variant, window};
    }
    const Support part = std::holds_alternative<PositiveEndpoint>(variant) ? Support::Positive : Support::Negative;
    KTypeWindow sub = KTypeWindow::restricted(Parity::Even, window.max_index(), part);
    if (!sub.is_subset_of(window)) sub = window;
    return {variant, sub};
}

TruncatedOperator comp_series_fourier(double u, const TestFunction& h, const KTypeWindow& window,
                                      const FourierResolution& res) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("comp_series_fourier: u must lie in (0,1)");
    TruncatedOperator p = group_fourier(Sign::Plus, u, h, window, res);
    for (int i = 0; i < window.size(); ++i) {
        for (int j = 0; j < window.size(); ++j) {
            const cplx q = ratio_c(window.indices()[i], u) / ratio_c(window.indices()[j], u);
            if (std::abs(q.imag()) > 1e-14 || !(q.real() > 0.0))
                throw std::domain_error("comp_series_fourier: nonpositive eigenvalue ratio");
            p.matrix()(i, j) *= std::sqrt(q.real());
        }
    }
    return p;
}

TruncatedOperator comp_series_fourier_conjugated(double u, const TestFunction& h, const KTypeWindow& window,
                                                 const FourierResolution& res) {
    const RescalingOperator k = rescaling(ComplementaryScale{u}, window);
    return k.conjugate(group_fourier(Sign::Plus, u, h, window, res));
}

}  // namespace sl2
