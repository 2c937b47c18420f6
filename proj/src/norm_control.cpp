#include "sl2/norm_control.hpp"

#include <algorithm>
#include <stdexcept>

#include "sl2/intertwiner.hpp"

namespace sl2 {

namespace {

bool is_endpoint_discrete(const DualPoint& p) { return p.kind() == DualKind::Discrete && p.m() == 1; }

RescalingOperator endpoint_rescaling(const DualPoint& p, const KTypeWindow& window) {
    if (p.side() == Sign::Plus) return RescalingOperator(PositiveEndpoint{}, window);
    return RescalingOperator(NegativeEndpoint{}, window);
}

KTypeWindow full_window(NuCase c, const WindowSizes& w) {
    return c == NuCase::I ? KTypeWindow(Parity::Odd, w.odd) : KTypeWindow(Parity::Even, w.even);
}

void require_case_parity(NuCase c, const TestFunction& h) {
    const Parity need = c == NuCase::I ? Parity::Odd : Parity::Even;
    if (!h.empty() && h.parity() != need)
        throw std::invalid_argument(std::string("even/odd type mismatch: case ") + to_string(c) + " needs an " +
                                    to_string(need) + " test function");
}

}  // namespace

const char* to_string(NuCase c) {
    switch (c) {
        case NuCase::I: return "i";
        case NuCase::II: return "ii";
        case NuCase::III: return "iii";
    }
    return "?";
}

std::vector<DualPoint> limit_points(NuCase c) {
    switch (c) {
        case NuCase::I: return {DualPoint::limit_discrete(Sign::Plus), DualPoint::limit_discrete(Sign::Minus)};
        case NuCase::II: return {DualPoint::principal_even(0.0)};
        case NuCase::III:
            return {DualPoint::discrete(1, Sign::Plus), DualPoint::discrete(1, Sign::Minus), DualPoint::trivial()};
    }
    return {};
}

double hilbert_norm(const DualPoint& p, const TruncatedOperator& a) {
    if (!is_endpoint_discrete(p) || a.rows().size() == 0) return a.op_norm();
    const RescalingOperator k = endpoint_rescaling(p, a.rows());
    if (!(a.rows() == a.cols())) throw std::invalid_argument("hilbert_norm: D_1 samples must be square");
    return k.conjugate(a).op_norm();
}

TruncatedOperator hilbert_adjoint(const DualPoint& p, const TruncatedOperator& a) {
    if (!is_endpoint_discrete(p) || a.rows().size() == 0) return a.adjoint();
    const RescalingOperator k = endpoint_rescaling(p, a.rows());
    // K A^dagger K^-1 = (K A K^-1)^*
    return k.unconjugate(k.conjugate(a).adjoint());
}

void RestrictedField::set(const DualPoint& p, TruncatedOperator a) {
    samples_.insert_or_assign(p, std::move(a));
}

const TruncatedOperator& RestrictedField::at(const DualPoint& p) const {
    auto it = samples_.find(p);
    if (it == samples_.end()) throw std::out_of_range("restricted field has no sample at " + p.label());
    return it->second;
}

double RestrictedField::sup_norm() const {
    double s = 0.0;
    for (const auto& [p, a] : samples_) s = std::max(s, hilbert_norm(p, a));
    return s;
}

RestrictedField RestrictedField::adjoint() const {
    RestrictedField out;
    for (const auto& [p, a] : samples_) out.set(p, hilbert_adjoint(p, a));
    return out;
}

RestrictedField RestrictedField::operator+(const RestrictedField& o) const {
    RestrictedField out = *this;
    for (const auto& [p, a] : o.samples_) {
        auto it = out.samples_.find(p);
        if (it == out.samples_.end())
            out.set(p, a);
        else
            it->second = it->second + a;
    }
    return out;
}

RestrictedField RestrictedField::operator*(cplx s) const {
    RestrictedField out;
    for (const auto& [p, a] : samples_) out.set(p, a * s);
    return out;
}

TruncatedOperator nu_apply(NuCase c, const RestrictedField& psi, const WindowSizes& w) {
    const KTypeWindow full = full_window(c, w);
    TruncatedOperator out = TruncatedOperator::zero(full);
    switch (c) {
        case NuCase::I:
            for (const DualPoint& p : limit_points(c)) {
                const TruncatedOperator& a = psi.at(p);
                out = out + a.embed(full, full);
            }
            break;
        case NuCase::II: out = psi.at(limit_points(c).front()).embed(full, full); break;
        case NuCase::III:
            for (const DualPoint& p : limit_points(c)) {
                const TruncatedOperator& a = psi.at(p);
                if (is_endpoint_discrete(p)) {
                    const KTypeWindow half = KTypeWindow::restricted(
                        Parity::Even, w.even, p.side() == Sign::Plus ? Support::Positive : Support::Negative);
                    const RescalingOperator k = endpoint_rescaling(p, half);
                    out = out + k.conjugate(a.embed(half, half)).embed(full, full);
                } else {
                    out = out + a.embed(full, full);
                }
            }
            break;
    }
    return out;
}

double nu_norm_bound_defect(NuCase c, const RestrictedField& psi, const WindowSizes& w) {
    return std::max(0.0, nu_apply(c, psi, w).op_norm() - psi.sup_norm());
}

double nu_involution_defect(NuCase c, const RestrictedField& psi, const WindowSizes& w) {
    return (nu_apply(c, psi, w).adjoint() - nu_apply(c, psi.adjoint(), w)).op_norm();
}

RestrictedField restricted_fourier(NuCase c, const TestFunction& h, const WindowSizes& w,
                                   const FourierResolution& res) {
    require_case_parity(c, h);
    RestrictedField psi;
    for (const DualPoint& p : limit_points(c)) psi.set(p, fourier_at(p, h, w, res));
    return psi;
}

std::vector<NcdlPoint> verify_ncdl_limit(NuCase c, const TestFunction& h, const std::vector<double>& grid,
                                         const WindowSizes& w, const FourierResolution& res) {
    require_case_parity(c, h);
    const TruncatedOperator nu = nu_apply(c, restricted_fourier(c, h, w, res), w);
    const KTypeWindow full = full_window(c, w);
    std::vector<NcdlPoint> out;
    for (double x : grid) {
        NcdlPoint pt;
        pt.parameter = x;
        TruncatedOperator gamma = TruncatedOperator::zero(full);
        switch (c) {
            case NuCase::I:
                gamma = group_fourier(Sign::Minus, cplx(0.0, x), h, full, res);
                pt.bound = convergence_bound(h, cplx(0.0, x), 0.0);
                break;
            case NuCase::II:
                gamma = comp_series_fourier(x, h, full, res);
                pt.bound = convergence_bound(h, x, 0.0);
                break;
            case NuCase::III:
                gamma = comp_series_fourier(x, h, full, res);
                pt.bound = convergence_bound(h, x, 1.0);
                break;
        }
        pt.defect = (gamma - nu).op_norm();
        out.push_back(pt);
    }
    return out;
}

}  // namespace sl2
