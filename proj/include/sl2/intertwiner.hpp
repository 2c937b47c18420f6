#pragma once

#include <stdexcept>
#include <variant>

#include "sl2/operator.hpp"
#include "sl2/principal_series.hpp"

namespace sl2 {

// Thrown when the product formula hits a pole.
class PoleError : public std::domain_error {
public:
    PoleError(int n, cplx pole);
    int n() const { return n_; }
    cplx pole() const { return pole_; }

private:
    int n_;
    cplx pole_;
};

struct KnappSteinOptions {
    double step = 1.0 / 32.0;       // trapezoid step in the double-exponential variable
    double tail_rel_target = 1e-8;  // analytic tail bound relative to |value|
};

struct KnappSteinResult {
    cplx value;
    double error_estimate = 0.0;  // step-halving difference plus tail bound
    double tail_bound = 0.0;      // |int_{|x|>X}| <= 2 X^{-Re u} / Re u
    double cutoff = 0.0;          // X
};

// c_n(u) = int_R e^{-(u+1) s(mu_x w)} e_n(kappa(mu_x w)) dx, up to a global constant.
KnappSteinResult knapp_stein_eigen(cplx u, int n, const KnappSteinOptions& opts = {});

// c_n(u)/c_0(u) = (-1)^{n/2} prod_{j=1}^{|n|/2} (u - (2j-1))/(u + (2j-1))
cplx ratio_c(int n, cplx u);

// lim of ratio_c(n,u)/ratio_c(base,u) with the common factor cancelled; base = +-2,
// n of the same sign. Finite at u = 1.
cplx ratio_over_base(int n, int base, cplx u);

double gamma_invariance_defect(int n, cplx u);

struct ComplementaryScale {
    double u;
};
struct PositiveEndpoint {};  // K_(1) on n > 0
struct NegativeEndpoint {};  // K_[1] on n < 0
using RescalingVariant = std::variant<ComplementaryScale, PositiveEndpoint, NegativeEndpoint>;

class RescalingOperator {
public:
    RescalingOperator(RescalingVariant variant, KTypeWindow window);

    const KTypeWindow& window() const { return window_; }
    const Eigen::VectorXd& diagonal() const { return d_; }
    double d(int n) const;
    TruncatedOperator as_operator() const;
    TruncatedOperator inverse() const;
    // K A K^-1 for A on window x window
    TruncatedOperator conjugate(const TruncatedOperator& a) const;
    // K^-1 A K
    TruncatedOperator unconjugate(const TruncatedOperator& a) const;

private:
    RescalingVariant variant_;
    KTypeWindow window_;
    Eigen::VectorXd d_;
};

// K_u, K_(1) or K_[1]. The endpoint variants use the positive / negative part of `window`.
RescalingOperator rescaling(const RescalingVariant& variant, const KTypeWindow& window);

// C^u(h) = K_u P^{+,u}(h) K_u^-1, by scaling each entry with sqrt(ratio_c(l,u)/ratio_c(n,u)).
TruncatedOperator comp_series_fourier(double u, const TestFunction& h, const KTypeWindow& window,
                                      const FourierResolution& res = {});
// The same operator formed by explicit conjugation.
TruncatedOperator comp_series_fourier_conjugated(double u, const TestFunction& h, const KTypeWindow& window,
                                                 const FourierResolution& res = {});

}  // namespace sl2
