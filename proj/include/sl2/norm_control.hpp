#pragma once

#include <map>
#include <string>
#include <vector>

#include "sl2/dual_space.hpp"
#include "sl2/operator.hpp"

namespace sl2 {

enum class NuCase {
    I,    // principal odd -> {D_+, D_-}
    II,   // complementary -> P^{+,0}
    III   // complementary -> {F_1, D_1^+, D_1^-}
};

const char* to_string(NuCase c);
std::vector<DualPoint> limit_points(NuCase c);

// Norm of an operator sampled at p in the Hilbert space of p. Samples at
// D_1^+- live in the function picture, whose invariant inner product is
// carried to L^2 by K_(1) resp. K_[1].
double hilbert_norm(const DualPoint& p, const TruncatedOperator& a);
// Adjoint for that inner product; the plain matrix adjoint elsewhere.
TruncatedOperator hilbert_adjoint(const DualPoint& p, const TruncatedOperator& a);

// Finite sampling of an operator field on a lower stratum.
class RestrictedField {
public:
    RestrictedField() = default;

    void set(const DualPoint& p, TruncatedOperator a);
    bool contains(const DualPoint& p) const { return samples_.count(p) > 0; }
    const TruncatedOperator& at(const DualPoint& p) const;
    const std::map<DualPoint, TruncatedOperator>& samples() const { return samples_; }

    double sup_norm() const;
    RestrictedField adjoint() const;
    RestrictedField operator+(const RestrictedField& o) const;
    RestrictedField operator*(cplx s) const;

private:
    std::map<DualPoint, TruncatedOperator> samples_;
};

// psi(D_+) p_+ + psi(D_-) p_-, psi(P^{+,0}), or
// K_(1) psi(D_1^+) K_(1)^-1 p_+ + K_[1] psi(D_1^-) K_[1]^-1 p_- + psi(F_1) p_0,
// realized on the full window of matching parity.
TruncatedOperator nu_apply(NuCase c, const RestrictedField& psi, const WindowSizes& w);

double nu_norm_bound_defect(NuCase c, const RestrictedField& psi, const WindowSizes& w);
double nu_involution_defect(NuCase c, const RestrictedField& psi, const WindowSizes& w);

// F(h) restricted to the limit points of the case.
RestrictedField restricted_fourier(NuCase c, const TestFunction& h, const WindowSizes& w,
                                   const FourierResolution& res = {});

struct NcdlPoint {
    double parameter = 0.0;  // v for case I, u for cases II and III
    double defect = 0.0;     // || gamma(h) - nu(F(h)) ||
    double bound = 0.0;      // principal series bound between the parameter and its limit
};

// gamma_j = P^{-,iv}, C^u (u -> 0) or C^u (u -> 1) along `grid`.
std::vector<NcdlPoint> verify_ncdl_limit(NuCase c, const TestFunction& h, const std::vector<double>& grid,
                                         const WindowSizes& w, const FourierResolution& res = {});

}  // namespace sl2
