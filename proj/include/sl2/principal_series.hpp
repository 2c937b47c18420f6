#pragma once

#include <functional>
#include <vector>

#include "sl2/group.hpp"
#include "sl2/operator.hpp"
#include "sl2/test_function.hpp"

namespace sl2 {

// P^{+,u} acts on even functions on K, P^{-,u} on odd ones.
enum class Sign { Plus, Minus };

Parity parity_of(Sign s);
const char* to_string(Sign s);

struct FourierResolution {
    int circle = 1024;   // trapezoid nodes on K
    int t_nodes = 128;   // Gauss-Legendre nodes on each radial support
};

// <P^{+-,u}(g) e_n, e_l> = int_K e^{-(u+1) s(g^-1 k)} e^{-in phi(g^-1 k)} e^{il phi} dk
cplx matrix_element(Sign sign, cplx u, const GroupElement& g, int n, int l, int circle = 1024);

TruncatedOperator rep_matrix(Sign sign, cplx u, const GroupElement& g, const KTypeWindow& window, int circle = 1024);
TruncatedOperator rep_matrix(Sign sign, cplx u, const GroupElement& g, const KTypeWindow& rows,
                             const KTypeWindow& cols, int circle = 1024);

// pi(h) = int_G h(g) P^{+-,u}(g) dg. The angular integrals of the Cartan
// rule are exact on K-finite integrands, which leaves
// pi(h)_{l,n} = pi int chi(t) M_{l,n}(a_t) sinh t dt per component.
TruncatedOperator group_fourier(Sign sign, cplx u, const TestFunction& h, const KTypeWindow& window,
                                const FourierResolution& res = {});
TruncatedOperator group_fourier(Sign sign, cplx u, const TestFunction& h, const KTypeWindow& rows,
                                const KTypeWindow& cols, const FourierResolution& res = {});

// p_{l,n}(h)(g) = int_{KxK} h(k1 g k2^-1) e^{il phi1} e^{in phi2}, sampled on `t_grid`.
// The result is the component with row l and column -n.
TestFunction bitype_project(const std::function<cplx(const GroupElement&)>& h, int l, int n,
                            const std::vector<double>& t_grid, int circle = 64);

// max_n | int_K e^{-2 s(g^-1 k)} dk - 1 |, computed without truncation.
double unitarity_defect(Sign sign, double v, const GroupElement& g, const KTypeWindow& window, int circle = 1024);

struct BoundOptions {
    int t_samples = 64;
    int k_samples = 256;
    int x_samples = 4097;
    double margin = 1e-3;  // relative widening of the s-interval
};

// sqrt(|supp h|) sup_{x in I} |e^{-u1 x} - e^{-u2 x}| ||h||_{L^2(G)}
double convergence_bound(const TestFunction& h, cplx u1, cplx u2, const BoundOptions& opts = {});

}  // namespace sl2
