#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sl2/dual_space.hpp"
#include "sl2/operator.hpp"
#include "sl2/test_function.hpp"

namespace sl2 {

struct FieldGrids {
    std::vector<double> f1_imag{0.0, 0.5, 1.0, 2.0, 4.0};  // v for F1(iv); must contain 0
    std::vector<double> f1_real{0.25, 0.5, 0.75};          // u in (0,1); F1(1) is always added
    std::vector<double> f2_imag{0.0, 0.5, 1.0, 2.0, 4.0};  // v for F2(iv); must contain 0
    int m_horizon = 8;                                     // F3 sampled on 2 <= |m| <= m_horizon
    WindowSizes windows;
    double tail_tolerance = 1e-2;  // tail norms relative to the sup norm

    void validate() const;
};

// Sampled model of C*(G) over I_1 = i[0,inf) u [0,1], I_2 = i[0,inf), I_3 = Z \ {-1,0,1}.
struct FieldTriple {
    FieldGrids grids;
    std::map<double, TruncatedOperator> f1_imag;  // F1(iv)
    std::map<double, TruncatedOperator> f1_real;  // F1(u), u in (0,1]
    std::map<double, TruncatedOperator> f2;       // F2(iv)
    std::map<int, TruncatedOperator> f3;          // F3(m)

    const TruncatedOperator& f1_at_one() const { return f1_real.at(1.0); }
    const TruncatedOperator& f2_at_zero() const { return f2.at(0.0); }

    FieldTriple adjoint() const;  // pointwise adjoint on I_1 and I_2
};

FieldTriple forward(const TestFunction& a, const FieldGrids& grids, const FourierResolution& res = {});

struct BackwardResult {
    TruncatedOperator op;
    double error_estimate = 0.0;    // interpolation gap, zero at sampled coordinates
    bool beyond_horizon = false;
    double tail_certificate = 0.0;  // largest sampled norm at the edge of the axis
};

BackwardResult backward(const FieldTriple& f, const DualPoint& p);

double sup_norm(const FieldTriple& f);

struct CommutationDefect {
    double at_one = 0.0;   // max over p_+, p_-, p_0 of ||[F1(1), p]||
    double at_zero = 0.0;  // max over p_+, p_- of ||[F2(0), p]||
};
CommutationDefect commutation_defect(const FieldTriple& f);

struct VanishingReport {
    bool pass = true;
    std::vector<std::string> offending;
    std::map<std::string, double> tail_norms;
};
VanishingReport vanishing_check(const FieldTriple& f);

// Largest ||F(x_{k+1}) - F(x_k)|| between adjacent samples of each continuous axis.
std::map<std::string, double> continuity_profile(const FieldTriple& f);

// Writes manifest.json, one .bin blob per sample and norms.csv.
void write_field_triple(const FieldTriple& f, const std::filesystem::path& dir);
FieldTriple read_field_triple(const std::filesystem::path& dir);
std::string norm_profile_csv(const FieldTriple& f);

}  // namespace sl2
