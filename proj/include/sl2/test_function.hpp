#pragma once

#include <variant>
#include <vector>

#include "json.hpp"

#include "sl2/group.hpp"
#include "sl2/harmonics.hpp"
#include "sl2/quadrature.hpp"

namespace sl2 {

// amplitude * exp(-1/(1 - z^2)), z the affine image of t in (-1, 1).
struct BumpProfile {
    double t0 = 0.2;
    double t1 = 1.2;
    double amplitude = 1.0;
};

// Piecewise linear through (grid, values); zero outside the grid.
struct SampledProfile {
    std::vector<double> grid;
    std::vector<cplx> values;
};

using Profile = std::variant<BumpProfile, SampledProfile>;

cplx profile_value(const Profile& p, double t);
Interval profile_support(const Profile& p);

// One K x K isotypic piece: h(k_a a_t k_b) = e^{-il a} weight chi(t) e^{-in b},
// so that pi(h) has its single entry at row l, column n.
struct Component {
    int l = 0;
    int n = 0;
    Profile chi;
    cplx weight{1.0, 0.0};

    cplx value(double t) const { return weight * profile_value(chi, t); }
};

class TestFunction {
public:
    explicit TestFunction(Parity parity, std::vector<Component> components = {});
    static TestFunction single(int l, int n, Profile chi, cplx weight = 1.0);

    Parity parity() const { return parity_; }
    const std::vector<Component>& components() const { return components_; }
    bool empty() const { return components_.empty(); }

    cplx operator()(const GroupElement& g) const;
    // Smallest interval of t containing every component support.
    Interval support() const;

    // Haar-measure integrals under dg = pi sinh t dt dphi1/2pi dphi2/2pi.
    cplx integral() const;           // int_G h, only (0,0) components contribute
    double l2_norm() const;          // ||h||_{L^2(G)}
    double l1_norm(int angular_nodes = 64) const;

    // a*(g) = conj(a(g^-1))
    TestFunction adjoint() const;
    TestFunction scaled(cplx s) const;
    TestFunction operator+(const TestFunction& o) const;

private:
    Parity parity_;
    std::vector<Component> components_;
};

// Bump on [t0, t1] rescaled so the single component (l, n) has unit L^1(G) norm.
TestFunction reference_test_function(int l, int n, double t0, double t1);

void to_json(nlohmann::json& j, const Profile& p);
void from_json(const nlohmann::json& j, Profile& p);
void to_json(nlohmann::json& j, const TestFunction& h);
TestFunction test_function_from_json(const nlohmann::json& j);

}  // namespace sl2
