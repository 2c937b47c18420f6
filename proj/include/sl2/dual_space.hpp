#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "sl2/group.hpp"
#include "sl2/operator.hpp"
#include "sl2/principal_series.hpp"
#include "sl2/test_function.hpp"

namespace sl2 {

// Ordered by stratum, so sets of points print in a stable order.
enum class DualKind { Trivial, Discrete, LimitDiscrete, PrincipalEven, PrincipalOdd, Complementary };

class DualPoint {
public:
    static DualPoint principal_even(double v);   // P^{+,iv}, v >= 0
    static DualPoint principal_odd(double v);    // P^{-,iv}, v > 0
    static DualPoint complementary(double u);    // C^u, 0 < u < 1
    static DualPoint discrete(int m, Sign side); // D_m^+- , m >= 1
    static DualPoint limit_discrete(Sign side);  // D_+-
    static DualPoint trivial();                  // F_1

    DualKind kind() const { return kind_; }
    double parameter() const { return param_; }  // v or u
    int m() const { return m_; }
    Sign side() const { return side_; }

    std::string label() const;
    std::weak_ordering operator<=>(const DualPoint& o) const;
    bool operator==(const DualPoint& o) const { return (*this <=> o) == 0; }

private:
    DualPoint(DualKind k, double p, int m, Sign s) : kind_(k), param_(p), m_(m), side_(s) {}
    DualKind kind_;
    double param_ = 0.0;
    int m_ = 0;
    Sign side_ = Sign::Plus;
};

double casimir_value(const DualPoint& p);

// Stratum index 0..8 of the closed filtration S_0 c ... c S_8.
int stratum(const DualPoint& p);

struct FieldCoordinate {
    int field = 1;          // 1, 2 or 3
    cplx coordinate{};      // iv, u or 1 on I_1; iv on I_2; +-m on I_3
};
FieldCoordinate parametrize(const DualPoint& p);

// How a dual point is carried by a principal series window.
struct Realization {
    Sign sign;
    cplx u;
    std::vector<int> k_types;  // K-types spanning the point inside the window
};
Realization realize(const DualPoint& p, int max_index);

struct CasimirEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double max_imag = 0.0;
    std::vector<int> k_types;
    std::vector<double> values;
};

struct CasimirOptions {
    int max_index = 8;
    double step = 1e-2;
    int circle = 1024;
};

// Diagonal of sum_i d^2/dsdr <pi(exp(s X_i) exp(r X^i)) e_n, e_n> at 0 by central
// differences with one Richardson step.
CasimirEstimate casimir_numeric(const DualPoint& p, const CasimirOptions& opts = {});
CasimirEstimate casimir_numeric(const DualPoint& p, const std::array<CasimirPair, 3>& pairs,
                                const CasimirOptions& opts = {});

// Tail of a sequence in the dual: either a continuous family with a parameter
// limit (possibly infinite) or a constant point.
enum class Family { PrincipalEven, PrincipalOdd, Complementary, DiscretePlus, DiscreteMinus };

struct Stage {
    bool constant = false;
    Family family = Family::PrincipalEven;
    double limit = 0.0;                 // +inf allowed
    std::optional<DualPoint> point;     // set for constant stages
};

struct SequenceDescriptor {
    std::string name;
    std::vector<Stage> stages;
};

// std::nullopt means no limit.
using LimitSet = std::optional<std::set<DualPoint>>;

LimitSet limit_set(const SequenceDescriptor& s);
bool is_properly_converging(const SequenceDescriptor& s);
std::string format_limit_set(const LimitSet& ls);

SequenceDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json descriptor_to_json(const SequenceDescriptor& s);
DualPoint dual_point_from_json(const nlohmann::json& j);
nlohmann::json dual_point_to_json(const DualPoint& p);
std::string describe(const SequenceDescriptor& s);

// CSV rows "name,descriptor,limit_set,properly_converging" with a header line.
std::string topology_table_csv(const std::vector<SequenceDescriptor>& ds);

struct WindowSizes {
    int even = 8;
    int odd = 9;
};

// F(h)(p) in the function picture: principal and complementary points on the
// full window, D_+- and D_m^+- on their sub-windows, F_1 on the zero window.
TruncatedOperator fourier_at(const DualPoint& p, const TestFunction& h, const WindowSizes& w,
                             const FourierResolution& res = {});
KTypeWindow point_window(const DualPoint& p, const WindowSizes& w);

// Defects ||pi_j(h) - pi_limit(h)|| along `grid` of family parameters.
std::vector<double> empirical_convergence_defect(const SequenceDescriptor& s, const TestFunction& h,
                                                 const WindowSizes& w, const std::vector<double>& grid,
                                                 const FourierResolution& res = {});

}  // namespace sl2
