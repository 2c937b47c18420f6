#include <stdexcept>

#include "sl2/dual_space.hpp"
#include "sl2/intertwiner.hpp"
#include "sl2/norm_control.hpp"

namespace sl2 {

namespace {

// pi_x(h) for a family member with parameter x
TruncatedOperator member(Family f, double x, const TestFunction& h, const WindowSizes& w,
                         const FourierResolution& res) {
    switch (f) {
        case Family::PrincipalEven: return fourier_at(DualPoint::principal_even(x), h, w, res);
        case Family::PrincipalOdd: return fourier_at(DualPoint::principal_odd(x), h, w, res);
        case Family::Complementary: return fourier_at(DualPoint::complementary(x), h, w, res);
        default: break;
    }
    throw std::invalid_argument("empirical_convergence_defect: discrete series families have no limit");
}

}  // namespace

std::vector<double> empirical_convergence_defect(const SequenceDescriptor& s, const TestFunction& h,
                                                 const WindowSizes& w, const std::vector<double>& grid,
                                                 const FourierResolution& res) {
    const LimitSet ls = limit_set(s);
    if (!ls) throw std::invalid_argument("empirical_convergence_defect: \"" + s.name + "\" has no limit");
    if (s.stages.size() != 1)
        throw std::invalid_argument("empirical_convergence_defect: only single-stage descriptors are sampled");
    const Stage& st = s.stages.front();
    if (st.constant) return std::vector<double>(grid.size(), 0.0);

    std::vector<double> out;
    if (ls->size() > 1) {
        const NuCase c = st.family == Family::PrincipalOdd ? NuCase::I : NuCase::III;
        for (const NcdlPoint& p : verify_ncdl_limit(c, h, grid, w, res)) out.push_back(p.defect);
        return out;
    }
    const DualPoint limit = *ls->begin();
    // members and limit may sit in different families (C^u -> P^{+,0}); both use the full window
    const TruncatedOperator at_limit = fourier_at(limit, h, w, res);
    for (double x : grid) out.push_back((member(st.family, x, h, w, res) - at_limit).op_norm());
    return out;
}

}  // namespace sl2
