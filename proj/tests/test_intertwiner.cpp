#include <cmath>

#include "doctest.h"
#include "sl2/intertwiner.hpp"

using namespace sl2;

TEST_CASE("closed-form eigenvalue ratios") {
    for (cplx u : {cplx(0.3), cplx(1.7), cplx(0.2, 2.0)}) {
        CHECK(std::abs(ratio_c(2, u) - (1.0 - u) / (1.0 + u)) < 1e-15);
        CHECK(std::abs(ratio_c(-2, u) - ratio_c(2, u)) == 0.0);
        CHECK(std::abs(ratio_c(4, u) / ratio_c(2, u) + (u - 3.0) / (u + 3.0)) < 1e-14);
        CHECK(ratio_c(0, u) == cplx(1.0));
    }
    CHECK(ratio_c(2, 1.0) == cplx(0.0));
    CHECK(ratio_c(4, 1.0) == cplx(0.0));
    for (int n = -12; n <= 12; n += 2) CHECK(ratio_c(n, 0.0) == cplx(1.0));

    SUBCASE("poles") {
        CHECK_THROWS_AS(ratio_c(4, -3.0), PoleError);
        try {
            ratio_c(6, -5.0);
        } catch (const PoleError& e) {
            CHECK(e.pole() == cplx(-5.0));
            CHECK(e.n() == 6);
        }
        CHECK_NOTHROW(ratio_c(2, -3.0));
    }
    SUBCASE("positivity on (0,1)") {
        for (int n = -16; n <= 16; n += 2)
            for (int k = 1; k < 50; ++k) CHECK(ratio_c(n, k / 50.0).real() > 0.0);
    }
    SUBCASE("pole-cancelled endpoint ratios") {
        CHECK(std::abs(ratio_over_base(4, 2, 1.0) - 0.5) < 1e-15);
        CHECK(std::abs(ratio_over_base(-4, -2, 1.0) - 0.5) < 1e-15);
        CHECK(ratio_over_base(2, 2, 1.0) == cplx(1.0));
        for (int n = 2; n <= 20; n += 2) CHECK(ratio_over_base(n, 2, 1.0).real() > 0.0);
        // agrees with the quotient away from u = 1
        CHECK(std::abs(ratio_over_base(8, 2, 0.7) - ratio_c(8, 0.7) / ratio_c(2, 0.7)) < 1e-14);
    }
}

TEST_CASE("gamma invariance") {
    CHECK(gamma_invariance_defect(2, 0.37) < 1e-14);
    CHECK(gamma_invariance_defect(0, 0.37) == 0.0);
    CHECK(gamma_invariance_defect(6, cplx(0.0, 0.9)) < 1e-13);
}

TEST_CASE("numeric intertwiner eigenvalues") {
    SUBCASE("ratio at u = 1.5") {
        const cplx q = knapp_stein_eigen(1.5, 2).value / knapp_stein_eigen(1.5, 0).value;
        const cplx exact = -(1.5 - 1.0) / (1.5 + 1.0);
        CHECK(std::abs(q - exact) < 1e-5 * std::abs(exact));
    }
    SUBCASE("zero at u = 1") {
        const cplx c0 = knapp_stein_eigen(1.0, 0).value;
        for (int n : {-4, -2, 2, 4}) CHECK(std::abs(knapp_stein_eigen(1.0, n).value / c0) < 1e-5);
    }
    SUBCASE("conjugation symmetry for real u") {
        for (int n : {2, 4}) {
            const cplx a = knapp_stein_eigen(0.8, n).value, b = knapp_stein_eigen(0.8, -n).value;
            CHECK(std::abs(a - std::conj(b)) < 1e-8 * std::abs(a));
        }
    }
    SUBCASE("error estimates") {
        const KnappSteinResult r = knapp_stein_eigen(cplx(2.0, 0.5), 4);
        CHECK(r.tail_bound >= 0.0);
        CHECK(r.error_estimate < 1e-6 * std::abs(r.value));
        CHECK(r.cutoff > 1.0);
    }
    CHECK_THROWS_AS(knapp_stein_eigen(0.0, 2), std::domain_error);
    CHECK_THROWS_AS(knapp_stein_eigen(cplx(-0.5, 1.0), 2), std::domain_error);
    CHECK_THROWS(knapp_stein_eigen(0.5, 3));
}

TEST_CASE("intertwining relation") {
    const KTypeWindow six(Parity::Even, 6);
    for (const GroupElement& g : {GroupElement::diag_exp(1.0), GroupElement::unipotent(1.0) * GroupElement::diag_exp(0.5),
                                  GroupElement::rotation(0.3) * GroupElement::diag_exp(0.7)}) {
        for (double u : {0.3, 0.6}) {
            const TruncatedOperator a = rep_matrix(Sign::Plus, u, g, six), b = rep_matrix(Sign::Plus, -u, g, six);
            for (int l : six.indices())
                for (int n : six.indices())
                    CHECK(std::abs(ratio_c(l, u) * a.entry(l, n) - ratio_c(n, u) * b.entry(l, n)) < 1e-6);
        }
    }
}

TEST_CASE("rescaling operators") {
    const KTypeWindow w(Parity::Even, 8);
    SUBCASE("K_u tends to the identity") {
        const RescalingOperator k(ComplementaryScale{1e-7}, w);
        for (int n : w.indices()) CHECK(std::abs(k.d(n) - 1.0) < 1e-6);
    }
    SUBCASE("endpoint operators") {
        const RescalingOperator kp = rescaling(PositiveEndpoint{}, w), kn = rescaling(NegativeEndpoint{}, w);
        CHECK(kp.window().indices() == std::vector<int>{2, 4, 6, 8});
        CHECK(kn.window().indices() == std::vector<int>{-8, -6, -4, -2});
        CHECK(kp.d(2) == 1.0);
        CHECK(std::abs(kp.d(4) - std::sqrt(0.5)) < 1e-15);
        CHECK(std::abs(kn.d(-4) - std::sqrt(0.5)) < 1e-15);
        for (int k = 0; k < 4; ++k) CHECK(kp.diagonal()(k) > 0.0);
    }
    SUBCASE("conjugation round trip") {
        const RescalingOperator k(ComplementaryScale{0.4}, w);
        TruncatedOperator a = TruncatedOperator::zero(w);
        a.set(4, -2, cplx(1.0, 2.0));
        a.set(0, 0, 3.0);
        CHECK((k.unconjugate(k.conjugate(a)) - a).op_norm() < 1e-14);
        CHECK(((k.as_operator() * k.inverse()) - TruncatedOperator::identity(w)).op_norm() < 1e-14);
    }
    CHECK_THROWS(RescalingOperator(ComplementaryScale{1.2}, w));
    CHECK_THROWS(RescalingOperator(ComplementaryScale{0.5}, KTypeWindow(Parity::Odd, 5)));
}

TEST_CASE("complementary series transform") {
    const KTypeWindow w(Parity::Even, 8);
    const TestFunction h = TestFunction::single(4, 2, BumpProfile{0.3, 1.1, 1.0}) + TestFunction::single(2, 2, BumpProfile{0.2, 0.9, 2.0});
    const double u = 0.6;
    const TruncatedOperator scalar = comp_series_fourier(u, h, w), conj = comp_series_fourier_conjugated(u, h, w);
    CHECK((scalar - conj).op_norm() < 1e-12);
    const TruncatedOperator p = group_fourier(Sign::Plus, u, h, w);
    CHECK(scalar.entry(2, 2) == p.entry(2, 2));
    CHECK(std::abs(scalar.entry(4, 2) - std::sqrt(ratio_c(4, u) / ratio_c(2, u)) * p.entry(4, 2)) < 1e-15);
    // the transform approaches P^{+,0}(h) as u -> 0
    const TruncatedOperator p0 = group_fourier(Sign::Plus, 0.0, h, w);
    CHECK((comp_series_fourier(1e-3, h, w) - p0).op_norm() < (comp_series_fourier(1e-2, h, w) - p0).op_norm());
    CHECK((comp_series_fourier(1e-4, h, w) - p0).op_norm() < 1e-3);
}
