#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sl2/harmonics.hpp"

using namespace sl2;
using std::numbers::pi;

namespace {

std::vector<cplx> sample(int count, auto f) {
    std::vector<cplx> out(count);
    for (int j = 0; j < count; ++j) out[j] = f(2 * pi * j / count);
    return out;
}

}  // namespace

TEST_CASE("windows") {
    const KTypeWindow even(Parity::Even, 4), odd(Parity::Odd, 5);
    CHECK(even.indices() == std::vector<int>{-4, -2, 0, 2, 4});
    CHECK(odd.indices() == std::vector<int>{-5, -3, -1, 1, 3, 5});
    CHECK(even.contains(0));
    CHECK_FALSE(odd.contains(0));
    CHECK_FALSE(even.contains(3));
    CHECK(*even.position(2) == 3);
    CHECK_FALSE(even.position(6).has_value());
    CHECK_THROWS(KTypeWindow(Parity::Even, 1));
    CHECK_THROWS(KTypeWindow::restricted(Parity::Odd, 5, Support::Zero));

    const KTypeWindow pos = KTypeWindow::restricted(Parity::Even, 6, Support::Positive);
    CHECK(pos.indices() == std::vector<int>{2, 4, 6});
    CHECK(pos.is_subset_of(KTypeWindow(Parity::Even, 6)));
    CHECK(KTypeWindow::tail(Parity::Odd, 9, -4).indices() == std::vector<int>{-9, -7, -5});
    // same K-types with different nominal bounds compare equal
    CHECK(KTypeWindow::range(Parity::Even, 8, 1, 8) == KTypeWindow::range(Parity::Even, 8, 2, 8));
    CHECK_FALSE(KTypeWindow(Parity::Even, 4) == KTypeWindow(Parity::Even, 6));
}

TEST_CASE("fourier coefficients") {
    SUBCASE("e^{-im phi} picks b_{-m}") {
        for (int m : {-3, 0, 2, 5}) {
            const auto f = sample(64, [&](double p) { return std::polar(1.0, -m * p); });
            for (int n = -8; n <= 8; ++n) CHECK(std::abs(fourier_coeff(f, n) - cplx(n == -m ? 1.0 : 0.0)) < 1e-15);
        }
    }
    SUBCASE("constant") {
        const auto f = sample(16, [](double) { return cplx(1.0); });
        CHECK(std::abs(fourier_coeff(f, 0) - 1.0) < 1e-15);
        CHECK(std::abs(fourier_coeff(f, 3)) < 1e-15);
    }
    SUBCASE("cos 2 phi") {
        const auto f = sample(32, [](double p) { return cplx(std::cos(2 * p)); });
        CHECK(std::abs(fourier_coeff(f, 2) - 0.5) < 1e-15);
        CHECK(std::abs(fourier_coeff(f, -2) - 0.5) < 1e-15);
    }
    SUBCASE("aliasing guard") {
        const auto f = sample(16, [](double) { return cplx(1.0); });
        CHECK_NOTHROW(fourier_coeff(f, 7));
        CHECK_THROWS(fourier_coeff(f, 8));
        CHECK_THROWS(fourier_coeff(f, -8));
    }
}

TEST_CASE("synthesize and analyze are inverse") {
    const KTypeWindow w(Parity::Odd, 7);
    FourierVector v(w);
    for (int k = 0; k < w.size(); ++k) v.coeffs(k) = cplx(std::sin(1.0 + k), std::cos(3.0 * k));
    const FourierVector back = analyze(synthesize(v, 64), w);
    CHECK((back.coeffs - v.coeffs).norm() < 1e-13);
}

TEST_CASE("projections") {
    const KTypeWindow w(Parity::Even, 6);
    const FourierVector e2 = FourierVector::basis(w, 2);
    CHECK(l2_norm(e2) == 1.0);
    CHECK(l2_norm(project_pn(e2, 2)) == 1.0);
    CHECK(l2_norm(project_pn(e2, 4)) == 0.0);
    CHECK(l2_norm(FourierVector(w)) == 0.0);
    FourierVector v(w);
    v.set(0, 1.0);
    v.set(2, cplx(0, 2));
    CHECK(std::abs(l2_norm(v) - std::sqrt(5.0)) < 1e-15);
    CHECK_THROWS(v.set(3, 1.0));
    CHECK(v.at(8) == cplx(0.0));

    // p_+ + p_- + p_0 = id, and the sum of all p_n is the identity
    const Eigen::MatrixXcd sum = projection_matrix(w, Support::Positive) + projection_matrix(w, Support::Negative) +
                                 projection_matrix(w, Support::Zero);
    CHECK(sum == projection_matrix(w, Support::Full));
    CHECK(sum == Eigen::MatrixXcd::Identity(w.size(), w.size()));
    FourierVector total(w);
    for (int n : w.indices()) total.coeffs += project_pn(v, n).coeffs;
    CHECK(total.coeffs == v.coeffs);
}
