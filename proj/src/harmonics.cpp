#include "sl2/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sl2/quadrature.hpp"

namespace sl2 {

Parity parity_of(int n) { return (n % 2 == 0) ? Parity::Even : Parity::Odd; }

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

KTypeWindow::KTypeWindow(Parity parity, int max_index) : KTypeWindow(parity, max_index, -max_index, max_index) {
    if (max_index < 2) throw std::invalid_argument("KTypeWindow: max_index must be >= 2");
}

KTypeWindow::KTypeWindow(Parity parity, int max_index, int lo, int hi)
    : parity_(parity), max_index_(max_index), lo_(lo), hi_(hi) {
    for (int n = lo; n <= hi; ++n)
        if (parity_of(n) == parity) indices_.push_back(n);
}

KTypeWindow KTypeWindow::restricted(Parity parity, int max_index, Support support) {
    if (max_index < 2) throw std::invalid_argument("KTypeWindow: max_index must be >= 2");
    switch (support) {
        case Support::Full: return {parity, max_index};
        case Support::Positive: return {parity, max_index, 1, max_index};
        case Support::Negative: return {parity, max_index, -max_index, -1};
        case Support::Zero:
            if (parity != Parity::Even) throw std::invalid_argument("KTypeWindow: odd windows have no zero K-type");
            return {parity, max_index, 0, 0};
    }
    throw std::invalid_argument("KTypeWindow: unknown support");
}

KTypeWindow KTypeWindow::tail(Parity parity, int max_index, int from) {
    if (from > 0) return {parity, max_index, from, max_index};
    if (from < 0) return {parity, max_index, -max_index, from};
    throw std::invalid_argument("KTypeWindow::tail: start must be nonzero");
}

KTypeWindow KTypeWindow::range(Parity parity, int max_index, int lo, int hi) {
    if (lo < -max_index || hi > max_index || lo > hi + 2)
        throw std::invalid_argument("KTypeWindow::range: [" + std::to_string(lo) + "," + std::to_string(hi) +
                                    "] does not fit |n| <= " + std::to_string(max_index));
    return {parity, max_index, lo, hi};
}

bool KTypeWindow::contains(int n) const { return n >= lo_ && n <= hi_ && parity_of(n) == parity_; }

std::optional<int> KTypeWindow::position(int n) const {
    if (!contains(n)) return std::nullopt;
    const int first = indices_.empty() ? lo_ : indices_.front();
    return (n - first) / 2;
}

bool KTypeWindow::is_subset_of(const KTypeWindow& other) const {
    for (int n : indices_)
        if (!other.contains(n)) return false;
    return true;
}

std::string KTypeWindow::describe() const {
    return std::string(to_string(parity_)) + "[" + std::to_string(lo_) + "," + std::to_string(hi_) + "]";
}

FourierVector::FourierVector(KTypeWindow w) : window(std::move(w)), coeffs(Eigen::VectorXcd::Zero(window.size())) {}

FourierVector FourierVector::basis(const KTypeWindow& w, int n) {
    FourierVector v(w);
    v.set(n, 1.0);
    return v;
}

cplx FourierVector::at(int n) const {
    const auto p = window.position(n);
    return p ? coeffs(*p) : cplx{};
}

void FourierVector::set(int n, cplx value) {
    const auto p = window.position(n);
    if (!p) throw std::out_of_range("FourierVector: index " + std::to_string(n) + " outside " + window.describe());
    coeffs(*p) = value;
}

cplx fourier_coeff(const std::vector<cplx>& samples, int n) {
    const int m = static_cast<int>(samples.size());
    if (2 * std::abs(n) >= m)
        throw std::invalid_argument("fourier_coeff: |n| must be below half the sample count");
    CompensatedSum<cplx> acc;
    for (int j = 0; j < m; ++j) {
        // reduce n*j mod m before forming the angle, keeps phases exact
        const long r = (static_cast<long>(n) * j) % m;
        acc.add(samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / m));
    }
    return acc.value() / static_cast<double>(m);
}

std::vector<cplx> synthesize(const FourierVector& v, int n_samples) {
    std::vector<cplx> out(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        CompensatedSum<cplx> acc;
        for (int k = 0; k < v.window.size(); ++k) {
            const int n = v.window.indices()[k];
            const long r = (static_cast<long>(n) * j) % n_samples;
            acc.add(v.coeffs(k) * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / n_samples));
        }
        out[j] = acc.value();
    }
    return out;
}

FourierVector analyze(const std::vector<cplx>& samples, const KTypeWindow& window) {
    FourierVector v(window);
    for (int k = 0; k < window.size(); ++k) v.coeffs(k) = fourier_coeff(samples, -window.indices()[k]);
    return v;
}

FourierVector project_pn(const FourierVector& v, int n) {
    FourierVector out(v.window);
    if (v.window.contains(n)) out.set(n, v.at(n));
    return out;
}

double l2_norm(const FourierVector& v) { return v.coeffs.norm(); }

Eigen::MatrixXcd projection_matrix(const KTypeWindow& w, Support part) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(w.size(), w.size());
    for (int k = 0; k < w.size(); ++k) {
        const int n = w.indices()[k];
        const bool keep = part == Support::Full || (part == Support::Positive && n > 0) ||
                          (part == Support::Negative && n < 0) || (part == Support::Zero && n == 0);
        if (keep) p(k, k) = 1.0;
    }
    return p;
}

}  // namespace sl2
