#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sl2 {

using cplx = std::complex<double>;

enum class Parity { Even, Odd };

enum class Support {
    Full,      // all n with |n| <= N
    Positive,  // n > 0
    Negative,  // n < 0
    Zero       // n = 0 only
};

Parity parity_of(int n);
const char* to_string(Parity p);

// K-types n with matching parity inside [lo, hi]. Basis function e_n(k_phi) = e^{-in phi}.
class KTypeWindow {
public:
    // Symmetric window |n| <= N; N >= 2.
    KTypeWindow(Parity parity, int max_index);
    // Parity-restricted part of the symmetric window.
    static KTypeWindow restricted(Parity parity, int max_index, Support support);
    // Indices with n >= lo (lo > 0) or n <= lo (lo < 0) up to |n| <= max_index.
    static KTypeWindow tail(Parity parity, int max_index, int from);
    // Arbitrary range inside |n| <= max_index, used when reading windows back.
    static KTypeWindow range(Parity parity, int max_index, int lo, int hi);

    Parity parity() const { return parity_; }
    int max_index() const { return max_index_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int size() const { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const { return indices_; }
    bool contains(int n) const;
    std::optional<int> position(int n) const;
    bool is_subset_of(const KTypeWindow& other) const;

    // Same parity and same K-types; the nominal bounds may differ.
    bool operator==(const KTypeWindow& o) const { return parity_ == o.parity_ && indices_ == o.indices_; }
    std::string describe() const;

private:
    KTypeWindow(Parity parity, int max_index, int lo, int hi);
    Parity parity_;
    int max_index_;
    int lo_, hi_;
    std::vector<int> indices_;
};

struct FourierVector {
    KTypeWindow window;
    Eigen::VectorXcd coeffs;

    explicit FourierVector(KTypeWindow w);
    static FourierVector basis(const KTypeWindow& w, int n);

    cplx at(int n) const;
    void set(int n, cplx value);
};

// Trapezoid b_n(f) = mean_j f(phi_j) e^{-in phi_j}; rejects |n| >= samples/2.
cplx fourier_coeff(const std::vector<cplx>& samples, int n);

// Samples of sum_n c_n e^{-in phi} at the uniform circle nodes.
std::vector<cplx> synthesize(const FourierVector& v, int n_samples);
// Inverse of synthesize: c_n = b_{-n}(f) for every n in the window.
FourierVector analyze(const std::vector<cplx>& samples, const KTypeWindow& window);

FourierVector project_pn(const FourierVector& v, int n);
double l2_norm(const FourierVector& v);

// Diagonal 0/1 matrices on the window.
Eigen::MatrixXcd projection_matrix(const KTypeWindow& w, Support part);

}  // namespace sl2
