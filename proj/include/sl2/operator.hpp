#pragma once

#include <Eigen/Dense>

#include "sl2/harmonics.hpp"

namespace sl2 {

// Matrix with rows indexed by `rows` K-types and columns by `cols` K-types.
class TruncatedOperator {
public:
    TruncatedOperator(KTypeWindow rows, KTypeWindow cols);
    TruncatedOperator(KTypeWindow rows, KTypeWindow cols, Eigen::MatrixXcd m);
    static TruncatedOperator zero(const KTypeWindow& w) { return {w, w}; }
    static TruncatedOperator identity(const KTypeWindow& w);
    static TruncatedOperator projection(const KTypeWindow& w, Support part);

    const KTypeWindow& rows() const { return rows_; }
    const KTypeWindow& cols() const { return cols_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    Eigen::MatrixXcd& matrix() { return m_; }

    cplx entry(int l, int n) const;  // zero outside the windows
    void set(int l, int n, cplx v);

    double op_norm() const;  // largest singular value
    TruncatedOperator adjoint() const;

    // Copy into larger (or equal) windows, zero elsewhere.
    TruncatedOperator embed(const KTypeWindow& rows, const KTypeWindow& cols) const;
    // Keep the block on sub-windows.
    TruncatedOperator restrict_to(const KTypeWindow& rows, const KTypeWindow& cols) const;

    TruncatedOperator operator+(const TruncatedOperator& o) const;
    TruncatedOperator operator-(const TruncatedOperator& o) const;
    TruncatedOperator operator*(const TruncatedOperator& o) const;  // composition
    TruncatedOperator operator*(cplx s) const;

private:
    void require_same_shape(const TruncatedOperator& o, const char* op) const;
    KTypeWindow rows_, cols_;
    Eigen::MatrixXcd m_;
};

double commutator_norm(const TruncatedOperator& a, const TruncatedOperator& b);

}  // namespace sl2
