#include "sl2/operator.hpp"

#include <stdexcept>
#include <string>

namespace sl2 {

TruncatedOperator::TruncatedOperator(KTypeWindow rows, KTypeWindow cols)
    : rows_(std::move(rows)), cols_(std::move(cols)), m_(Eigen::MatrixXcd::Zero(rows_.size(), cols_.size())) {}

TruncatedOperator::TruncatedOperator(KTypeWindow rows, KTypeWindow cols, Eigen::MatrixXcd m)
    : rows_(std::move(rows)), cols_(std::move(cols)), m_(std::move(m)) {
    if (m_.rows() != rows_.size() || m_.cols() != cols_.size())
        throw std::invalid_argument("TruncatedOperator: matrix shape does not match windows");
}

TruncatedOperator TruncatedOperator::identity(const KTypeWindow& w) {
    return {w, w, Eigen::MatrixXcd::Identity(w.size(), w.size())};
}

TruncatedOperator TruncatedOperator::projection(const KTypeWindow& w, Support part) {
    return {w, w, projection_matrix(w, part)};
}

cplx TruncatedOperator::entry(int l, int n) const {
    const auto i = rows_.position(l);
    const auto j = cols_.position(n);
    return (i && j) ? m_(*i, *j) : cplx{};
}

void TruncatedOperator::set(int l, int n, cplx v) {
    const auto i = rows_.position(l);
    const auto j = cols_.position(n);
    if (!i || !j)
        throw std::out_of_range("TruncatedOperator: entry (" + std::to_string(l) + "," + std::to_string(n) +
                                ") outside " + rows_.describe() + " x " + cols_.describe());
    m_(*i, *j) = v;
}

double TruncatedOperator::op_norm() const {
    if (m_.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m_);
    return svd.singularValues()(0);
}

TruncatedOperator TruncatedOperator::adjoint() const { return {cols_, rows_, m_.adjoint()}; }

TruncatedOperator TruncatedOperator::embed(const KTypeWindow& rows, const KTypeWindow& cols) const {
    if (!rows_.is_subset_of(rows) || !cols_.is_subset_of(cols))
        throw std::invalid_argument("TruncatedOperator::embed: target windows " + rows.describe() + " x " +
                                    cols.describe() + " do not contain " + rows_.describe() + " x " +
                                    cols_.describe());
    TruncatedOperator out(rows, cols);
    for (int i = 0; i < rows_.size(); ++i)
        for (int j = 0; j < cols_.size(); ++j)
            out.m_(*rows.position(rows_.indices()[i]), *cols.position(cols_.indices()[j])) = m_(i, j);
    return out;
}

TruncatedOperator TruncatedOperator::restrict_to(const KTypeWindow& rows, const KTypeWindow& cols) const {
    if (!rows.is_subset_of(rows_) || !cols.is_subset_of(cols_))
        throw std::invalid_argument("TruncatedOperator::restrict_to: " + rows.describe() + " x " + cols.describe() +
                                    " is not inside " + rows_.describe() + " x " + cols_.describe());
    TruncatedOperator out(rows, cols);
    for (int i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols.size(); ++j)
            out.m_(i, j) = m_(*rows_.position(rows.indices()[i]), *cols_.position(cols.indices()[j]));
    return out;
}

void TruncatedOperator::require_same_shape(const TruncatedOperator& o, const char* op) const {
    if (!(rows_ == o.rows_) || !(cols_ == o.cols_))
        throw std::invalid_argument(std::string("TruncatedOperator ") + op + ": window mismatch " + rows_.describe() +
                                    " x " + cols_.describe() + " vs " + o.rows_.describe() + " x " +
                                    o.cols_.describe());
}

TruncatedOperator TruncatedOperator::operator+(const TruncatedOperator& o) const {
    require_same_shape(o, "+");
    return {rows_, cols_, m_ + o.m_};
}

TruncatedOperator TruncatedOperator::operator-(const TruncatedOperator& o) const {
    require_same_shape(o, "-");
    return {rows_, cols_, m_ - o.m_};
}

TruncatedOperator TruncatedOperator::operator*(const TruncatedOperator& o) const {
    if (!(cols_ == o.rows_))
        throw std::invalid_argument("TruncatedOperator composition: inner windows " + cols_.describe() + " and " +
                                    o.rows_.describe() + " differ");
    return {rows_, o.cols_, m_ * o.m_};
}

TruncatedOperator TruncatedOperator::operator*(cplx s) const { return {rows_, cols_, m_ * s}; }

double commutator_norm(const TruncatedOperator& a, const TruncatedOperator& b) {
    return (a * b - b * a).op_norm();
}

}  // namespace sl2
