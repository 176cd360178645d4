#include "cartan/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace cartan {

RationalMatrix::RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("RationalMatrix: negative dimension");
    data_.resize(static_cast<std::size_t>(rows) * cols);
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

int RationalMatrix::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("RationalMatrix: index out of range");
    return r * cols_ + c;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RationalMatrix: product shape mismatch");
    RationalMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    }
    return r;
}

std::vector<Rational> RationalMatrix::apply(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("RationalMatrix: vector length mismatch");
    std::vector<Rational> y(rows_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (!at(i, j).is_zero()) y[i] += at(i, j) * x[j];
        }
    }
    return y;
}

RowEchelon::RowEchelon(RationalMatrix a)
    : rref_(std::move(a)), transform_(RationalMatrix::identity(rref_.rows())) {
    const int rows = rref_.rows(), cols = rref_.cols();
    int lead = 0;
    for (int col = 0; col < cols && lead < rows; ++col) {
        int pivot = -1;
        for (int r = lead; r < rows; ++r) {
            if (!rref_.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != lead) {
            for (int c = 0; c < cols; ++c) std::swap(rref_.at(pivot, c), rref_.at(lead, c));
            for (int c = 0; c < rows; ++c) std::swap(transform_.at(pivot, c), transform_.at(lead, c));
        }
        const Rational inv = Rational(1) / rref_.at(lead, col);
        for (int c = 0; c < cols; ++c) rref_.at(lead, c) *= inv;
        for (int c = 0; c < rows; ++c) transform_.at(lead, c) *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == lead || rref_.at(r, col).is_zero()) continue;
            const Rational factor = rref_.at(r, col);
            for (int c = 0; c < cols; ++c) rref_.at(r, c) -= factor * rref_.at(lead, c);
            for (int c = 0; c < rows; ++c) transform_.at(r, c) -= factor * transform_.at(lead, c);
        }
        pivot_cols_.push_back(col);
        ++lead;
    }
}

std::optional<std::vector<Rational>> RowEchelon::solve(std::span<const Rational> b) const {
    if (static_cast<int>(b.size()) != rref_.rows())
        throw std::invalid_argument("RowEchelon::solve: right-hand side length mismatch");
    const std::vector<Rational> y = transform_.apply(b);
    for (int r = rank(); r < rref_.rows(); ++r) {
        if (!y[r].is_zero()) return std::nullopt;
    }
    std::vector<Rational> x(rref_.cols());
    for (int r = 0; r < rank(); ++r) x[pivot_cols_[r]] = y[r];
    return x;
}

std::optional<std::vector<Rational>> RowEchelon::kernel_vector() const {
    const int cols = rref_.cols();
    if (rank() == cols) return std::nullopt;
    // First free column: unit value there, pivot entries balance it out.
    int free_col = 0;
    for (int r = 0; r < rank() && pivot_cols_[r] == free_col; ++r) ++free_col;
    std::vector<Rational> x(cols);
    x[free_col] = Rational(1);
    for (int r = 0; r < rank(); ++r) x[pivot_cols_[r]] = -rref_.at(r, free_col);
    return x;
}

int rank(const RationalMatrix& a) { return RowEchelon(a).rank(); }

Rational determinant(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
    RationalMatrix m = a;
    const int n = m.rows();
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        const Rational inv = Rational(1) / m.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            const Rational factor = m.at(r, col) * inv;
            for (int c = col; c < n; ++c) m.at(r, c) -= factor * m.at(col, c);
        }
    }
    return det;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
    RowEchelon re(a);
    if (re.rank() != a.rows()) return std::nullopt;
    // Full rank square matrix reduces to the identity, so T A = I.
    return re.transform();
}

}  // namespace cartan
