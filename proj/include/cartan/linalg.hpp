#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cartan/rational.hpp"

namespace cartan {

/// Dense matrix over Q, row-major. Sizes stay tiny (contraction matrices,
/// frame matrices), so no sparsity is attempted.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols);
    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return data_[index(r, c)]; }
    const Rational& at(int r, int c) const { return data_[index(r, c)]; }

    bool operator==(const RationalMatrix& o) const = default;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    /// Matrix-vector product A x.
    std::vector<Rational> apply(std::span<const Rational> x) const;

private:
    int index(int r, int c) const;

    int rows_, cols_;
    std::vector<Rational> data_;
};

/// Reduced row echelon factorization of a fixed matrix A, kept together with
/// the row transform T satisfying T A = R. Factoring once makes repeated
/// solves against the same A cheap.
class RowEchelon {
public:
    explicit RowEchelon(RationalMatrix a);

    int rank() const { return static_cast<int>(pivot_cols_.size()); }

    /// A solution of A x = b with free variables set to zero, or nullopt
    /// when the system is inconsistent.
    std::optional<std::vector<Rational>> solve(std::span<const Rational> b) const;

    /// A nonzero kernel vector of A, or nullopt when A has full column rank.
    std::optional<std::vector<Rational>> kernel_vector() const;

    const RationalMatrix& rref() const { return rref_; }
    const RationalMatrix& transform() const { return transform_; }

private:
    RationalMatrix rref_;
    RationalMatrix transform_;
    std::vector<int> pivot_cols_;
};

int rank(const RationalMatrix& a);
Rational determinant(const RationalMatrix& a);
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

}  // namespace cartan
