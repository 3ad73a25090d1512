#pragma once

#include <cstddef>
#include <vector>

#include "intermap/common.hpp"

namespace intermap {

/// Dense complex matrix, row-major, two float64 per entry. The universal
/// currency between modules; also the exact layout of the binary cache
/// payload.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<cdouble>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cdouble& at(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    cdouble& operator()(std::size_t i, std::size_t j) { return at(i, j); }
    const cdouble& operator()(std::size_t i, std::size_t j) const {
        return at(i, j);
    }

    cdouble* data() { return data_.data(); }
    const cdouble* data() const { return data_.data(); }

    ComplexMatrix adjoint() const;

    /// Scale row i by s[i] in place (diag(s) * M).
    void scale_rows(const std::vector<cdouble>& s);
    /// Scale column j by s[j] in place (M * diag(s)).
    void scale_cols(const std::vector<cdouble>& s);

    std::vector<cdouble> column(std::size_t j) const;

    /// Square submatrix on a subset of indices (same subset for rows/cols).
    ComplexMatrix restricted(const std::vector<std::size_t>& indices) const;

    /// max_ij |U^dag U - I|_ij
    double unitarity_residual() const;

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

/// C = A * B via BLAS.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
/// y = A * x via BLAS.
StateVector matvec(const ComplexMatrix& a, const StateVector& x);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |a - c*b| over entries, with the global phase c chosen to align the
/// largest-modulus entry of b. Gate constructions fix phases only
/// relatively, so equivalence checks quotient the global phase out.
double max_abs_diff_up_to_phase(const ComplexMatrix& a,
                                const ComplexMatrix& b);

double norm(const StateVector& v);
void normalize(StateVector& v);
cdouble inner(const StateVector& a, const StateVector& b);
double max_abs_diff(const StateVector& a, const StateVector& b);

}  // namespace intermap
