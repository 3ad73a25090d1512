#include "intermap/complex_matrix.hpp"

#include <cblas.h>

#include <cmath>

namespace intermap {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cdouble>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out.at(j, i) = std::conj(at(i, j));
        }
    }
    return out;
}

void ComplexMatrix::scale_rows(const std::vector<cdouble>& s) {
    for (std::size_t i = 0; i < rows_; ++i) {
        const cdouble f = s[i];
        for (std::size_t j = 0; j < cols_; ++j) data_[i * cols_ + j] *= f;
    }
}

void ComplexMatrix::scale_cols(const std::vector<cdouble>& s) {
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) data_[i * cols_ + j] *= s[j];
    }
}

std::vector<cdouble> ComplexMatrix::column(std::size_t j) const {
    std::vector<cdouble> col(rows_);
    for (std::size_t i = 0; i < rows_; ++i) col[i] = at(i, j);
    return col;
}

ComplexMatrix ComplexMatrix::restricted(
    const std::vector<std::size_t>& indices) const {
    const std::size_t m = indices.size();
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out.at(i, j) = at(indices[i], indices[j]);
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matmul: dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    const cdouble one{1.0, 0.0};
    const cdouble zero{0.0, 0.0};
    cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans,
                static_cast<int>(a.rows()), static_cast<int>(b.cols()),
                static_cast<int>(a.cols()), &one, a.data(),
                static_cast<int>(a.cols()), b.data(),
                static_cast<int>(b.cols()), &zero, c.data(),
                static_cast<int>(c.cols()));
    return c;
}

StateVector matvec(const ComplexMatrix& a, const StateVector& x) {
    if (a.cols() != x.size()) throw Error("matvec: dimension mismatch");
    StateVector y(a.rows());
    const cdouble one{1.0, 0.0};
    const cdouble zero{0.0, 0.0};
    cblas_zgemv(CblasRowMajor, CblasNoTrans, static_cast<int>(a.rows()),
                static_cast<int>(a.cols()), &one, a.data(),
                static_cast<int>(a.cols()), x.data(), 1, &zero, y.data(), 1);
    return y;
}

double ComplexMatrix::unitarity_residual() const {
    if (rows_ != cols_) throw Error("unitarity_residual: non-square matrix");
    ComplexMatrix g = matmul(adjoint(), *this);
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            const cdouble expect = (i == j) ? cdouble{1.0, 0.0} : cdouble{};
            worst = std::max(worst, std::abs(g.at(i, j) - expect));
        }
    }
    return worst;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error("max_abs_diff: shape mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return worst;
}

double max_abs_diff_up_to_phase(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error("max_abs_diff_up_to_phase: shape mismatch");
    }
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const double m = std::abs(b.at(i, j));
            if (m > best) {
                best = m;
                bi = i;
                bj = j;
            }
        }
    }
    if (best <= 0.0) return max_abs_diff(a, b);
    const cdouble phase = a.at(bi, bj) / b.at(bi, bj);
    const cdouble c = phase / std::abs(phase);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a.at(i, j) - c * b.at(i, j)));
        }
    }
    return worst;
}

double norm(const StateVector& v) {
    double s = 0.0;
    for (const cdouble& z : v) s += std::norm(z);
    return std::sqrt(s);
}

void normalize(StateVector& v) {
    const double n = norm(v);
    if (n == 0.0) throw NumericalError("normalize: zero vector");
    for (cdouble& z : v) z /= n;
}

cdouble inner(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw Error("inner: size mismatch");
    cdouble s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw Error("max_abs_diff: size mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace intermap
