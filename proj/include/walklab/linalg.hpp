#pragma once

#include <cstddef>
#include <vector>

#include "walklab/error.hpp"

namespace walklab {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything in this project is desk scale
// (n <= ~500), so no sparsity or blocking.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const double* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }
    double* row_ptr(std::size_t i) { return a_.data() + i * cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

Vec mat_vec(const Matrix& m, const Vec& v);
// Row vector times matrix: (v^T M)^T.
Vec vec_mat(const Vec& v, const Matrix& m);
Matrix mat_mul(const Matrix& a, const Matrix& b);

// LU factorization with partial pivoting. Throws Error("singular_system")
// when a pivot falls below pivot_tol.
class LuFactor {
public:
    explicit LuFactor(Matrix a, double pivot_tol = 1e-12);
    Vec solve(Vec b) const;

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

inline Vec lu_solve(Matrix a, Vec b, double pivot_tol = 1e-12) {
    return LuFactor(std::move(a), pivot_tol).solve(std::move(b));
}

struct EigenDecomposition {
    Vec values;      // sorted descending
    Matrix vectors;  // column i pairs with values[i]; deterministic sign
};

// Cyclic Jacobi rotations on a symmetric matrix. Converged when the
// off-diagonal Frobenius norm drops below off_tol; throws
// Error("eigensolve_failed") past max_sweeps.
EigenDecomposition jacobi_eigen(Matrix s, double off_tol = 1e-12, int max_sweeps = 100);

} // namespace walklab
