#include "walklab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace walklab {

Vec mat_vec(const Matrix& m, const Vec& v) {
    Vec out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double* row = m.row_ptr(i);
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) sum += row[j] * v[j];
        out[i] = sum;
    }
    return out;
}

Vec vec_mat(const Vec& v, const Matrix& m) {
    Vec out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        const double* row = m.row_ptr(i);
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * row[j];
    }
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row_ptr(i);
        double* orow = out.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

LuFactor::LuFactor(Matrix a, double pivot_tol) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < pivot_tol) throw Error("singular_system", "pivot below threshold in LU factorization");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) * inv;
            lu_(i, k) = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

Vec LuFactor::solve(Vec b) const {
    const std::size_t n = lu_.rows();
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]];
    // forward substitution (unit lower triangle)
    for (std::size_t i = 0; i < n; ++i) {
        double sum = y[i];
        for (std::size_t j = 0; j < i; ++j) sum -= lu_(i, j) * y[j];
        y[i] = sum;
    }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) sum -= lu_(ii, j) * y[j];
        y[ii] = sum / lu_(ii, ii);
    }
    return y;
}

namespace {

double off_diagonal_norm(const Matrix& s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = i + 1; j < s.cols(); ++j) sum += 2.0 * s(i, j) * s(i, j);
    return std::sqrt(sum);
}

} // namespace

EigenDecomposition jacobi_eigen(Matrix s, double off_tol, int max_sweeps) {
    const std::size_t n = s.rows();
    if (n != s.cols()) throw Error("eigensolve_failed", "matrix not square");

    // force exact symmetry; inputs are symmetric up to rounding
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = s(j, i) = avg;
        }

    Matrix v = Matrix::identity(n);
    bool converged = off_diagonal_norm(s) < off_tol;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (apq == 0.0) continue;
                const double tau = (s(q, q) - s(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;

                const double app = s(p, p);
                const double aqq = s(q, q);
                s(p, p) = app - t * apq;
                s(q, q) = aqq + t * apq;
                s(p, q) = s(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = s(k, p);
                    const double akq = s(k, q);
                    s(k, p) = s(p, k) = c * akp - sn * akq;
                    s(k, q) = s(q, k) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
        converged = off_diagonal_norm(s) < off_tol;
    }
    if (!converged) throw Error("eigensolve_failed", "Jacobi sweeps exhausted before convergence");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s(a, a) > s(b, b); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.values[j] = s(src, src);
        // deterministic sign: entry of largest magnitude made positive
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(v(i, src));
            if (m > best + 1e-300 && m > best) {
                best = m;
                arg = i;
            }
        }
        const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v(i, src);
    }
    return out;
}

} // namespace walklab
