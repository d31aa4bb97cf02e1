#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace liplab {

using Vector = std::vector<double>;

/// Dense row-major matrix. Sizes in this project are tiny (d <= ~16,
/// N <= ~1024), so a flat buffer with explicit loops is all we need.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
    Matrix(int r, int c, std::vector<double> values) : rows(r), cols(c), data(std::move(values)) {
        assert(static_cast<std::size_t>(rows) * cols == data.size());
    }

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

    const double* row(int i) const { return data.data() + static_cast<std::size_t>(i) * cols; }
    double* row(int i) { return data.data() + static_cast<std::size_t>(i) * cols; }
};

inline double dot(const Vector& x, const Vector& y) {
    assert(x.size() == y.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

inline bool all_finite(const Vector& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

inline bool all_finite(const Matrix& m) {
    for (double v : m.data)
        if (!std::isfinite(v)) return false;
    return true;
}

/// y = M x
inline Vector matvec(const Matrix& m, const Vector& x) {
    assert(static_cast<int>(x.size()) == m.cols);
    Vector y(static_cast<std::size_t>(m.rows), 0.0);
    for (int i = 0; i < m.rows; ++i) {
        const double* r = m.row(i);
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += r[j] * x[j];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

/// y = r M for a row vector r (length m.rows); result has length m.cols.
inline Vector vecmat(const Vector& r, const Matrix& m) {
    assert(static_cast<int>(r.size()) == m.rows);
    Vector y(static_cast<std::size_t>(m.cols), 0.0);
    for (int i = 0; i < m.rows; ++i) {
        const double ri = r[static_cast<std::size_t>(i)];
        if (ri == 0.0) continue;
        const double* row = m.row(i);
        for (int j = 0; j < m.cols; ++j) y[static_cast<std::size_t>(j)] += ri * row[j];
    }
    return y;
}

/// C = A B
inline Matrix matmul(const Matrix& a, const Matrix& b) {
    assert(a.cols == b.rows);
    Matrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = b.row(k);
            double* crow = c.row(i);
            for (int j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

}  // namespace liplab
