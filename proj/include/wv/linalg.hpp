#pragma once

#include <array>
#include <cmath>

#include "wv/error.hpp"

namespace wv {

// Small dense helpers for the 2x2 / 4x4 pointwise tensor work.
template <int N>
using Mat = std::array<std::array<double, N>, N>;

template <int N>
Mat<N> zero_mat() {
    Mat<N> m{};
    return m;
}

// Gauss-Jordan with partial pivoting. Throws EvalError on a singular matrix;
// cond_warning is set when the pivot ratio exceeds 1e12.
template <int N>
Mat<N> invert(const Mat<N>& a, bool* cond_warning = nullptr) {
    Mat<N> m = a;
    Mat<N> inv{};
    for (int i = 0; i < N; ++i) inv[i][i] = 1.0;

    double max_pivot = 0.0, min_pivot = 0.0;
    for (int col = 0; col < N; ++col) {
        int pivot = col;
        for (int r = col + 1; r < N; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        double pv = m[pivot][col];
        if (std::fabs(pv) < 1e-300) throw EvalError("singular matrix");
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            std::swap(inv[pivot], inv[col]);
        }
        double apv = std::fabs(pv);
        if (col == 0) {
            max_pivot = min_pivot = apv;
        } else {
            if (apv > max_pivot) max_pivot = apv;
            if (apv < min_pivot) min_pivot = apv;
        }
        double s = 1.0 / pv;
        for (int c = 0; c < N; ++c) {
            m[col][c] *= s;
            inv[col][c] *= s;
        }
        for (int r = 0; r < N; ++r) {
            if (r == col) continue;
            double f = m[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < N; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    if (cond_warning) *cond_warning = (min_pivot > 0.0 && max_pivot / min_pivot > 1e12);
    return inv;
}

template <int N>
double det(const Mat<N>& a) {
    Mat<N> m = a;
    double d = 1.0;
    for (int col = 0; col < N; ++col) {
        int pivot = col;
        for (int r = col + 1; r < N; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        if (std::fabs(m[pivot][col]) < 1e-300) return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (int r = col + 1; r < N; ++r) {
            double f = m[r][col] / m[col][col];
            for (int c = col; c < N; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return d;
}

template <int N>
double max_abs(const Mat<N>& a) {
    double m = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m = std::max(m, std::fabs(a[i][j]));
    return m;
}

// Solve a small symmetric positive (semi)definite system in place; used for
// least-squares normal equations. n <= 8.
inline void solve_normal_equations(int n, double a[][8], double* b) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-300) throw EvalError("degenerate least-squares system");
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a[pivot][c], a[col][c]);
            std::swap(b[pivot], b[col]);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int i = 0; i < n; ++i) b[i] /= a[i][i];
}

} // namespace wv
