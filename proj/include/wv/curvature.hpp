#pragma once

#include "wv/batch.hpp"
#include "wv/chart.hpp"
#include "wv/linalg.hpp"

namespace wv {

// All numeric curvature at one point, computed from exact symbolic first and
// second derivatives of the metric. Index conventions:
//   gamma[k][i][j]   = Gamma^k_ij
//   riem[l][k][i][j] = R^l_kij = [R(e_i, e_j) e_k]^l
//                    = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk
//                      - Gamma^l_jm Gamma^m_ik
//   riem_low[a][b][c][d] = g_am R^m_bcd
//   ric[a][b]        = R^c_acb
//   weyl[a][b][c][d] : fully lowered, dimension 4 only
struct CurvatureBundle {
    Point point;
    int dim = 0;
    bool cond_warning = false;
    double data_scale = 0.0; // max |g|, |dg|, |d2g| entry seen at the point
    Mat<4> g{}, ginv{};
    double gamma[4][4][4] = {};
    double riem[4][4][4][4] = {};
    double riem_low[4][4][4][4] = {};
    Mat<4> ric{};
    double scalar = 0.0;
    double weyl[4][4][4][4] = {};
};

// Precomputes the symbolic derivative tables of a metric once so point
// evaluations are cheap; safe to share across threads.
class CurvatureOperator {
public:
    explicit CurvatureOperator(MetricTensor g);

    CurvatureBundle at(const Point& p) const;

    // Ric_ab(p) - Lambda g_ab(p), plus the scale used for relative norms
    Mat<4> einstein_residual(const Point& p, double lambda, double* scale = nullptr) const;
    double einstein_residual_rel(const Point& p, double lambda) const;

    const MetricTensor& metric() const { return g_; }

private:
    MetricTensor g_;
    int dim_;
    std::vector<Expr> dg_;  // [k][upper(i,j)]
    std::vector<Expr> d2g_; // [upper(k,l)][upper(i,j)]
    int upper_count_;

    const Expr& dg(int k, int i, int j) const;
    const Expr& d2g(int k, int l, int i, int j) const;
};

CurvatureBundle curvature_at(const MetricTensor& g, const Point& p);

Mat<4> einstein_residual_at(const MetricTensor& g, double lambda, const Point& p);

// Max scale-relative Einstein residual over n seeded points.
MaxReduceResult max_einstein_residual(const CurvatureOperator& op, double lambda,
                                      const Sampler& sampler, long n, bool parallel = true);

// Residuals of the algebraic curvature symmetries at a point (pair
// antisymmetry, pair exchange and the first Bianchi identity), scale-relative.
double curvature_symmetry_residual(const CurvatureBundle& b);

// Max |g^{ac} W_abcd| over all traces, scale-relative.
double weyl_trace_residual(const CurvatureBundle& b);

} // namespace wv
