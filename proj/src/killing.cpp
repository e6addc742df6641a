#include "wv/killing.hpp"

#include <cmath>

#include "wv/linalg.hpp"

namespace wv {

std::vector<Expr> lie_derivative_metric(const MetricTensor& g, const VectorField& K) {
    const int n = g.dim();
    if (K.dim() != n) throw Error("vector field dimension does not match metric");
    const auto& coords = g.chart().coords;
    std::vector<Expr> out(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            Expr s = rational(0);
            for (int c = 0; c < n; ++c) {
                s = s + K.comp[c] * differentiate(g.at(a, b), coords[c]);
                s = s + g.at(c, b) * differentiate(K.comp[c], coords[a]);
                s = s + g.at(a, c) * differentiate(K.comp[c], coords[b]);
            }
            out[static_cast<std::size_t>(a * n + b)] = s;
            out[static_cast<std::size_t>(b * n + a)] = s;
        }
    }
    return out;
}

MaxReduceResult killing_residual(const MetricTensor& g, const VectorField& K,
                                 const Sampler& sampler, long n) {
    const int dim = g.dim();
    std::vector<Expr> lie = lie_derivative_metric(g, K);
    return sample_max(sampler, n, [&](const Point& p) {
        double worst = 0.0;
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) {
                ScaledValue sv = evaluate_scaled(lie[static_cast<std::size_t>(a * dim + b)], p);
                worst = std::max(worst, sv.relative());
            }
        return worst;
    });
}

bool killing_oneform_check(const MetricTensor& h, const std::array<Expr, 2>& oneform,
                           const Sampler& sampler, long n, double tol, double* residual_out) {
    if (h.dim() != 2) throw Error("killing_oneform_check needs a 2-metric");
    // symbolic 2x2 inverse: h^{-1} = adj(h) / det(h)
    Expr det = h.at(0, 0) * h.at(1, 1) - h.at(0, 1) * h.at(0, 1);
    Expr hinv[2][2] = {{h.at(1, 1) / det, -(h.at(0, 1) / det)},
                       {-(h.at(0, 1) / det), h.at(0, 0) / det}};
    VectorField K;
    K.label = "oneform-dual";
    K.comp = {hinv[0][0] * oneform[0] + hinv[0][1] * oneform[1],
              hinv[1][0] * oneform[0] + hinv[1][1] * oneform[1]};
    MaxReduceResult r = killing_residual(h, K, sampler, n);
    if (residual_out) *residual_out = r.max_value;
    return r.max_value < tol;
}

VectorField lie_bracket(const VectorField& k1, const VectorField& k2, const Chart& chart) {
    const int n = k1.dim();
    if (k2.dim() != n || chart.dim() != n) throw Error("lie_bracket dimension mismatch");
    VectorField out;
    out.label = "[" + k1.label + "," + k2.label + "]";
    out.comp.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        Expr s = rational(0);
        for (int b = 0; b < n; ++b) {
            s = s + k1.comp[b] * differentiate(k2.comp[a], chart.coords[b]);
            s = s - k2.comp[b] * differentiate(k1.comp[a], chart.coords[b]);
        }
        out.comp[static_cast<std::size_t>(a)] = s;
    }
    return out;
}

namespace {

// Least-squares fit of bracket components against the span of the fields,
// sampled over points; returns the coefficients and the scale-relative
// residual of the fit.
BracketFit fit_bracket(const VectorField& bracket, const std::vector<VectorField>& fields,
                       const Sampler& sampler, long n) {
    const int m = static_cast<int>(fields.size());
    const int dim = bracket.dim();
    if (m > 8) throw Error("too many fields for the structure-constant fit");

    double ata[8][8] = {};
    double atb[8] = {};
    std::vector<std::array<double, 8>> rows;
    std::vector<double> rhs;
    rows.reserve(static_cast<std::size_t>(n * dim));

    double scale = 1.0;
    for (long i = 0; i < n; ++i) {
        Point p = sampler.point(static_cast<std::uint64_t>(i));
        for (int a = 0; a < dim; ++a) {
            std::array<double, 8> row{};
            for (int k = 0; k < m; ++k) row[static_cast<std::size_t>(k)] =
                evaluate(fields[static_cast<std::size_t>(k)].comp[static_cast<std::size_t>(a)], p);
            double b = evaluate(bracket.comp[static_cast<std::size_t>(a)], p);
            for (int k = 0; k < m; ++k) {
                scale = std::max(scale, std::fabs(row[static_cast<std::size_t>(k)]));
                for (int l = 0; l < m; ++l)
                    ata[k][l] += row[static_cast<std::size_t>(k)] * row[static_cast<std::size_t>(l)];
                atb[k] += row[static_cast<std::size_t>(k)] * b;
            }
            scale = std::max(scale, std::fabs(b));
            rows.push_back(row);
            rhs.push_back(b);
        }
    }
    // Tikhonov epsilon keeps the normal equations solvable when fields are
    // linearly dependent at the sample; the residual still reports the truth.
    for (int k = 0; k < m; ++k) ata[k][k] += 1e-12;
    solve_normal_equations(m, ata, atb);

    BracketFit fit;
    fit.coefficients.assign(atb, atb + m);
    double worst = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double pred = 0.0;
        for (int k = 0; k < m; ++k) pred += atb[k] * rows[r][static_cast<std::size_t>(k)];
        worst = std::max(worst, std::fabs(rhs[r] - pred));
    }
    fit.fit_residual = worst / scale;
    return fit;
}

} // namespace

AlgebraReport algebra_certificate(const MetricTensor& g, const std::vector<VectorField>& fields,
                                  const Sampler& sampler, long n, double tol) {
    if (fields.empty()) throw Error("algebra_certificate needs at least one field");
    AlgebraReport report;
    report.fields_killing = true;
    for (const auto& K : fields) {
        double r = killing_residual(g, K, sampler, n).max_value;
        report.field_residuals.push_back(r);
        if (r >= tol) report.fields_killing = false;
    }
    report.closed = true;
    const int m = static_cast<int>(fields.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            VectorField br = lie_bracket(fields[static_cast<std::size_t>(i)],
                                         fields[static_cast<std::size_t>(j)], g.chart());
            BracketFit fit = fit_bracket(br, fields, sampler, std::min<long>(n, 64));
            fit.i = i;
            fit.j = j;
            if (fit.fit_residual >= tol) report.closed = false;
            report.brackets.push_back(std::move(fit));
        }
    }
    return report;
}

} // namespace wv
