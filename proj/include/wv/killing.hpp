#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wv/batch.hpp"
#include "wv/chart.hpp"

namespace wv {

struct VectorField {
    std::string label;
    std::vector<Expr> comp; // components in chart order

    int dim() const { return static_cast<int>(comp.size()); }
};

// Symbolic Lie derivative (L_K g)_ab = K^c d_c g_ab + g_cb d_a K^c + g_ac d_b K^c,
// returned as a full dim x dim (symmetric) matrix of expressions.
std::vector<Expr> lie_derivative_metric(const MetricTensor& g, const VectorField& K);

// Max over points and components of |(L_K g)_ab| / scale, with the scale
// tracked from subterm magnitudes.
MaxReduceResult killing_residual(const MetricTensor& g, const VectorField& K,
                                 const Sampler& sampler, long n);

inline constexpr double kKillingTol = 1e-8;

// True iff the vector field A^i = h^{ij} A_j is Killing for the 2-metric h at
// every sampled point (u rides along as a parameter of the family).
bool killing_oneform_check(const MetricTensor& h, const std::array<Expr, 2>& oneform,
                           const Sampler& sampler, long n, double tol = kKillingTol,
                           double* residual_out = nullptr);

VectorField lie_bracket(const VectorField& k1, const VectorField& k2, const Chart& chart);

struct BracketFit {
    int i = 0, j = 0;                // [fields[i], fields[j]]
    std::vector<double> coefficients; // fitted structure constants
    double fit_residual = 0.0;        // scale-relative
};

struct AlgebraReport {
    std::vector<double> field_residuals; // Killing residual per field
    std::vector<BracketFit> brackets;
    bool fields_killing = false;
    bool closed = false;

    bool certified() const { return fields_killing && closed; }
};

// Certifies that the given fields are Killing and close under the bracket;
// structure constants are recovered by least squares over sampled points.
AlgebraReport algebra_certificate(const MetricTensor& g, const std::vector<VectorField>& fields,
                                  const Sampler& sampler, long n, double tol = kKillingTol);

} // namespace wv
