#pragma once

#include <array>
#include <optional>

#include "wv/chart.hpp"
#include "wv/curvature.hpp"
#include "wv/killing.hpp"

namespace wv {

// Walker data (h, A, H) over the chart (v, x, y, u): the metric
//   g = 2 dv du + h_ij dx^i dx^j + 2 A_i dx^i du + H (du)^2
// with h, A independent of v. When the Einstein ansatz applies, H is kept
// split as H = Lambda v^2 + H1 v + H0 with v-independent H1, H0.
struct WalkerMetric {
    Chart chart;          // 4 coordinates (v, x, y, u); params include Lambda when used
    Expr h11, h12, h22;   // in (x, y, u)
    Expr A1, A2;          // in (x, y, u)
    Expr H;               // full du^2 coefficient
    std::optional<Expr> H0, H1; // present when H = Lambda v^2 + H1 v + H0

    bool has_ansatz() const { return H0.has_value(); }
    bool A_is_zero() const { return A1->is_zero() && A2->is_zero(); }
    bool H1_is_zero() const { return !H1 || (*H1)->is_zero(); }
};

Chart walker_chart(DomainBox box = {}, std::vector<std::string> params = {"Lambda"});

// H supplied directly (pp-waves and other general entries)
WalkerMetric walker_general(Chart chart, Expr h11, Expr h12, Expr h22, Expr A1, Expr A2, Expr H);

// H = Lambda v^2 + H1 v + H0
WalkerMetric walker_einstein(Chart chart, Expr h11, Expr h12, Expr h22, Expr A1, Expr A2,
                             Expr H0, Expr H1 = rational(0));

// 4x4 MetricTensor in the order (v, x, y, u)
MetricTensor assemble(const WalkerMetric& w);

// The 2-metric h as a surface MetricTensor; u becomes a passed-through
// parameter of the family (points must still bind it).
MetricTensor surface_metric(const WalkerMetric& w);
MetricTensor surface_metric(const Chart& walker_chart, Expr h11, Expr h12, Expr h22);

// Sampler over (x, y, u) for surface-family residuals, with parameters bound.
Sampler surface_sampler(const WalkerMetric& w, std::uint64_t seed,
                        std::vector<std::pair<std::string, double>> params);

// ---------------------------------------------------------------------------
// Reduced Einstein system (A = 0, H1 = 0 gauge):
//   Delta_h H0 + 1/2 h^{ij} hddot_ij = 0
//   div^j hdot_ij = 0   (2 components)
//   h^{ij} hdot_ij = 0
//   Ric(h)_ij = Lambda h_ij

struct ReducedSystemResiduals {
    double poisson = 0.0;
    double divergence = 0.0;
    double trace = 0.0;
    double surface_einstein = 0.0;

    double max() const;
};

ReducedSystemResiduals reduced_system_residuals(const WalkerMetric& w, double lambda,
                                                const Sampler& sampler, long n);

// ---------------------------------------------------------------------------
// Constant-curvature reductions; the backgrounds are the round sphere
// h = dx^2 + sin^2 x dy^2 (Lambda > 0) and the half-plane
// h = (dx^2 + dy^2) / (-Lambda x^2) (Lambda < 0).

enum class Signature { Sphere, Hyperbolic };

struct PotentialFunction {
    Expr f; // in (x, y, u)
    Signature signature;
};

// The one-form A generated by f:
//   sphere:     A = -(d_y f / sin x) dx + sin x d_x f dy
//   hyperbolic: A = -d_y f dx + d_x f dy
std::array<Expr, 2> f_to_A(const PotentialFunction& pf);

// Left-minus-right expressions of the two reduction equations, for zero
// testing. Lambda appears as the parameter "Lambda".
Expr f_equation_residual(const PotentialFunction& pf);
Expr h0_equation_residual(const PotentialFunction& pf, const Expr& H0);

// Background constant-curvature surface metrics used by the reductions.
MetricTensor sphere_background(DomainBox box = {});
MetricTensor hyperbolic_background(DomainBox box = {});

// True iff the vector field dual to f_to_A(f) is Killing for the background;
// equivalently f lies in the Killing family of its signature.
bool killing_family_check(const PotentialFunction& pf, std::uint64_t seed = kDefaultSeed,
                          int n = 400, double tol = kKillingTol, double* residual_out = nullptr);

// ---------------------------------------------------------------------------
// One-forms from holomorphic data: for a polynomial phi(z) = sum c_k z^k with
// real coefficients, A = W dz + conj(W) dconj(z), W = i d_z L,
// L = 2 Re(phi d_z ln P0 - 1/2 d_z phi), 2 P0^2 = (1 + sign(Lambda) z zbar)^2.
std::array<Expr, 2> lewandowski_oneform(const std::vector<long long>& phi_coefficients,
                                        double lambda);

// The conformal disc background 2/(1 + sign(Lambda)(x^2+y^2))^2 (dx^2+dy^2)
// that pairs with lewandowski_oneform in the Killing check.
MetricTensor disc_background(double lambda, DomainBox box = {});

} // namespace wv
